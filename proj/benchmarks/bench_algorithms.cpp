#include <benchmark/benchmark.h>

#include "phaselib/activity.hpp"
#include "phaselib/gen.hpp"
#include "phaselib/huffman.hpp"
#include "phaselib/knapsack.hpp"
#include "phaselib/lis.hpp"
#include "phaselib/mis.hpp"
#include "phaselib/sssp.hpp"

using namespace phaselib;

namespace {

// Arg 0 is n; for activities Arg 1 is the duration b, which sets the rank.
void BM_ActivitySeq(benchmark::State& st) {
  const auto acts = sort_by_end(gen_activities(static_cast<std::size_t>(st.range(0)), static_cast<double>(st.range(1)), 1, 1));
  for (auto _ : st) benchmark::DoNotOptimize(seq_activity_dp(acts).best);
}
void BM_ActivityType1(benchmark::State& st) {
  const auto acts = sort_by_end(gen_activities(static_cast<std::size_t>(st.range(0)), static_cast<double>(st.range(1)), 1, 1));
  for (auto _ : st) benchmark::DoNotOptimize(type1_activity(acts).first.best);
}
void BM_ActivityType2(benchmark::State& st) {
  const auto acts = sort_by_end(gen_activities(static_cast<std::size_t>(st.range(0)), static_cast<double>(st.range(1)), 1, 1));
  for (auto _ : st) benchmark::DoNotOptimize(type2_activity(acts).first.best);
}
BENCHMARK(BM_ActivitySeq)->Args({1 << 18, 10})->Args({1 << 18, 1000})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ActivityType1)->Args({1 << 18, 10})->Args({1 << 18, 1000})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ActivityType2)->Args({1 << 18, 10})->Args({1 << 18, 1000})->Unit(benchmark::kMillisecond);

void BM_KnapsackSeq(benchmark::State& st) {
  const auto items = gen_items(100, st.range(0), 10 * st.range(0), 1000, 2);
  for (auto _ : st) benchmark::DoNotOptimize(seq_knapsack(100000, items).best());
}
void BM_KnapsackPhase(benchmark::State& st) {
  const auto items = gen_items(100, st.range(0), 10 * st.range(0), 1000, 2);
  for (auto _ : st) benchmark::DoNotOptimize(phase_knapsack(100000, items).first.best());
}
BENCHMARK(BM_KnapsackSeq)->Arg(10)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KnapsackPhase)->Arg(10)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_HuffmanSeq(benchmark::State& st) {
  const auto f = gen_freqs(static_cast<std::size_t>(st.range(0)), FreqDist::zipf, 1u << 30, 3);
  for (auto _ : st) benchmark::DoNotOptimize(seq_huffman(f).wpl);
}
void BM_HuffmanPhase(benchmark::State& st) {
  const auto f = gen_freqs(static_cast<std::size_t>(st.range(0)), FreqDist::zipf, 1u << 30, 3);
  for (auto _ : st) benchmark::DoNotOptimize(phase_huffman(f).first.wpl);
}
BENCHMARK(BM_HuffmanSeq)->Arg(1 << 18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HuffmanPhase)->Arg(1 << 18)->Unit(benchmark::kMillisecond);

void BM_Dijkstra(benchmark::State& st) {
  const auto g = gen_weighted_graph(static_cast<std::size_t>(st.range(0)), 5, 1, 1 << 10, 4);
  for (auto _ : st) benchmark::DoNotOptimize(seq_dijkstra(g, 0).dist.back());
}
void BM_WindowedSssp(benchmark::State& st) {
  const auto g = gen_weighted_graph(static_cast<std::size_t>(st.range(0)), 5, 1, 1 << 10, 4);
  for (auto _ : st) benchmark::DoNotOptimize(windowed_sssp(g, 0).first.dist.back());
}
BENCHMARK(BM_Dijkstra)->Arg(1 << 17)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WindowedSssp)->Arg(1 << 17)->Unit(benchmark::kMillisecond);

// Arg 1 is the integer noise width of a flat line, an upper bound on the LIS.
void BM_LisSeq(benchmark::State& st) {
  const auto a = gen_lis_line(static_cast<std::size_t>(st.range(0)), 0, static_cast<double>(st.range(1)), 5, true);
  for (auto _ : st) benchmark::DoNotOptimize(seq_lis<double>(a).length);
}
void BM_LisPar(benchmark::State& st) {
  const auto a = gen_lis_line(static_cast<std::size_t>(st.range(0)), 0, static_cast<double>(st.range(1)), 5, true);
  for (auto _ : st) benchmark::DoNotOptimize(par_lis<double>(a, {5}).first.length);
}
BENCHMARK(BM_LisSeq)->Args({1 << 18, 100})->Args({1 << 18, 1000})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LisPar)->Args({1 << 18, 100})->Args({1 << 18, 1000})->Unit(benchmark::kMillisecond);

void BM_MisSeq(benchmark::State& st) {
  const auto g = gen_undirected_graph(static_cast<std::size_t>(st.range(0)), 10, 6);
  const auto pr = assign_random_priorities(g.n, 6);
  for (auto _ : st) benchmark::DoNotOptimize(seq_greedy_mis(g, pr).status.data());
}
void BM_MisPar(benchmark::State& st) {
  const auto g = gen_undirected_graph(static_cast<std::size_t>(st.range(0)), 10, 6);
  const auto pr = assign_random_priorities(g.n, 6);
  for (auto _ : st) benchmark::DoNotOptimize(par_greedy_mis(g, pr).status.data());
}
BENCHMARK(BM_MisSeq)->Arg(1 << 17)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MisPar)->Arg(1 << 17)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
