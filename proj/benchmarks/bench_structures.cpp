#include <benchmark/benchmark.h>

#include <numeric>

#include "phaselib/aug_map.hpp"
#include "phaselib/random.hpp"
#include "phaselib/range2d.hpp"

using namespace phaselib;

namespace {

using SumMap = AugMap<std::uint64_t, std::uint64_t, SumOfValues<std::uint64_t, std::uint64_t>>;

std::vector<SumMap::entry_type> random_entries(std::size_t n, std::uint64_t seed) {
  const CounterRng rng(seed);
  std::vector<SumMap::entry_type> e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = {rng.bits(i), i};
  return e;
}

void BM_AugMapMultiInsert(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto base = random_entries(n, 1);
  const auto batch = random_entries(n / 10, 2);
  for (auto _ : st) {
    st.PauseTiming();
    auto sorted = base;
    std::sort(sorted.begin(), sorted.end());
    auto m = SumMap::build(sorted);
    st.ResumeTiming();
    m.multi_insert(batch);
    benchmark::DoNotOptimize(m.aug_all());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(batch.size()));
}
BENCHMARK(BM_AugMapMultiInsert)->Arg(1 << 14)->Arg(1 << 18);

void BM_AugMapRangeSum(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  auto e = random_entries(n, 3);
  std::sort(e.begin(), e.end());
  const auto m = SumMap::build(e);
  const CounterRng rng(4);
  std::uint64_t i = 0;
  for (auto _ : st) {
    auto a = rng.bits(i++), b = rng.bits(i++);
    if (a > b) std::swap(a, b);
    benchmark::DoNotOptimize(m.range_sum(a, b));
  }
}
BENCHMARK(BM_AugMapRangeSum)->Arg(1 << 14)->Arg(1 << 20);

std::vector<Point2D> permutation_points(std::size_t n, std::uint64_t seed) {
  std::vector<std::uint32_t> y(n);
  std::iota(y.begin(), y.end(), 0u);
  const CounterRng rng(seed);
  for (std::size_t i = n; i > 1; --i) std::swap(y[i - 1], y[rng.uniform_int(i, i)]);
  std::vector<Point2D> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = {static_cast<std::uint32_t>(i), y[i]};
  return p;
}

void BM_RangeIndexBuild(benchmark::State& st) {
  const auto pts = permutation_points(static_cast<std::size_t>(st.range(0)), 5);
  for (auto _ : st) {
    RangeIndex2D idx(pts, 1);
    benchmark::DoNotOptimize(idx.epoch());
  }
}
BENCHMARK(BM_RangeIndexBuild)->Arg(1 << 16)->Arg(1 << 20);

void BM_RangeIndexQuery(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto pts = permutation_points(n, 6);
  RangeIndex2D idx(pts, 1);
  // Finish half the points so queries see both finished and unfinished mass.
  std::vector<std::pair<std::uint32_t, std::int64_t>> half;
  for (std::uint32_t x = 0; x < n; x += 2) half.push_back({x, 1});
  idx.finalize_batch(half);
  const CounterRng rng(7);
  std::uint64_t i = 0;
  for (auto _ : st) {
    const auto qx = static_cast<std::uint32_t>(rng.uniform_int(i++, n + 1));
    const auto qy = static_cast<std::uint32_t>(rng.uniform_int(i++, n + 1));
    benchmark::DoNotOptimize(idx.dominance_query(qx, qy));
  }
}
BENCHMARK(BM_RangeIndexQuery)->Arg(1 << 16)->Arg(1 << 20);

}  // namespace
