#include <gtest/gtest.h>

#include "oracles.hpp"
#include "phaselib/error.hpp"
#include "phaselib/gen.hpp"
#include "phaselib/parallel.hpp"
#include "phaselib/sssp.hpp"

using namespace phaselib;

TEST(Sssp, SingleVertex) {
  const auto g = WeightedGraph::from_edges(1, {});
  const auto [r, tr] = windowed_sssp(g, 0);
  EXPECT_EQ(r.dist, std::vector<double>{0});
  EXPECT_EQ(tr.round_count(), 1u);
  EXPECT_EQ(seq_dijkstra(g, 0).dist, r.dist);
}

TEST(Sssp, PathTakesOneRoundPerVertex) {
  const std::vector<Edge> e{{0, 1, 2}, {1, 2, 3}};
  const auto g = WeightedGraph::from_edges(3, e);
  const auto [r, tr] = windowed_sssp(g, 0);
  EXPECT_EQ(r.dist, (std::vector<double>{0, 2, 5}));
  EXPECT_EQ(tr.round_count(), 3u);
  EXPECT_EQ(r.relaxations, 2u);
}

TEST(Sssp, StarTakesTwoRounds) {
  std::vector<Edge> e;
  for (std::uint32_t i = 1; i < 100; ++i) e.push_back({0, i, 1.0 + (i % 3) * 0.25});
  const auto g = WeightedGraph::from_edges(100, e);
  const auto [r, tr] = windowed_sssp(g, 0);
  EXPECT_EQ(tr.round_count(), 2u);
  EXPECT_EQ(tr.rounds[1].frontier.size(), 99u);
}

TEST(Sssp, UnreachableStaysInfinite) {
  const std::vector<Edge> e{{1, 0, 1}, {1, 2, 1}};
  const auto g = WeightedGraph::from_edges(3, e);
  const auto [r, tr] = windowed_sssp(g, 0);
  EXPECT_EQ(r.dist[0], 0);
  EXPECT_EQ(r.dist[1], kUnreachable);
  EXPECT_EQ(r.dist[2], kUnreachable);
  EXPECT_EQ(r.relaxations, 0u);
}

TEST(Sssp, RandomGraphsMatchBellmanFord) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    oracle::Rand rd(seed);
    const auto n = static_cast<std::size_t>(rd.range(1, 300));
    const auto m = static_cast<std::size_t>(rd.range(0, static_cast<std::int64_t>(4 * n)));
    const auto wmin = rd.range(1, 10);
    const auto g = oracle::random_weighted_graph(rd, n, m, wmin, wmin + rd.range(0, 50));
    const auto src = static_cast<std::uint32_t>(rd.range(0, static_cast<std::int64_t>(n) - 1));
    const auto want = oracle::bellman_ford(g, src);
    const auto s = seq_dijkstra(g, src);
    const auto [p, tr] = windowed_sssp(g, src);
    ASSERT_EQ(s.dist, want) << "seed " << seed;
    ASSERT_EQ(p.dist, want) << "seed " << seed;
    ASSERT_EQ(count_improvable_edges(g, p.dist), 0u);
    // Each reachable vertex is settled once and relaxes its out-edges once.
    ASSERT_EQ(p.relaxations, reachable_out_degree_sum(g, p.dist));
    ASSERT_EQ(tr.processed(), static_cast<std::size_t>(std::count_if(
                                  want.begin(), want.end(), [](double d) { return d != kUnreachable; })));
  }
}

TEST(Sssp, EqualWeightsRoundIsBfsLevel) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    oracle::Rand rd(seed);
    const auto n = static_cast<std::size_t>(rd.range(2, 400));
    const auto g = oracle::random_weighted_graph(rd, n, 3 * n, 7, 7);
    const auto [p, tr] = windowed_sssp(g, 0);
    const auto lv = oracle::bfs_levels(g, 0);
    const auto rounds = tr.round_of(n);
    std::int64_t deepest = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (lv[v] < 0) continue;
      ASSERT_EQ(rounds[v], static_cast<std::uint32_t>(lv[v] + 1));
      ASSERT_EQ(p.dist[v], 7.0 * static_cast<double>(lv[v]));
      deepest = std::max(deepest, lv[v]);
    }
    ASSERT_EQ(tr.round_count(), static_cast<std::size_t>(deepest + 1));
  }
}

TEST(Sssp, ThreadCountDoesNotChangeResult) {
  const auto g = gen_weighted_graph(20000, 5, 1, 100, 11);
  const auto [a, ta] = with_threads(1, [&] { return windowed_sssp(g, 0); });
  const auto [b, tb] = with_threads(4, [&] { return windowed_sssp(g, 0); });
  EXPECT_EQ(a.dist, b.dist);
  EXPECT_EQ(ta, tb);
  EXPECT_EQ(a.dist, seq_dijkstra(g, 0).dist);
}

TEST(Sssp, Validation) {
  const std::vector<Edge> zero{{0, 1, 0}};
  try {
    (void)WeightedGraph::from_edges(2, zero);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_input);
  }
  const std::vector<Edge> neg{{0, 1, -2}};
  EXPECT_THROW((void)WeightedGraph::from_edges(2, neg), Error);
  const std::vector<Edge> out_of_range{{0, 5, 1}};
  EXPECT_THROW((void)WeightedGraph::from_edges(2, out_of_range), Error);
  const auto g = WeightedGraph::from_edges(2, {});
  EXPECT_THROW((void)windowed_sssp(g, 2), Error);
  WeightedGraph bad = g;
  bad.offsets = {0, 1, 1};
  EXPECT_THROW(bad.validate(), Error);
}
