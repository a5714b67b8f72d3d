#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "phaselib/error.hpp"
#include "phaselib/gen.hpp"
#include "phaselib/parallel.hpp"

using namespace phaselib;

namespace {

std::uint32_t max_rank(std::vector<Activity> acts) {
  const auto r = seq_activity_dp(sort_by_end(acts));
  return r.rank.empty() ? 0 : *std::max_element(r.rank.begin(), r.rank.end());
}

}  // namespace

TEST(GenActivities, DeterministicAndInRange) {
  const auto a = gen_activities(5000, 3, 2, 11);
  const auto b = with_threads(4, [] { return gen_activities(5000, 3, 2, 11); });
  ASSERT_EQ(a.size(), 5000u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a[i].start, b[i].start);
    ASSERT_EQ(a[i].end, b[i].end);
    ASSERT_EQ(a[i].weight, b[i].weight);
    ASSERT_GE(a[i].start, 0);
    ASSERT_LT(a[i].start, 5000);
    ASSERT_GE(a[i].end - a[i].start, 3);
    ASSERT_GE(a[i].weight, 1);
    ASSERT_LT(a[i].weight, 4294967296.0);
    ASSERT_EQ(a[i].weight, std::floor(a[i].weight));
  }
  const auto c = gen_activities(5000, 3, 2, 12);
  EXPECT_NE(a[0].start, c[0].start);
}

TEST(GenActivities, SameStartIsRankOne) {
  const auto a = gen_activities(1000, 5, 0, 1, 1e-9);
  EXPECT_EQ(max_rank(a), 1u);
}

TEST(GenActivities, ZeroSigmaSpansAreExact) {
  for (const auto& x : gen_activities(200, 2.5, 0, 3)) EXPECT_NEAR(x.end - x.start, 2.5, 1e-9 * std::max(1.0, x.end));
}

TEST(GenActivities, RankFallsAsDurationGrows) {
  std::uint32_t prev = ~0u;
  for (double b : {0.5, 2.0, 8.0, 32.0, 128.0}) {
    const auto r = max_rank(gen_activities(10000, b, b / 4, 7));
    EXPECT_LT(r, prev) << b;
    prev = r;
  }
  EXPECT_LT(max_rank(gen_activities(10000, 8, 0, 7)), max_rank(gen_activities(10000, 1, 0, 7)));
}

TEST(GenSegments, ExtremesAndWindow) {
  const auto dec = gen_lis_segments(300, 1, 0, 5);
  EXPECT_EQ(seq_lis<std::int64_t>(dec).length, 1u);
  const auto inc = gen_lis_segments(300, 300, 0, 5);
  EXPECT_EQ(seq_lis<std::int64_t>(inc).length, 300u);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const std::size_t n = 2000 + 97 * seed;
    const std::size_t k = 1 + (seed * 37) % 400;
    const auto a = gen_lis_segments(n, k, 0.25, seed);
    const auto len = seq_lis<std::int64_t>(a).length;
    EXPECT_GE(len, k) << seed;
    EXPECT_LE(len, 2 * k) << seed;
  }
  EXPECT_EQ(gen_lis_segments(100, 7, 0.5, 3), gen_lis_segments(100, 7, 0.5, 3));
  EXPECT_THROW((void)gen_lis_segments(10, 0, 0, 1), Error);
  EXPECT_THROW((void)gen_lis_segments(10, 11, 0, 1), Error);
  EXPECT_THROW((void)gen_lis_segments(10, 2, 1.5, 1), Error);
}

TEST(GenLine, MonotoneInSlope) {
  const auto flat = gen_lis_line(1000, 1, 0, 2);
  EXPECT_EQ(seq_lis<double>(flat).length, 1000u);
  std::uint32_t prev = 0;
  for (double t : {0.0, 0.01, 0.1, 1.0, 10.0}) {
    const auto len = seq_lis<double>(gen_lis_line(5000, t, 100, 9)).length;
    EXPECT_GE(len, prev) << t;
    prev = len;
  }
  const auto ulam = seq_lis<double>(gen_lis_line(10000, 0, 1, 4)).length;
  EXPECT_GT(ulam, 150u);
  EXPECT_LT(ulam, 250u);
  for (double v : gen_lis_line(500, 0, 30, 1, true)) {
    EXPECT_EQ(v, std::floor(v));
    EXPECT_GE(v, 0);
    EXPECT_LT(v, 30);
  }
}

TEST(GenMoles, SortedAndInRange) {
  const auto m = gen_moles(3000, 500, 40, 6);
  ASSERT_EQ(m.size(), 3000u);
  for (std::size_t i = 0; i < m.size(); ++i) {
    ASSERT_GE(m[i].t, 0);
    ASSERT_LT(m[i].t, 500);
    ASSERT_GE(m[i].p, 0);
    ASSERT_LT(m[i].p, 40);
    if (i) {
      ASSERT_LE(m[i - 1].t, m[i].t);
    }
  }
}

TEST(GenItems, InRange) {
  const auto it = gen_items(2000, 3, 9, 50, 1);
  std::set<std::int64_t> ws;
  for (const auto& x : it) {
    ASSERT_GE(x.weight, 3);
    ASSERT_LE(x.weight, 9);
    ASSERT_GE(x.value, 0);
    ASSERT_LE(x.value, 50);
    ws.insert(x.weight);
  }
  EXPECT_EQ(ws.size(), 7u);
  EXPECT_THROW((void)gen_items(5, 4, 2, 1, 1), Error);
  EXPECT_THROW((void)gen_items(5, 0, 2, 1, 1), Error);
}

TEST(GenGraph, SimpleWithUniformWeights) {
  const auto g = gen_weighted_graph(3000, 6, 5, 20, 2);
  g.validate();
  EXPECT_NEAR(static_cast<double>(g.edge_count()), 18000, 900);
  for (std::size_t u = 0; u < g.n; ++u) {
    std::set<std::uint32_t> seen;
    for (auto e = g.offsets[u]; e < g.offsets[u + 1]; ++e) {
      ASSERT_NE(g.targets[e], u);
      ASSERT_TRUE(seen.insert(g.targets[e]).second);
      ASSERT_GE(g.weights[e], 5);
      ASSERT_LE(g.weights[e], 20);
    }
  }
  const auto eq = gen_weighted_graph(100, 3, 4, 4, 2);
  EXPECT_EQ(eq.min_weight(), 4);
  EXPECT_EQ(eq.max_weight(), 4);
  const auto two = gen_weighted_graph(2, 0.5, 1, 1, 3);
  EXPECT_LE(two.edge_count(), 2u);
  EXPECT_THROW((void)gen_weighted_graph(10, 2, 7, 3, 1), Error);
  EXPECT_THROW((void)gen_weighted_graph(10, 2, 0, 3, 1), Error);
}

TEST(GenGraph, UndirectedIsSymmetric) {
  const auto g = gen_undirected_graph(2000, 10, 8);
  EXPECT_NEAR(static_cast<double>(g.edge_count()), 10000, 600);
  for (std::size_t v = 0; v < g.n; ++v)
    for (auto u : g.neighbors(v)) {
      ASSERT_NE(u, v);
      const auto nb = g.neighbors(u);
      ASSERT_TRUE(std::binary_search(nb.begin(), nb.end(), static_cast<std::uint32_t>(v)));
    }
}

TEST(GenFreqs, Distributions) {
  for (auto d : {FreqDist::uniform, FreqDist::zipf, FreqDist::exponential}) {
    const auto f = gen_freqs(5000, d, 1000, 3);
    ASSERT_EQ(f.size(), 5000u);
    for (auto x : f) {
      ASSERT_GE(x, 1u);
      ASSERT_LE(x, 1000u);
    }
    EXPECT_EQ(f, gen_freqs(5000, d, 1000, 3));
  }
  EXPECT_EQ(gen_freqs(300, FreqDist::zipf, 1, 5), std::vector<std::uint64_t>(300, 1));
  auto z = gen_freqs(100, FreqDist::zipf, 1000, 5);
  std::sort(z.rbegin(), z.rend());
  for (std::size_t r = 0; r < 100; ++r) EXPECT_EQ(z[r], std::max<std::uint64_t>(1, 1000 / (r + 1)));
  EXPECT_EQ(parse_freq_dist("zipf"), FreqDist::zipf);
  EXPECT_THROW((void)parse_freq_dist("pareto"), Error);
  EXPECT_THROW((void)gen_freqs(5, FreqDist::uniform, 0, 1), Error);
  EXPECT_THROW((void)gen_freqs(5, FreqDist::uniform, std::uint64_t{1} << 32, 1), Error);
}
