#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "phaselib/gen.hpp"
#include "phaselib/lis.hpp"
#include "phaselib/parallel.hpp"

using namespace phaselib;

namespace {

std::vector<std::int64_t> random_values(oracle::Rand& r, std::size_t n, std::int64_t hi) {
  std::vector<std::int64_t> a(n);
  for (auto& x : a) x = r.range(0, hi);
  return a;
}

}  // namespace

TEST(Lis, Increasing) {
  std::vector<int> a(20);
  std::iota(a.begin(), a.end(), 0);
  const auto s = seq_lis<int>(a);
  EXPECT_EQ(s.length, 20u);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(s.dp[i], i + 1);
  const auto [p, tr] = par_lis<int>(a);
  EXPECT_EQ(p.rounds, 20u);
  EXPECT_EQ(tr.round_count(), 20u);
  const auto rounds = tr.round_of(20);
  for (std::uint32_t i = 0; i < 20; ++i) {
    EXPECT_EQ(rounds[i], i + 1);
    EXPECT_GE(p.wakeups[i], 1u);
  }
  std::vector<std::uint32_t> all(20);
  std::iota(all.begin(), all.end(), 0u);
  EXPECT_EQ(reconstruct_lis(s), all);
}

TEST(Lis, DecreasingIsOneRoundWithSingleWakeups) {
  std::vector<int> a(50);
  for (int i = 0; i < 50; ++i) a[i] = 100 - i;
  const auto s = seq_lis<int>(a);
  EXPECT_EQ(s.length, 1u);
  for (auto d : s.dp) EXPECT_EQ(d, 1);
  const auto [p, tr] = par_lis<int>(a);
  EXPECT_EQ(tr.round_count(), 1u);
  EXPECT_EQ(p.wakeups, std::vector<std::uint32_t>(50, 1));
}

TEST(Lis, SmallExample) {
  const std::vector<int> a{3, 1, 2, 5, 4};
  const auto s = seq_lis<int>(a);
  EXPECT_EQ(s.dp, (std::vector<std::int64_t>{1, 1, 2, 3, 3}));
  EXPECT_EQ(s.length, 3u);
  EXPECT_EQ(oracle::brute_lis<int>(a), 3u);
  const auto [p, tr] = par_lis<int>(a);
  EXPECT_EQ(p.dp, s.dp);
  EXPECT_EQ(tr.round_count(), 3u);
  const auto idx = reconstruct_lis(p);
  ASSERT_EQ(idx.size(), 3u);
  EXPECT_EQ(a[idx[0]], 1);
  EXPECT_EQ(a[idx[1]], 2);
  EXPECT_TRUE(a[idx[2]] == 5 || a[idx[2]] == 4);
}

TEST(Lis, EqualValuesDoNotChain) {
  const std::vector<int> a{2, 2, 2, 3, 3};
  EXPECT_EQ(seq_lis<int>(a).length, 2u);
  EXPECT_EQ(par_lis<int>(a).first.length, 2u);
  const auto y = compress_strict<int>(a);
  EXPECT_GT(y[0], y[1]);
  EXPECT_LT(y[2], y[3]);
}

TEST(Lis, SeqMatchesSubsetEnumeration) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    oracle::Rand r(seed);
    const auto a = random_values(r, static_cast<std::size_t>(r.range(0, 15)), 10);
    ASSERT_EQ(seq_lis<std::int64_t>(a).length, oracle::brute_lis<std::int64_t>(a)) << seed;
  }
}

TEST(Lis, RandomParallelMatchesQuadratic) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    oracle::Rand r(seed);
    const auto n = static_cast<std::size_t>(r.range(1, 1500));
    const auto a = random_values(r, n, static_cast<std::int64_t>(r.range(1, 3 * static_cast<std::int64_t>(n))));
    const auto [qdp, qlen] = oracle::quadratic_lis<std::int64_t>(a);
    const auto s = seq_lis<std::int64_t>(a);
    ASSERT_EQ(s.dp, qdp);
    const auto policy = seed % 2 ? WitnessPolicy::uniform : WitnessPolicy::rightmost;
    const auto [p, tr] = par_lis<std::int64_t>(a, {seed, policy});
    ASSERT_EQ(p.dp, s.dp) << "seed " << seed;
    ASSERT_EQ(p.rank, qlen);
    ASSERT_EQ(tr.round_count(), s.length);
    ASSERT_EQ(tr.round_of(n), qlen);
  }
}

TEST(Lis, WeightedMatchesQuadratic) {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    oracle::Rand r(seed);
    const auto n = static_cast<std::size_t>(r.range(1, 800));
    const auto a = random_values(r, n, 400);
    std::vector<std::uint32_t> w(n);
    for (auto& x : w) x = static_cast<std::uint32_t>(r.range(0, 1000));
    const auto [qdp, qlen] = oracle::quadratic_lis<std::int64_t>(a, w);
    const auto s = seq_weighted_lis<std::int64_t>(a, w);
    ASSERT_EQ(s.dp, qdp);
    const auto [p, tr] = par_weighted_lis<std::int64_t>(a, w, {seed});
    ASSERT_EQ(p.dp, qdp);
    ASSERT_EQ(p.rank, qlen);
    ASSERT_EQ(tr.round_count(), *std::max_element(qlen.begin(), qlen.end()));
  }
}

TEST(Lis, ReconstructionIsAValidChain) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    oracle::Rand r(seed);
    const auto a = random_values(r, static_cast<std::size_t>(r.range(1, 2000)), 500);
    const auto [p, tr] = par_lis<std::int64_t>(a, {seed});
    const auto idx = reconstruct_lis(p);
    ASSERT_EQ(idx.size(), p.length);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      ASSERT_EQ(p.dp[idx[k]], static_cast<std::int64_t>(k + 1));
      if (k) {
        ASSERT_LT(idx[k - 1], idx[k]);
        ASSERT_LT(a[idx[k - 1]], a[idx[k]]);
      }
    }
  }
}

TEST(Lis, WakeupMeanWithinLogEnvelope) {
  for (std::size_t n : {200u, 1000u, 5000u}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto a = gen_lis_line(n, 0, 1, seed);
      const auto [p, tr] = par_lis<double>(a, {seed});
      const double mean =
          static_cast<double>(std::accumulate(p.wakeups.begin(), p.wakeups.end(), std::uint64_t{0})) /
          static_cast<double>(n);
      EXPECT_LE(mean, 2 * std::log(static_cast<double>(n)) + 4) << n << " " << seed;
      EXPECT_EQ(tr.totals.at("attempts"),
                static_cast<std::int64_t>(std::accumulate(p.wakeups.begin(), p.wakeups.end(), std::uint64_t{0})));
    }
  }
}

TEST(Lis, TraceIdenticalAcrossThreadCounts) {
  const auto a = gen_lis_line(30000, 0.01, 100, 3, true);
  const auto [r1, t1] = with_threads(1, [&] { return par_lis<double>(a, {42}); });
  const auto [r2, t2] = with_threads(2, [&] { return par_lis<double>(a, {42}); });
  const auto [r8, t8] = with_threads(8, [&] { return par_lis<double>(a, {42}); });
  EXPECT_EQ(t1, t2);
  EXPECT_EQ(t1, t8);
  EXPECT_EQ(r1.wakeups, r8.wakeups);
  EXPECT_EQ(r1.pred, r8.pred);
  const auto [other, t_other] = par_lis<double>(a, {43});
  EXPECT_EQ(other.dp, r1.dp);
  EXPECT_NE(t_other.totals.at("pivot_hash"), t1.totals.at("pivot_hash"));
}

TEST(Moles, Examples) {
  const std::vector<Mole> one{{5, 3}};
  EXPECT_EQ(seq_moles(one), 1u);
  EXPECT_EQ(par_moles(one).first, 1u);
  const std::vector<Mole> three{{0, 0}, {1, 0}, {2, 5}};
  EXPECT_EQ(oracle::brute_moles(three), 2u);
  EXPECT_EQ(seq_moles(three), 2u);
  EXPECT_EQ(par_moles(three).first, 2u);
  EXPECT_EQ(seq_moles({}), 0u);
}

TEST(Moles, SameCellTwiceCounts) {
  const std::vector<Mole> m{{3, 4}, {3, 4}, {4, 5}};
  EXPECT_EQ(oracle::brute_moles(m), 3u);
  EXPECT_EQ(seq_moles(m), 3u);
  EXPECT_EQ(par_moles(m).first, 3u);
}

TEST(Moles, SeqMatchesBruteForce) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    oracle::Rand r(seed);
    const auto m = oracle::random_moles(r, static_cast<std::size_t>(r.range(0, 12)), 12, 8);
    ASSERT_EQ(seq_moles(m), oracle::brute_moles(m)) << seed;
  }
}

TEST(Moles, ParallelMatchesQuadratic) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    oracle::Rand r(seed);
    const auto n = static_cast<std::size_t>(r.range(1, 200));
    const auto m = oracle::random_moles(r, n, static_cast<std::int64_t>(n), r.range(1, 60));
    const auto want = oracle::quadratic_moles(m);
    ASSERT_EQ(seq_moles(m), want) << seed;
    ASSERT_EQ(par_moles(m, {seed}).first, want) << seed;
  }
}

TEST(Moles, ChainTransformPreservesCompatibility) {
  oracle::Rand r(8);
  const auto m = oracle::random_moles(r, 60, 40, 20);
  std::vector<std::uint32_t> order;
  const auto y = moles_to_chain(m, &order);
  ASSERT_EQ(y.size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      ASSERT_EQ(y[i] < y[j], oracle::mole_reachable(m[order[i]], m[order[j]])) << i << " " << j;
}

TEST(PivotChain, SimulationMatchesHarmonicPrediction) {
  EXPECT_DOUBLE_EQ(pivot_chain_expectation(2), 2.0);
  EXPECT_DOUBLE_EQ(pivot_chain_expectation(3), 2.5);
  for (std::uint64_t n : {2u, 10u, 100u, 10000u}) {
    double sum = 0;
    const int trials = 20000;
    for (int t = 0; t < trials; ++t) sum += static_cast<double>(pivot_chain_length(n, 7, static_cast<std::uint64_t>(t)));
    const double mean = sum / trials;
    EXPECT_NEAR(mean, pivot_chain_expectation(n), 0.05 * pivot_chain_expectation(n)) << n;
    EXPECT_LE(mean, 2 * std::log(static_cast<double>(n)) + 2);
  }
}
