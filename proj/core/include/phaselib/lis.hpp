#pragma once

// Longest increasing subsequence, sequential and phase-parallel.
//
// Both work on a permutation `y_by_x`: element i sits at x = i and has a
// distinct compressed value y. j precedes i when j < i and y[j] < y[i].
// Frontends compress arbitrary ordered values so that equal values never
// precede each other (an earlier index gets the larger y).

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "phaselib/phase.hpp"
#include "phaselib/range2d.hpp"

namespace phaselib {

inline constexpr std::uint32_t kNoPred = 0xFFFFFFFFu;

struct LisOptions {
  std::uint64_t seed = 0;
  WitnessPolicy policy = WitnessPolicy::uniform;
};

struct LisResult {
  std::vector<std::int64_t> dp;         // best chain value ending at i
  std::vector<std::uint32_t> rank;      // chain length ending at i (round index)
  std::vector<std::uint32_t> pred;      // argmax predecessor, kNoPred if none
  std::vector<std::uint32_t> wakeups;   // readiness checks per element (parallel only)
  std::int64_t best = 0;                // max dp
  std::uint32_t length = 0;             // max rank
  std::size_t rounds = 0;
};

/// Distinct y per position; equal values get descending y by index.
template <class T>
std::vector<std::uint32_t> compress_strict(std::span<const T> a) {
  std::vector<std::uint32_t> order(a.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t i, std::uint32_t j) {
    if (a[i] < a[j]) return true;
    if (a[j] < a[i]) return false;
    return i > j;
  });
  std::vector<std::uint32_t> y(a.size());
  for (std::uint32_t r = 0; r < order.size(); ++r) y[order[r]] = r;
  return y;
}

/// Fenwick prefix max in x order. Empty `weights` means all ones.
LisResult seq_dominance_chain(std::span<const std::uint32_t> y_by_x,
                              std::span<const std::uint32_t> weights = {});

/// Random-pivot rounds over a RangeIndex2D; round r finalizes exactly the
/// elements of rank r.
std::pair<LisResult, PhaseTrace> par_dominance_chain(std::span<const std::uint32_t> y_by_x,
                                                     std::span<const std::uint32_t> weights,
                                                     const LisOptions& opt);

template <class T>
LisResult seq_lis(std::span<const T> a) {
  const auto y = compress_strict(a);
  return seq_dominance_chain(y);
}

template <class T>
std::pair<LisResult, PhaseTrace> par_lis(std::span<const T> a, const LisOptions& opt = {}) {
  const auto y = compress_strict(a);
  return par_dominance_chain(y, {}, opt);
}

template <class T>
std::pair<LisResult, PhaseTrace> par_weighted_lis(std::span<const T> a,
                                                  std::span<const std::uint32_t> w,
                                                  const LisOptions& opt = {}) {
  const auto y = compress_strict(a);
  return par_dominance_chain(y, w, opt);
}

template <class T>
LisResult seq_weighted_lis(std::span<const T> a, std::span<const std::uint32_t> w) {
  const auto y = compress_strict(a);
  return seq_dominance_chain(y, w);
}

/// Walks stored predecessors back from the last element attaining `best`.
std::vector<std::uint32_t> reconstruct_lis(const LisResult& r);

struct Mole {
  std::int64_t t = 0;
  std::int64_t p = 0;
};

/// Mole j can precede mole i when t_j <= t_i and |p_i - p_j| <= t_i - t_j,
/// i.e. u = t+p and v = t-p both do not decrease. Returns the y permutation
/// of the equivalent chain problem, with elements ordered by (u, v, index).
/// `order` receives the mole index at each chain position.
std::vector<std::uint32_t> moles_to_chain(std::span<const Mole> moles,
                                          std::vector<std::uint32_t>* order = nullptr);

/// Most moles hit in one walk (0 for none).
std::uint32_t seq_moles(std::span<const Mole> moles);
std::pair<std::uint32_t, PhaseTrace> par_moles(std::span<const Mole> moles,
                                               const LisOptions& opt = {});

/// Pivot chain: x_0 = 1, x_i uniform in [x_{i-1}, n] (inclusive), stop at
/// the first x_k = n. Returns k.
std::uint64_t pivot_chain_length(std::uint64_t n, std::uint64_t seed, std::uint64_t trial);

/// E[k] for pivot_chain_length. With T(m) the expectation when m values
/// remain, T(m) = T(m-1) + 1/(m-1) and T(2) = 2, so E[k] = 1 + H_{n-1}.
double pivot_chain_expectation(std::uint64_t n);

}  // namespace phaselib
