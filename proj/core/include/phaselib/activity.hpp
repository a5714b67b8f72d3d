#pragma once

// Weighted activity selection: dp[i] = w_i + max over activities j with
// e_j <= s_i of dp[j] (0 when there is none). Activities are indexed by
// their position in (end, input index) order.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "phaselib/phase.hpp"

namespace phaselib {

inline constexpr std::uint32_t kNoPivot = 0xFFFFFFFFu;

struct Activity {
  double start = 0;
  double end = 0;
  double weight = 0;

  bool operator==(const Activity&) const = default;
};

struct ActivityResult {
  std::vector<double> dp;
  std::vector<std::uint32_t> rank;
  std::vector<std::uint32_t> pivot;  // type 2 only; kNoPivot for roots
  double best = 0;
  std::size_t rounds = 0;
};

/// Stable sort by end time. `order`, when given, receives the input index of
/// each sorted position. Throws Errc::invalid_input on s >= e, a negative
/// weight or a non-finite field.
std::vector<Activity> sort_by_end(std::span<const Activity> acts,
                                  std::vector<std::uint32_t>* order = nullptr);

/// Prefix maxima over end-sorted activities. Also fills rank.
ActivityResult seq_activity_dp(std::span<const Activity> acts);

/// Range-split frontiers: each round takes every remaining activity that
/// starts before the earliest remaining end.
std::pair<ActivityResult, PhaseTrace> type1_activity(std::span<const Activity> acts);

/// Latest-start pivots: an activity is processed the round after its pivot.
std::pair<ActivityResult, PhaseTrace> type2_activity(std::span<const Activity> acts);

/// Pivot of every activity (kNoPivot when nothing ends by its start).
std::vector<std::uint32_t> activity_pivots(std::span<const Activity> acts);

/// Depth in the pivot forest, computed level by level from the roots.
std::vector<std::uint32_t> unweighted_activity_rank(std::span<const Activity> acts);

/// Explicit dependence graph {j -> i : e_j <= s_i}; quadratic, tests only.
DependenceGraph activity_dependence_graph(std::span<const Activity> acts);

}  // namespace phaselib
