#pragma once

// Unbounded knapsack: dp[j] = max(0, max over items with w_i <= j of
// dp[j - w_i] + v_i) for j = 0..W.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "phaselib/phase.hpp"

namespace phaselib {

struct Item {
  std::int64_t weight = 1;
  std::int64_t value = 0;

  bool operator==(const Item&) const = default;
};

struct KnapsackResult {
  std::vector<std::int64_t> dp;  // W + 1 entries
  std::size_t rounds = 0;

  std::int64_t best() const { return dp.empty() ? 0 : dp.back(); }
};

/// Smallest item weight, capped at capacity + 1 (also the value when there
/// are no items).
std::int64_t min_item_weight(std::int64_t capacity, std::span<const Item> items);

/// Ascending j. Throws Errc::invalid_input for weight <= 0, negative value or
/// negative capacity, Errc::overflow when capacity / w* * max value does not
/// fit in 63 bits.
KnapsackResult seq_knapsack(std::int64_t capacity, std::span<const Item> items);

/// Round r evaluates states [(r-1) w*, r w*); every state it reads lies in
/// an earlier round.
std::pair<KnapsackResult, PhaseTrace> phase_knapsack(std::int64_t capacity,
                                                     std::span<const Item> items);

}  // namespace phaselib
