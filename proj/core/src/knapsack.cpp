#include "phaselib/knapsack.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "phaselib/error.hpp"
#include "phaselib/parallel.hpp"

namespace phaselib {

namespace {

void check_instance(std::int64_t capacity, std::span<const Item> items) {
  if (capacity < 0) fail(Errc::invalid_input, "knapsack: negative capacity");
  std::int64_t vmax = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].weight <= 0)
      fail(Errc::invalid_input, "knapsack: item " + std::to_string(i) + " has non-positive weight");
    if (items[i].value < 0)
      fail(Errc::invalid_input, "knapsack: item " + std::to_string(i) + " has negative value");
    vmax = std::max(vmax, items[i].value);
  }
  // No state packs more than capacity / w* items.
  const auto bound = static_cast<__int128>(capacity / min_item_weight(capacity, items)) * vmax;
  if (bound > std::numeric_limits<std::int64_t>::max())
    fail(Errc::overflow, "knapsack: values may exceed 64-bit range");
}

inline std::int64_t relax(const std::vector<std::int64_t>& dp, std::span<const Item> items,
                          std::int64_t j) {
  std::int64_t best = 0;
  for (const Item& it : items)
    if (it.weight <= j) best = std::max(best, dp[static_cast<std::size_t>(j - it.weight)] + it.value);
  return best;
}

}  // namespace

std::int64_t min_item_weight(std::int64_t capacity, std::span<const Item> items) {
  std::int64_t w = capacity + 1;
  for (const Item& it : items) w = std::min(w, it.weight);
  return std::max<std::int64_t>(w, 1);
}

KnapsackResult seq_knapsack(std::int64_t capacity, std::span<const Item> items) {
  check_instance(capacity, items);
  KnapsackResult r;
  r.dp.assign(static_cast<std::size_t>(capacity) + 1, 0);
  for (std::int64_t j = 1; j <= capacity; ++j) r.dp[static_cast<std::size_t>(j)] = relax(r.dp, items, j);
  r.rounds = static_cast<std::size_t>(capacity) + 1;
  return r;
}

std::pair<KnapsackResult, PhaseTrace> phase_knapsack(std::int64_t capacity,
                                                     std::span<const Item> items) {
  check_instance(capacity, items);
  const std::int64_t wstar = min_item_weight(capacity, items);
  KnapsackResult res;
  res.dp.assign(static_cast<std::size_t>(capacity) + 1, 0);

  struct State {
    std::int64_t next = 0;  // first state not yet evaluated
  } st;
  PhaseProblem<State> prob;
  prob.object_count = static_cast<std::size_t>(capacity) + 1;
  prob.tag = "knapsack";
  prob.frontier = [&](std::size_t, State& s, PhaseTrace&) {
    const std::int64_t hi = std::min(s.next + wstar, capacity + 1);
    std::vector<ObjectId> ids(static_cast<std::size_t>(hi - s.next));
    for (std::size_t k = 0; k < ids.size(); ++k) ids[k] = static_cast<ObjectId>(s.next + static_cast<std::int64_t>(k));
    return ids;
  };
  prob.process = [&](std::size_t, std::span<const ObjectId> ids, State& s, PhaseTrace& tr) {
    const std::int64_t lo = s.next;
    // Every item weighs at least w*, so checking w* covers all reads.
    for (ObjectId j : ids)
      if (static_cast<std::int64_t>(j) >= wstar && static_cast<std::int64_t>(j) - wstar >= lo)
        fail(Errc::verification, "knapsack: state " + std::to_string(j) +
                                     " reads a state of its own round");
    parallel_for(0, ids.size(), [&](std::size_t k) {
      res.dp[ids[k]] = relax(res.dp, items, static_cast<std::int64_t>(ids[k]));
    }, 64);
    s.next += static_cast<std::int64_t>(ids.size());
    tr.bump("states", static_cast<std::int64_t>(ids.size()));
  };
  PhaseTrace trace = run_phases(prob, st);
  res.rounds = trace.round_count();
  return {std::move(res), std::move(trace)};
}

}  // namespace phaselib
