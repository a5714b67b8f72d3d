#pragma once

// Generic round loop: each round extracts a frontier of mutually independent
// objects, processes it, and publishes the results before the next frontier
// is computed.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "phaselib/pivot_multimap.hpp"

namespace phaselib {

using Counters = std::map<std::string, std::int64_t>;

struct RoundRecord {
  std::size_t round = 0;  // 1-based
  std::vector<ObjectId> frontier;
  Counters counters;

  bool operator==(const RoundRecord&) const = default;
};

struct PhaseTrace {
  std::string tag;
  std::vector<RoundRecord> rounds;
  Counters totals;

  std::size_t round_count() const noexcept { return rounds.size(); }
  std::size_t processed() const noexcept;

  /// round index (1-based) per object id in [0, n); 0 if never processed.
  std::vector<std::uint32_t> round_of(std::size_t n) const;

  /// Adds `value` to both the current round's and the global counter.
  void bump(const std::string& name, std::int64_t value);

  /// CSV: round,frontier_size,<counter columns in name order>.
  void write_csv(std::ostream& os) const;

  bool operator==(const PhaseTrace&) const = default;
};

template <class State>
struct PhaseProblem {
  /// When set, the loop runs until this many objects are processed and an
  /// empty frontier before then is an error. When unset, the loop ends at the
  /// first empty frontier.
  std::optional<std::size_t> object_count;
  std::function<std::vector<ObjectId>(std::size_t round, State&, PhaseTrace&)> frontier;
  std::function<void(std::size_t round, std::span<const ObjectId>, State&, PhaseTrace&)> process;
  std::string tag;
};

namespace detail {
[[noreturn]] void throw_stalled(const std::string& tag, std::size_t round,
                                std::size_t done, std::size_t total);
}

template <class State>
PhaseTrace run_phases(const PhaseProblem<State>& problem, State& state) {
  PhaseTrace trace;
  trace.tag = problem.tag;
  std::size_t done = 0;
  for (std::size_t round = 1;; ++round) {
    if (problem.object_count && done >= *problem.object_count) break;
    trace.rounds.push_back(RoundRecord{round, {}, {}});
    std::vector<ObjectId> frontier = problem.frontier(round, state, trace);
    if (frontier.empty()) {
      trace.rounds.pop_back();
      if (problem.object_count)
        detail::throw_stalled(problem.tag, round, done, *problem.object_count);
      break;
    }
    problem.process(round, frontier, state, trace);
    done += frontier.size();
    trace.rounds.back().frontier = std::move(frontier);
  }
  return trace;
}

/// Explicit dependence graph for test-scale validation: preds[x] lists the
/// objects that must finish before x.
struct DependenceGraph {
  std::size_t n = 0;
  std::vector<std::vector<ObjectId>> preds;

  explicit DependenceGraph(std::size_t count = 0) : n(count), preds(count) {}
  void add_edge(ObjectId from, ObjectId to) { preds[to].push_back(from); }
  std::size_t edge_count() const;
};

/// Longest-path depth: 1 for sources, else 1 + max over predecessors.
/// Throws Errc::cycle when the graph is not acyclic.
std::vector<std::uint32_t> oracle_rank(const DependenceGraph& dg);

}  // namespace phaselib
