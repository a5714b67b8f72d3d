#pragma once

// Greedy maximal independent set for a fixed priority order (higher
// priority decides first), sequentially and with per-vertex TAS trees.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "phaselib/phase.hpp"

namespace phaselib {

/// Symmetric compressed adjacency without self-loops or parallel edges.
struct UndirectedGraph {
  std::size_t n = 0;
  std::vector<std::uint64_t> offsets{0};
  std::vector<std::uint32_t> adj;  // sorted per vertex

  std::size_t degree(std::size_t v) const noexcept { return offsets[v + 1] - offsets[v]; }
  std::span<const std::uint32_t> neighbors(std::size_t v) const noexcept {
    return {adj.data() + offsets[v], degree(v)};
  }
  std::size_t edge_count() const noexcept { return adj.size() / 2; }

  /// Each pair listed once or both ways; duplicates merge. Throws
  /// Errc::invalid_input for self-loops or endpoints >= n.
  static UndirectedGraph from_edges(std::size_t n,
                                    std::span<const std::pair<std::uint32_t, std::uint32_t>> edges);
};

enum class MisStatus : std::uint8_t { undecided = 0, selected = 1, removed = 2 };

struct MisCounters {
  std::uint64_t tas_attempts = 0;    // leaf marks plus internal test-and-sets
  std::uint64_t internal_nodes = 0;  // over all trees
  std::uint64_t leaves = 0;          // over all trees = blocking pairs
  std::uint32_t max_internal_attempts = 0;
  std::uint32_t max_leaf_marks = 0;
  std::uint32_t max_wakes = 0;
};

struct MisResult {
  std::vector<MisStatus> status;
  std::vector<std::uint8_t> wake_count;  // parallel only
  MisCounters counters;

  std::vector<std::uint32_t> selected() const;
};

/// Random permutation of 1..n from a counter-based Fisher-Yates shuffle.
std::vector<std::uint32_t> assign_random_priorities(std::size_t n, std::uint64_t seed);

/// Throws Errc::invalid_input unless priorities has n entries in [1, n],
/// Errc::duplicate_key on a repeated priority.
void check_priorities(std::size_t n, std::span<const std::uint32_t> priority);

MisResult seq_greedy_mis(const UndirectedGraph& g, std::span<const std::uint32_t> priority);

/// Asynchronous: a vertex joins as soon as the root of its TAS tree fails,
/// i.e. its last blocking neighbour is removed. No rounds.
MisResult par_greedy_mis(const UndirectedGraph& g, std::span<const std::uint32_t> priority);

/// Longest path along strictly decreasing priority; also the dependence
/// depth of each vertex (1 for vertices without blocking neighbours).
std::vector<std::uint32_t> mis_rank(const UndirectedGraph& g, std::span<const std::uint32_t> priority);

/// Trace whose round r holds the vertices of mis_rank r.
PhaseTrace mis_trace(const UndirectedGraph& g, std::span<const std::uint32_t> priority);

bool is_independent(const UndirectedGraph& g, std::span<const MisStatus> status);
bool is_maximal(const UndirectedGraph& g, std::span<const MisStatus> status);

/// One TAS tree on its own, for tests and tracing: `leaves` blocking
/// neighbours stored at heap positions leaves..2*leaves-1.
class TasTree {
 public:
  explicit TasTree(std::uint32_t leaves);

  /// Marks a leaf and climbs. Returns true when this call completes the
  /// tree (the owner must be woken). `attempts` receives each test-and-set
  /// outcome from the bottom up (true = success).
  bool mark(std::uint32_t leaf, std::vector<bool>* attempts = nullptr);

  std::uint32_t leaves() const noexcept { return leaves_; }
  std::uint32_t internal_nodes() const noexcept { return leaves_ ? leaves_ - 1 : 0; }
  /// Attempts applied to heap node i (1-based).
  std::uint32_t attempts_at(std::uint32_t node) const { return hits_.at(node); }

 private:
  std::uint32_t leaves_;
  std::vector<std::uint32_t> hits_;
};

}  // namespace phaselib
