#pragma once

// Single-source shortest paths on a directed graph with positive weights.

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "phaselib/phase.hpp"

namespace phaselib {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

struct Edge {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  double weight = 1;
};

/// Compressed adjacency: out-edges of u are [offsets[u], offsets[u+1]).
struct WeightedGraph {
  std::size_t n = 0;
  std::vector<std::uint64_t> offsets{0};
  std::vector<std::uint32_t> targets;
  std::vector<double> weights;

  std::size_t edge_count() const noexcept { return targets.size(); }
  std::size_t out_degree(std::size_t u) const noexcept { return offsets[u + 1] - offsets[u]; }
  double min_weight() const;
  double max_weight() const;

  /// Groups edges by source, keeping input order within a source. Throws
  /// Errc::invalid_input for an endpoint >= n or a weight that is not
  /// positive and finite.
  static WeightedGraph from_edges(std::size_t n, std::span<const Edge> edges);
  /// Checks offsets, targets and weights of a graph assembled by hand.
  void validate() const;
};

struct SsspResult {
  std::vector<double> dist;  // kUnreachable when not reached
  std::size_t rounds = 0;
  std::uint64_t relaxations = 0;
};

SsspResult seq_dijkstra(const WeightedGraph& g, std::uint32_t src);

/// Each round settles every unsettled vertex whose tentative distance is
/// below d_min + w* and relaxes its out-edges once.
std::pair<SsspResult, PhaseTrace> windowed_sssp(const WeightedGraph& g, std::uint32_t src);

/// Edges (u, v) with dist[u] + w < dist[v]; zero for exact distances.
std::uint64_t count_improvable_edges(const WeightedGraph& g, std::span<const double> dist);

/// Sum of out-degrees over vertices with finite distance.
std::uint64_t reachable_out_degree_sum(const WeightedGraph& g, std::span<const double> dist);

}  // namespace phaselib
