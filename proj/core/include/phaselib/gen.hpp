#pragma once

// Seeded workload generators. Element i of every family depends only on
// (seed, family stream, i), so output is identical for any thread count.

#include <cstdint>
#include <string>
#include <vector>

#include "phaselib/activity.hpp"
#include "phaselib/knapsack.hpp"
#include "phaselib/lis.hpp"
#include "phaselib/mis.hpp"
#include "phaselib/sssp.hpp"

namespace phaselib {

/// Starts uniform in [0, horizon); e = s + min_dur + |N(0, sigma^2)|;
/// integer weights uniform in [1, 2^32). A negative horizon means n.
/// Output is in generation order, not sorted.
std::vector<Activity> gen_activities(std::size_t n, double min_dur, double sigma,
                                     std::uint64_t seed, double horizon = -1);

/// k segments; inside a segment values step down by `gap`, each segment
/// sits above the previous one, and every value gets uniform jitter in
/// [-noise * gap, noise * gap]. noise must lie in [0, 1].
std::vector<std::int64_t> gen_lis_segments(std::size_t n, std::size_t k, double noise,
                                           std::uint64_t seed, std::int64_t gap = 1000);

/// a_i = slope * i + b_i with b_i uniform in [0, width). With `discrete`,
/// b_i is a uniform integer in [0, width) instead of a real.
std::vector<double> gen_lis_line(std::size_t n, double slope, double width, std::uint64_t seed,
                                 bool discrete = false);

/// Times uniform in [0, horizon), positions uniform in [0, span); sorted by t.
std::vector<Mole> gen_moles(std::size_t n, std::int64_t horizon, std::int64_t span,
                            std::uint64_t seed);

/// Weights uniform in [w_min, w_max], values uniform in [0, v_max].
std::vector<Item> gen_items(std::size_t n, std::int64_t w_min, std::int64_t w_max,
                            std::int64_t v_max, std::uint64_t seed);

/// About n * avg_degree distinct directed edges (no self-loops) with
/// integer weights uniform in [w_min, w_max].
WeightedGraph gen_weighted_graph(std::size_t n, double avg_degree, std::uint32_t w_min,
                                 std::uint32_t w_max, std::uint64_t seed);

/// About n * avg_degree / 2 distinct undirected edges.
UndirectedGraph gen_undirected_graph(std::size_t n, double avg_degree, std::uint64_t seed);

enum class FreqDist { uniform, zipf, exponential };

FreqDist parse_freq_dist(const std::string& name);

/// uniform: [1, max_f]; zipf: max(1, floor(max_f / r)) for r = 1..n in a
/// seeded random order; exponential: min(max_f, 1 + floor(X)) with X
/// exponential of mean max_f / 16. Requires 1 <= max_f < 2^32.
std::vector<std::uint64_t> gen_freqs(std::size_t n, FreqDist dist, std::uint64_t max_f,
                                     std::uint64_t seed);

}  // namespace phaselib
