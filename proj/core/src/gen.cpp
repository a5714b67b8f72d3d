#include "phaselib/gen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "phaselib/error.hpp"
#include "phaselib/parallel.hpp"
#include "phaselib/random.hpp"

namespace phaselib {

namespace {

// One stream per family so that families never share draws.
enum Stream : std::uint64_t {
  kActivities = 1,
  kSegments,
  kLine,
  kMoles,
  kItems,
  kWeighted,
  kWeights,
  kUndirected,
  kFreqs,
};

std::size_t target_edges(std::size_t n, double avg_degree) {
  if (!(avg_degree >= 0) || !std::isfinite(avg_degree))
    fail(Errc::invalid_input, "gen: average degree must be a non-negative number");
  return n < 2 ? 0 : static_cast<std::size_t>(std::llround(static_cast<double>(n) * avg_degree));
}

// Random (u, v) with u != v, for draw e.
std::pair<std::uint32_t, std::uint32_t> random_pair(const CounterRng& rng, std::size_t n, std::uint64_t e) {
  const auto u = static_cast<std::uint32_t>(rng.uniform_int(2 * e, n));
  auto v = static_cast<std::uint32_t>(rng.uniform_int(2 * e + 1, n - 1));
  if (v >= u) ++v;
  return {u, v};
}

}  // namespace

std::vector<Activity> gen_activities(std::size_t n, double min_dur, double sigma,
                                     std::uint64_t seed, double horizon) {
  if (!(min_dur > 0)) fail(Errc::invalid_input, "gen activities: minimum duration must be positive");
  if (!(sigma >= 0)) fail(Errc::invalid_input, "gen activities: sigma must be non-negative");
  if (horizon < 0) horizon = static_cast<double>(n);
  const CounterRng rng(seed, kActivities);
  std::vector<Activity> acts(n);
  parallel_for(0, n, [&](std::size_t i) {
    const double s = horizon * rng.uniform(3 * i);
    const double e = s + min_dur + std::abs(sigma * rng.normal(3 * i + 1));
    const double w = static_cast<double>(1 + rng.uniform_int(3 * i + 2, (std::uint64_t{1} << 32) - 1));
    acts[i] = {s, e, w};
  });
  return acts;
}

std::vector<std::int64_t> gen_lis_segments(std::size_t n, std::size_t k, double noise,
                                           std::uint64_t seed, std::int64_t gap) {
  if (n == 0) return {};
  if (k < 1 || k > n) fail(Errc::invalid_input, "gen segments: need 1 <= k <= n");
  if (!(noise >= 0 && noise <= 1)) fail(Errc::invalid_input, "gen segments: noise must lie in [0, 1]");
  if (gap < 1) fail(Errc::invalid_input, "gen segments: gap must be positive");
  const CounterRng rng(seed, kSegments);
  const auto jitter = static_cast<std::int64_t>(std::floor(noise * static_cast<double>(gap)));
  std::vector<std::int64_t> a(n);
  // Segment j holds positions [j*n/k, (j+1)*n/k).
  parallel_for(0, k, [&](std::size_t j) {
    const std::size_t lo = j * n / k, hi = (j + 1) * n / k;
    const auto floor_j = static_cast<std::int64_t>(lo) * gap;
    for (std::size_t i = lo; i < hi; ++i) {
      const auto down = static_cast<std::int64_t>(hi - 1 - i) * gap;
      const auto b = static_cast<std::int64_t>(rng.uniform_int(i, static_cast<std::uint64_t>(2 * jitter + 1))) - jitter;
      a[i] = floor_j + down + b;
    }
  }, 1);
  return a;
}

std::vector<double> gen_lis_line(std::size_t n, double slope, double width, std::uint64_t seed,
                                 bool discrete) {
  if (!(slope >= 0)) fail(Errc::invalid_input, "gen line: slope must be non-negative");
  if (!(width >= 0)) fail(Errc::invalid_input, "gen line: noise width must be non-negative");
  const CounterRng rng(seed, kLine);
  std::vector<double> a(n);
  const auto cells = static_cast<std::uint64_t>(std::max(1.0, std::floor(width)));
  parallel_for(0, n, [&](std::size_t i) {
    const double b = discrete ? static_cast<double>(rng.uniform_int(i, cells)) : width * rng.uniform(i);
    a[i] = slope * static_cast<double>(i) + b;
  });
  return a;
}

std::vector<Mole> gen_moles(std::size_t n, std::int64_t horizon, std::int64_t span, std::uint64_t seed) {
  if (horizon < 1 || span < 1) fail(Errc::invalid_input, "gen moles: horizon and span must be positive");
  const CounterRng rng(seed, kMoles);
  std::vector<Mole> m(n);
  parallel_for(0, n, [&](std::size_t i) {
    m[i] = {static_cast<std::int64_t>(rng.uniform_int(2 * i, static_cast<std::uint64_t>(horizon))),
            static_cast<std::int64_t>(rng.uniform_int(2 * i + 1, static_cast<std::uint64_t>(span)))};
  });
  std::stable_sort(m.begin(), m.end(), [](const Mole& a, const Mole& b) { return a.t < b.t; });
  return m;
}

std::vector<Item> gen_items(std::size_t n, std::int64_t w_min, std::int64_t w_max,
                            std::int64_t v_max, std::uint64_t seed) {
  if (w_min < 1 || w_max < w_min) fail(Errc::invalid_input, "gen items: need 1 <= w_min <= w_max");
  if (v_max < 0) fail(Errc::invalid_input, "gen items: v_max must be non-negative");
  const CounterRng rng(seed, kItems);
  std::vector<Item> items(n);
  for (std::size_t i = 0; i < n; ++i)
    items[i] = {w_min + static_cast<std::int64_t>(rng.uniform_int(2 * i, static_cast<std::uint64_t>(w_max - w_min + 1))),
                static_cast<std::int64_t>(rng.uniform_int(2 * i + 1, static_cast<std::uint64_t>(v_max) + 1))};
  return items;
}

WeightedGraph gen_weighted_graph(std::size_t n, double avg_degree, std::uint32_t w_min,
                                 std::uint32_t w_max, std::uint64_t seed) {
  if (w_min < 1 || w_max < w_min) fail(Errc::invalid_input, "gen graph: need 1 <= w_min <= w_max");
  const std::size_t m = target_edges(n, avg_degree);
  const CounterRng rng(seed, kWeighted);
  const CounterRng wrng(seed, kWeights);
  std::vector<std::pair<std::uint64_t, std::uint32_t>> keyed(m);  // (u << 32 | v, draw)
  parallel_for(0, m, [&](std::size_t e) {
    const auto [u, v] = random_pair(rng, n, e);
    keyed[e] = {(std::uint64_t{u} << 32) | v, static_cast<std::uint32_t>(e)};
  });
  std::sort(keyed.begin(), keyed.end());
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t k = 0; k < keyed.size(); ++k) {
    if (k > 0 && keyed[k].first == keyed[k - 1].first) continue;
    const double w = static_cast<double>(w_min + wrng.uniform_int(keyed[k].second, std::uint64_t{w_max} - w_min + 1));
    edges.push_back({static_cast<std::uint32_t>(keyed[k].first >> 32), static_cast<std::uint32_t>(keyed[k].first), w});
  }
  return WeightedGraph::from_edges(n, edges);
}

UndirectedGraph gen_undirected_graph(std::size_t n, double avg_degree, std::uint64_t seed) {
  const std::size_t m = target_edges(n, avg_degree / 2);
  const CounterRng rng(seed, kUndirected);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges(m);
  parallel_for(0, m, [&](std::size_t e) { edges[e] = random_pair(rng, n, e); });
  return UndirectedGraph::from_edges(n, edges);
}

FreqDist parse_freq_dist(const std::string& name) {
  if (name == "uniform") return FreqDist::uniform;
  if (name == "zipf") return FreqDist::zipf;
  if (name == "exponential" || name == "exp") return FreqDist::exponential;
  fail(Errc::invalid_input, "unknown frequency distribution '" + name + "'");
}

std::vector<std::uint64_t> gen_freqs(std::size_t n, FreqDist dist, std::uint64_t max_f, std::uint64_t seed) {
  if (max_f < 1 || max_f >= (std::uint64_t{1} << 32))
    fail(Errc::invalid_input, "gen freqs: max frequency must lie in [1, 2^32)");
  const CounterRng rng(seed, kFreqs);
  std::vector<std::uint64_t> f(n);
  switch (dist) {
    case FreqDist::uniform:
      parallel_for(0, n, [&](std::size_t i) { f[i] = 1 + rng.uniform_int(i, max_f); });
      break;
    case FreqDist::zipf:
      for (std::size_t i = 0; i < n; ++i) f[i] = std::max<std::uint64_t>(1, max_f / (i + 1));
      for (std::size_t i = n; i > 1; --i) std::swap(f[i - 1], f[rng.uniform_int(i, i)]);
      break;
    case FreqDist::exponential: {
      const double mean = static_cast<double>(max_f) / 16.0;
      parallel_for(0, n, [&](std::size_t i) {
        double u = rng.uniform(i);
        if (u <= 0) u = 0x1.0p-53;
        const double x = std::floor(-std::log(u) * mean);
        f[i] = x >= static_cast<double>(max_f - 1) ? max_f : 1 + static_cast<std::uint64_t>(x);
      });
      break;
    }
  }
  return f;
}

}  // namespace phaselib
