#include "phaselib/sssp.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <queue>
#include <string>

#include <tbb/enumerable_thread_specific.h>

#include "phaselib/aug_map.hpp"
#include "phaselib/error.hpp"
#include "phaselib/parallel.hpp"

namespace phaselib {

namespace {

using DistKey = std::pair<double, std::uint32_t>;
using DistMap = AugMap<DistKey, char, CountEntries<DistKey, char>>;

void check_source(const WeightedGraph& g, std::uint32_t src) {
  if (src >= g.n)
    fail(Errc::invalid_input, "sssp: source " + std::to_string(src) + " out of range (n=" +
                                  std::to_string(g.n) + ")");
}

void check_weight(double w, std::size_t e) {
  if (!(w > 0) || !std::isfinite(w))
    fail(Errc::invalid_input, "sssp: edge " + std::to_string(e) + " has a non-positive weight");
}

inline bool write_min(std::atomic<double>& slot, double v) {
  double cur = slot.load(std::memory_order_relaxed);
  while (v < cur)
    if (slot.compare_exchange_weak(cur, v, std::memory_order_relaxed)) return true;
  return false;
}

}  // namespace

double WeightedGraph::min_weight() const {
  return weights.empty() ? 0.0 : *std::min_element(weights.begin(), weights.end());
}

double WeightedGraph::max_weight() const {
  return weights.empty() ? 0.0 : *std::max_element(weights.begin(), weights.end());
}

WeightedGraph WeightedGraph::from_edges(std::size_t n, std::span<const Edge> edges) {
  WeightedGraph g;
  g.n = n;
  g.offsets.assign(n + 1, 0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].from >= n || edges[e].to >= n)
      fail(Errc::invalid_input, "graph: edge " + std::to_string(e) + " has an endpoint outside [0, " +
                                    std::to_string(n) + ")");
    check_weight(edges[e].weight, e);
    ++g.offsets[edges[e].from + 1];
  }
  for (std::size_t u = 0; u < n; ++u) g.offsets[u + 1] += g.offsets[u];
  g.targets.resize(edges.size());
  g.weights.resize(edges.size());
  std::vector<std::uint64_t> at(g.offsets.begin(), g.offsets.end() - 1);
  for (const Edge& e : edges) {
    const std::uint64_t k = at[e.from]++;
    g.targets[k] = e.to;
    g.weights[k] = e.weight;
  }
  return g;
}

void WeightedGraph::validate() const {
  if (offsets.size() != n + 1 || offsets.front() != 0 || offsets.back() != targets.size() ||
      weights.size() != targets.size())
    fail(Errc::invalid_input, "graph: inconsistent adjacency sizes");
  for (std::size_t u = 0; u < n; ++u)
    if (offsets[u + 1] < offsets[u]) fail(Errc::invalid_input, "graph: offsets not monotone");
  for (std::size_t e = 0; e < targets.size(); ++e) {
    if (targets[e] >= n) fail(Errc::invalid_input, "graph: target out of range at edge " + std::to_string(e));
    check_weight(weights[e], e);
  }
}

SsspResult seq_dijkstra(const WeightedGraph& g, std::uint32_t src) {
  check_source(g, src);
  SsspResult r;
  r.dist.assign(g.n, kUnreachable);
  std::vector<char> done(g.n, 0);
  std::priority_queue<DistKey, std::vector<DistKey>, std::greater<>> heap;
  r.dist[src] = 0;
  heap.push({0.0, src});
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    for (std::uint64_t e = g.offsets[u]; e < g.offsets[u + 1]; ++e) {
      ++r.relaxations;
      const double nd = d + g.weights[e];
      if (nd < r.dist[g.targets[e]]) {
        r.dist[g.targets[e]] = nd;
        heap.push({nd, g.targets[e]});
      }
    }
  }
  return r;
}

std::pair<SsspResult, PhaseTrace> windowed_sssp(const WeightedGraph& g, std::uint32_t src) {
  check_source(g, src);
  const std::size_t n = g.n;
  // Without edges nothing can improve, so one window takes everything.
  const double wstar = g.edge_count() ? g.min_weight() : kUnreachable;
  for (std::size_t e = 0; e < g.weights.size(); ++e) check_weight(g.weights[e], e);

  struct State {
    DistMap pending;
    std::vector<std::atomic<double>> dist;
    std::vector<double> keyed;  // distance under which the vertex sits in `pending`
    std::vector<char> settled;
    std::vector<std::atomic<char>> touched;
  } st{DistMap(), std::vector<std::atomic<double>>(n), std::vector<double>(n, kUnreachable),
       std::vector<char>(n, 0), std::vector<std::atomic<char>>(n)};
  for (std::size_t v = 0; v < n; ++v) {
    st.dist[v].store(kUnreachable, std::memory_order_relaxed);
    st.touched[v].store(0, std::memory_order_relaxed);
  }
  st.dist[src].store(0.0);
  st.keyed[src] = 0.0;
  st.pending.insert({0.0, src}, 0);

  std::uint64_t relaxations = 0;
  PhaseProblem<State> prob;
  prob.tag = "sssp";
  prob.frontier = [&](std::size_t, State& s, PhaseTrace&) {
    std::vector<ObjectId> ids;
    if (s.pending.empty()) return ids;
    const double dmin = s.pending.first()->first.first;
    auto [window, rest] = std::move(s.pending).split_before({dmin + wstar, 0});
    s.pending = std::move(rest);
    ids.reserve(window.size());
    window.for_each([&](const DistKey& k, const char&) { ids.push_back(k.second); });
    std::sort(ids.begin(), ids.end());
    return ids;
  };
  prob.process = [&](std::size_t, std::span<const ObjectId> ids, State& s, PhaseTrace& tr) {
    for (ObjectId u : ids) {
      s.settled[u] = 1;
      s.keyed[u] = kUnreachable;
    }
    tbb::enumerable_thread_specific<std::vector<std::uint32_t>> local;
    std::atomic<std::uint64_t> late{0}, scanned{0};
    parallel_for(0, ids.size(), [&](std::size_t k) {
      const ObjectId u = ids[k];
      const double du = s.dist[u].load(std::memory_order_relaxed);
      auto& mine = local.local();
      std::uint64_t lost = 0;
      for (std::uint64_t e = g.offsets[u]; e < g.offsets[u + 1]; ++e) {
        const std::uint32_t v = g.targets[e];
        const double nd = du + g.weights[e];
        if (s.settled[v]) {
          if (nd < s.dist[v].load(std::memory_order_relaxed)) ++lost;
          continue;
        }
        if (write_min(s.dist[v], nd) && s.touched[v].exchange(1, std::memory_order_relaxed) == 0)
          mine.push_back(v);
      }
      scanned.fetch_add(g.offsets[u + 1] - g.offsets[u], std::memory_order_relaxed);
      if (lost) late.fetch_add(lost, std::memory_order_relaxed);
    }, 64);

    std::vector<std::uint32_t> changed;
    for (auto& part : local) changed.insert(changed.end(), part.begin(), part.end());
    std::sort(changed.begin(), changed.end());
    std::vector<DistKey> stale;
    std::vector<DistMap::entry_type> fresh(changed.size());
    for (std::size_t k = 0; k < changed.size(); ++k) {
      const std::uint32_t v = changed[k];
      s.touched[v].store(0, std::memory_order_relaxed);
      if (s.keyed[v] != kUnreachable) stale.push_back({s.keyed[v], v});
      s.keyed[v] = s.dist[v].load(std::memory_order_relaxed);
      fresh[k] = {{s.keyed[v], v}, 0};
    }
    s.pending.multi_delete(std::move(stale));
    s.pending.multi_insert(std::move(fresh));
    relaxations += scanned.load();
    tr.bump("relaxations", static_cast<std::int64_t>(scanned.load()));
    tr.bump("late_improvements", static_cast<std::int64_t>(late.load()));
  };
  PhaseTrace trace = run_phases(prob, st);

  SsspResult res;
  res.dist.resize(n);
  for (std::size_t v = 0; v < n; ++v) res.dist[v] = st.dist[v].load();
  res.rounds = trace.round_count();
  res.relaxations = relaxations;
  return {std::move(res), std::move(trace)};
}

std::uint64_t count_improvable_edges(const WeightedGraph& g, std::span<const double> dist) {
  std::uint64_t bad = 0;
  for (std::size_t u = 0; u < g.n; ++u) {
    if (dist[u] == kUnreachable) continue;
    for (std::uint64_t e = g.offsets[u]; e < g.offsets[u + 1]; ++e)
      if (dist[u] + g.weights[e] < dist[g.targets[e]]) ++bad;
  }
  return bad;
}

std::uint64_t reachable_out_degree_sum(const WeightedGraph& g, std::span<const double> dist) {
  std::uint64_t sum = 0;
  for (std::size_t u = 0; u < g.n; ++u)
    if (dist[u] != kUnreachable) sum += g.out_degree(u);
  return sum;
}

}  // namespace phaselib
