#include "phaselib/mis.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <string>

#include <tbb/parallel_for_each.h>

#include "phaselib/error.hpp"
#include "phaselib/parallel.hpp"
#include "phaselib/random.hpp"

namespace phaselib {

namespace {

constexpr std::uint32_t kNotBlocking = 0xFFFFFFFFu;

std::vector<std::uint32_t> by_priority_desc(std::span<const std::uint32_t> priority) {
  std::vector<std::uint32_t> order(priority.size());
  for (std::size_t v = 0; v < priority.size(); ++v) order[priority.size() - priority[v]] = static_cast<std::uint32_t>(v);
  return order;
}

}  // namespace

UndirectedGraph UndirectedGraph::from_edges(
    std::size_t n, std::span<const std::pair<std::uint32_t, std::uint32_t>> edges) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
  arcs.reserve(2 * edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [u, v] = edges[e];
    if (u >= n || v >= n)
      fail(Errc::invalid_input, "graph: edge " + std::to_string(e) + " has an endpoint outside [0, " +
                                    std::to_string(n) + ")");
    if (u == v) fail(Errc::invalid_input, "graph: self-loop at vertex " + std::to_string(u));
    arcs.push_back({u, v});
    arcs.push_back({v, u});
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  UndirectedGraph g;
  g.n = n;
  g.offsets.assign(n + 1, 0);
  g.adj.resize(arcs.size());
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    ++g.offsets[arcs[k].first + 1];
    g.adj[k] = arcs[k].second;
  }
  for (std::size_t v = 0; v < n; ++v) g.offsets[v + 1] += g.offsets[v];
  return g;
}

std::vector<std::uint32_t> MisResult::selected() const {
  std::vector<std::uint32_t> out;
  for (std::size_t v = 0; v < status.size(); ++v)
    if (status[v] == MisStatus::selected) out.push_back(static_cast<std::uint32_t>(v));
  return out;
}

std::vector<std::uint32_t> assign_random_priorities(std::size_t n, std::uint64_t seed) {
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 1u);
  const CounterRng rng(seed, 0x6d6973);
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng.uniform_int(i, i)]);
  return p;
}

void check_priorities(std::size_t n, std::span<const std::uint32_t> priority) {
  if (priority.size() != n)
    fail(Errc::invalid_input, "mis: expected " + std::to_string(n) + " priorities, got " +
                                  std::to_string(priority.size()));
  std::vector<char> seen(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    const std::uint32_t p = priority[v];
    if (p < 1 || p > n)
      fail(Errc::invalid_input, "mis: priority of vertex " + std::to_string(v) + " outside [1, n]");
    if (seen[p]) fail(Errc::duplicate_key, "mis: priority " + std::to_string(p) + " repeated");
    seen[p] = 1;
  }
}

MisResult seq_greedy_mis(const UndirectedGraph& g, std::span<const std::uint32_t> priority) {
  check_priorities(g.n, priority);
  MisResult r;
  r.status.assign(g.n, MisStatus::undecided);
  for (std::uint32_t v : by_priority_desc(priority)) {
    if (r.status[v] != MisStatus::undecided) continue;
    r.status[v] = MisStatus::selected;
    for (std::uint32_t u : g.neighbors(v)) r.status[u] = MisStatus::removed;
  }
  return r;
}

MisResult par_greedy_mis(const UndirectedGraph& g, std::span<const std::uint32_t> priority) {
  check_priorities(g.n, priority);
  const std::size_t n = g.n;

  // Tree of v: k_v blocking neighbours, heap nodes 1..2k_v-1 stored from base[v].
  std::vector<std::uint32_t> leaves(n, 0);
  parallel_for(0, n, [&](std::size_t v) {
    for (std::uint32_t u : g.neighbors(v)) leaves[v] += priority[u] > priority[v];
  }, 256);
  std::vector<std::uint64_t> base(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) base[v + 1] = base[v] + 2 * std::uint64_t{leaves[v]};

  // slot[e] for the arc u -> w: u's leaf index in T_w when u blocks w.
  std::vector<std::uint32_t> slot(g.adj.size(), kNotBlocking);
  parallel_for(0, n, [&](std::size_t w) {
    std::uint32_t pos = 0;
    for (std::uint32_t u : g.neighbors(w)) {
      if (priority[u] < priority[w]) continue;
      const auto nb = g.neighbors(u);
      const auto it = std::lower_bound(nb.begin(), nb.end(), static_cast<std::uint32_t>(w));
      slot[g.offsets[u] + static_cast<std::uint64_t>(it - nb.begin())] = pos++;
    }
  }, 256);

  std::vector<std::atomic<std::uint8_t>> hits(base[n]);
  std::vector<std::atomic<std::uint8_t>> status(n);
  std::vector<std::atomic<std::uint8_t>> wakes(n);
  parallel_for(0, base[n], [&](std::size_t i) { hits[i].store(0, std::memory_order_relaxed); });
  parallel_for(0, n, [&](std::size_t v) {
    status[v].store(0, std::memory_order_relaxed);
    wakes[v].store(0, std::memory_order_relaxed);
  });

  constexpr auto kSelected = static_cast<std::uint8_t>(MisStatus::selected);
  constexpr auto kRemoved = static_cast<std::uint8_t>(MisStatus::removed);

  // Marks u's leaf in T_w and climbs; true when T_w is now complete.
  auto mark = [&](std::uint32_t w, std::uint32_t leaf) {
    const std::uint32_t k = leaves[w];
    std::atomic<std::uint8_t>* tree = hits.data() + base[w];
    std::uint32_t node = k + leaf;
    tree[node].fetch_add(1, std::memory_order_acq_rel);
    if (k == 1) return true;
    for (node >>= 1;; node >>= 1) {
      // First arrival sets the flag and stops; the second finds the other
      // subtree complete and carries on upwards.
      if (tree[node].fetch_add(1, std::memory_order_acq_rel) == 0) return false;
      if (node == 1) return true;
    }
  };

  std::vector<std::uint32_t> ready;
  for (std::size_t v = 0; v < n; ++v)
    if (leaves[v] == 0) ready.push_back(static_cast<std::uint32_t>(v));

  tbb::parallel_for_each(ready.begin(), ready.end(),
                         [&](std::uint32_t v, tbb::feeder<std::uint32_t>& feeder) {
    wakes[v].fetch_add(1, std::memory_order_relaxed);
    std::uint8_t expected = 0;
    if (!status[v].compare_exchange_strong(expected, kSelected, std::memory_order_acq_rel)) return;
    for (std::uint32_t u : g.neighbors(v)) {
      expected = 0;
      if (!status[u].compare_exchange_strong(expected, kRemoved, std::memory_order_acq_rel)) continue;
      for (std::uint64_t e = g.offsets[u]; e < g.offsets[u + 1]; ++e) {
        if (slot[e] == kNotBlocking) continue;
        const std::uint32_t w = g.adj[e];
        if (status[w].load(std::memory_order_acquire) == kRemoved) continue;
        if (mark(w, slot[e])) feeder.add(w);
      }
    }
  });

  MisResult r;
  r.status.resize(n);
  r.wake_count.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    r.status[v] = static_cast<MisStatus>(status[v].load());
    r.wake_count[v] = wakes[v].load();
    r.counters.max_wakes = std::max<std::uint32_t>(r.counters.max_wakes, r.wake_count[v]);
    const std::uint32_t k = leaves[v];
    r.counters.leaves += k;
    r.counters.internal_nodes += k ? k - 1 : 0;
    for (std::uint32_t node = 1; node < 2 * k; ++node) {
      const std::uint32_t h = hits[base[v] + node].load();
      r.counters.tas_attempts += h;
      if (node < k) r.counters.max_internal_attempts = std::max(r.counters.max_internal_attempts, h);
      else r.counters.max_leaf_marks = std::max(r.counters.max_leaf_marks, h);
    }
  }
  return r;
}

std::vector<std::uint32_t> mis_rank(const UndirectedGraph& g, std::span<const std::uint32_t> priority) {
  check_priorities(g.n, priority);
  std::vector<std::uint32_t> rank(g.n, 0);
  for (std::uint32_t v : by_priority_desc(priority)) {
    std::uint32_t r = 0;
    for (std::uint32_t u : g.neighbors(v))
      if (priority[u] > priority[v]) r = std::max(r, rank[u]);
    rank[v] = r + 1;
  }
  return rank;
}

PhaseTrace mis_trace(const UndirectedGraph& g, std::span<const std::uint32_t> priority) {
  const auto rank = mis_rank(g, priority);
  PhaseTrace t;
  t.tag = "mis";
  std::uint32_t top = 0;
  for (auto r : rank) top = std::max(top, r);
  for (std::uint32_t r = 1; r <= top; ++r) t.rounds.push_back(RoundRecord{r, {}, {}});
  for (std::size_t v = 0; v < g.n; ++v) t.rounds[rank[v] - 1].frontier.push_back(static_cast<ObjectId>(v));
  return t;
}

bool is_independent(const UndirectedGraph& g, std::span<const MisStatus> status) {
  for (std::size_t v = 0; v < g.n; ++v) {
    if (status[v] != MisStatus::selected) continue;
    for (std::uint32_t u : g.neighbors(v))
      if (status[u] == MisStatus::selected) return false;
  }
  return true;
}

bool is_maximal(const UndirectedGraph& g, std::span<const MisStatus> status) {
  for (std::size_t v = 0; v < g.n; ++v) {
    if (status[v] == MisStatus::selected) continue;
    bool covered = false;
    for (std::uint32_t u : g.neighbors(v)) covered = covered || status[u] == MisStatus::selected;
    if (!covered) return false;
  }
  return true;
}

TasTree::TasTree(std::uint32_t leaves) : leaves_(leaves), hits_(2 * std::size_t{leaves}, 0) {}

bool TasTree::mark(std::uint32_t leaf, std::vector<bool>* attempts) {
  if (leaf >= leaves_) fail(Errc::invalid_input, "tas tree: leaf out of range");
  std::uint32_t node = leaves_ + leaf;
  ++hits_[node];
  if (leaves_ == 1) return true;
  for (node >>= 1;; node >>= 1) {
    const bool won = hits_[node]++ == 0;
    if (attempts) attempts->push_back(won);
    if (won) return false;
    if (node == 1) return true;
  }
}

}  // namespace phaselib
