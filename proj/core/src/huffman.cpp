#include "phaselib/huffman.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <string>

#include "phaselib/aug_map.hpp"
#include "phaselib/error.hpp"
#include "phaselib/parallel.hpp"

namespace phaselib {

namespace {

using NodeKey = std::pair<std::uint64_t, std::uint32_t>;  // (frequency, node id)
constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

// The two smallest frequencies of a set.
struct TwoSmallest {
  using aug_type = std::pair<std::uint64_t, std::uint64_t>;
  static aug_type identity() { return {kNone, kNone}; }
  static aug_type base(const NodeKey& k, const char&) { return {k.first, kNone}; }
  static aug_type combine(const aug_type& a, const aug_type& b) {
    if (a.first <= b.first) return {a.first, std::min(a.second, b.first)};
    return {b.first, std::min(b.second, a.first)};
  }
};

using WorkMap = AugMap<NodeKey, char, TwoSmallest>;

HuffmanTree start_tree(std::span<const std::uint64_t> freqs) {
  if (freqs.empty()) fail(Errc::invalid_input, "huffman: no frequencies");
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    if (freqs[i] == 0) fail(Errc::invalid_input, "huffman: frequency " + std::to_string(i) + " is zero");
    if (__builtin_add_overflow(total, freqs[i], &total))
      fail(Errc::overflow, "huffman: total frequency exceeds 64 bits");
  }
  const std::size_t n = freqs.size();
  HuffmanTree t;
  t.leaves = n;
  t.freq.assign(freqs.begin(), freqs.end());
  t.freq.resize(2 * n - 1, 0);
  t.left.assign(2 * n - 1, kNoNode);
  t.right.assign(2 * n - 1, kNoNode);
  t.parent.assign(2 * n - 1, kNoNode);
  t.built_round.assign(2 * n - 1, 0);
  return t;
}

void link(HuffmanTree& t, std::uint32_t node, std::uint32_t a, std::uint32_t b) {
  t.freq[node] = t.freq[a] + t.freq[b];
  t.left[node] = a;
  t.right[node] = b;
  t.parent[a] = node;
  t.parent[b] = node;
}

// Height and weighted path length from the finished links.
void measure(HuffmanTree& t) {
  t.root = static_cast<std::uint32_t>(t.node_count() - 1);
  const auto d = t.depths();
  t.height = 0;
  t.wpl = 0;
  for (std::size_t i = 0; i < t.leaves; ++i) {
    t.height = std::max(t.height, d[i]);
    std::uint64_t term;
    if (__builtin_mul_overflow(t.freq[i], static_cast<std::uint64_t>(d[i]), &term) ||
        __builtin_add_overflow(t.wpl, term, &t.wpl))
      fail(Errc::overflow, "huffman: weighted path length exceeds 64 bits");
  }
}

}  // namespace

std::vector<std::uint32_t> HuffmanTree::depths() const {
  std::vector<std::uint32_t> d(node_count(), 0);
  // Parents are created after their children, so a descending sweep sees
  // every parent first.
  for (std::size_t i = node_count(); i-- > 0;)
    if (parent[i] != kNoNode) d[i] = d[parent[i]] + 1;
  d.resize(leaves);
  return d;
}

HuffmanTree seq_huffman(std::span<const std::uint64_t> freqs) {
  HuffmanTree t = start_tree(freqs);
  const std::size_t n = freqs.size();
  std::priority_queue<NodeKey, std::vector<NodeKey>, std::greater<>> heap;
  for (std::size_t i = 0; i < n; ++i) heap.push({t.freq[i], static_cast<std::uint32_t>(i)});
  for (std::uint32_t next = static_cast<std::uint32_t>(n); heap.size() > 1; ++next) {
    const auto a = heap.top();
    heap.pop();
    const auto b = heap.top();
    heap.pop();
    link(t, next, a.second, b.second);
    heap.push({t.freq[next], next});
  }
  measure(t);
  return t;
}

std::pair<HuffmanTree, PhaseTrace> phase_huffman(std::span<const std::uint64_t> freqs) {
  HuffmanTree t = start_tree(freqs);
  const std::size_t n = freqs.size();

  struct State {
    WorkMap work;
    std::uint32_t next = 0;
  } st;
  st.next = static_cast<std::uint32_t>(n);
  {
    std::vector<WorkMap::entry_type> entries(n);
    for (std::size_t i = 0; i < n; ++i) entries[i] = {{t.freq[i], static_cast<std::uint32_t>(i)}, 0};
    std::sort(entries.begin(), entries.end());
    st.work = WorkMap::build(entries);
  }

  PhaseProblem<State> prob;
  prob.object_count = 2 * n - 2;
  prob.tag = "huffman";
  prob.frontier = [&](std::size_t, State& s, PhaseTrace&) {
    const auto [f1, f2] = s.work.aug_all();
    const std::uint64_t fm = f1 + f2;
    auto [below, rest] = std::move(s.work).split_before({fm, 0});
    auto taken = below.flatten();
    if (taken.size() % 2 == 1) {
      rest.insert(taken.back().first, 0);
      taken.pop_back();
    }
    s.work = std::move(rest);
    std::vector<ObjectId> ids(taken.size());
    for (std::size_t k = 0; k < taken.size(); ++k) ids[k] = taken[k].first.second;
    return ids;
  };
  prob.process = [&](std::size_t round, std::span<const ObjectId> ids, State& s, PhaseTrace& tr) {
    const std::size_t pairs = ids.size() / 2;
    std::vector<WorkMap::entry_type> fresh(pairs);
    parallel_for(0, pairs, [&](std::size_t k) {
      const auto node = static_cast<std::uint32_t>(s.next + k);
      link(t, node, ids[2 * k], ids[2 * k + 1]);
      t.built_round[node] = static_cast<std::uint32_t>(round);
      fresh[k] = {{t.freq[node], node}, 0};
    }, 512);
    s.next += static_cast<std::uint32_t>(pairs);
    s.work.multi_insert(std::move(fresh));
    tr.bump("merges", static_cast<std::int64_t>(pairs));
  };
  PhaseTrace trace = run_phases(prob, st);
  measure(t);
  return {std::move(t), std::move(trace)};
}

std::vector<std::uint32_t> relaxed_rank_huffman(const HuffmanTree& t) {
  std::uint32_t a0 = 0;
  for (std::uint32_t i = 1; i < t.leaves; ++i)
    if (t.freq[i] < t.freq[a0]) a0 = i;
  std::vector<std::uint64_t> path;  // f*_0 .. f*_H
  for (std::uint32_t v = a0; v != kNoNode; v = t.parent[v]) path.push_back(t.freq[v]);
  std::vector<std::uint32_t> rank(t.node_count());
  for (std::size_t v = 0; v < t.node_count(); ++v) {
    const auto it = std::upper_bound(path.begin(), path.end(), t.freq[v]);
    rank[v] = it == path.begin() ? 0 : static_cast<std::uint32_t>(it - path.begin() - 1);
  }
  return rank;
}

}  // namespace phaselib
