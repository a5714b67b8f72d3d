#include "phaselib/phase.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <thread>

#include "phaselib/error.hpp"
#include "phaselib/parallel.hpp"

namespace phaselib {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_input: return "invalid_input";
    case Errc::unsorted_keys: return "unsorted_keys";
    case Errc::duplicate_key: return "duplicate_key";
    case Errc::stalled: return "stalled";
    case Errc::cycle: return "cycle";
    case Errc::already_finished: return "already_finished";
    case Errc::overflow: return "overflow";
    case Errc::parse: return "parse";
    case Errc::verification: return "verification";
  }
  return "unknown";
}

int default_threads() {
  if (const char* env = std::getenv("PHASELIB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::size_t PhaseTrace::processed() const noexcept {
  std::size_t total = 0;
  for (const auto& r : rounds) total += r.frontier.size();
  return total;
}

std::vector<std::uint32_t> PhaseTrace::round_of(std::size_t n) const {
  std::vector<std::uint32_t> out(n, 0);
  for (const auto& r : rounds)
    for (ObjectId id : r.frontier)
      if (id < n) out[id] = static_cast<std::uint32_t>(r.round);
  return out;
}

void PhaseTrace::bump(const std::string& name, std::int64_t value) {
  if (!rounds.empty()) rounds.back().counters[name] += value;
  totals[name] += value;
}

void PhaseTrace::write_csv(std::ostream& os) const {
  std::set<std::string> names;
  for (const auto& r : rounds)
    for (const auto& [k, v] : r.counters) names.insert(k);
  os << "round,frontier_size";
  for (const auto& k : names) os << ',' << k;
  os << '\n';
  for (const auto& r : rounds) {
    os << r.round << ',' << r.frontier.size();
    for (const auto& k : names) {
      auto it = r.counters.find(k);
      os << ',' << (it == r.counters.end() ? 0 : it->second);
    }
    os << '\n';
  }
}

namespace detail {
void throw_stalled(const std::string& tag, std::size_t round, std::size_t done,
                   std::size_t total) {
  fail(Errc::stalled, tag + ": empty frontier in round " + std::to_string(round) +
                          " with " + std::to_string(total - done) + " of " +
                          std::to_string(total) + " objects unprocessed");
}
}  // namespace detail

std::size_t DependenceGraph::edge_count() const {
  std::size_t m = 0;
  for (const auto& p : preds) m += p.size();
  return m;
}

std::vector<std::uint32_t> oracle_rank(const DependenceGraph& dg) {
  std::vector<std::vector<ObjectId>> succ(dg.n);
  std::vector<std::size_t> indeg(dg.n, 0);
  for (std::size_t x = 0; x < dg.n; ++x) {
    for (ObjectId y : dg.preds[x]) {
      if (y >= dg.n) fail(Errc::invalid_input, "dependence edge references unknown object");
      succ[y].push_back(static_cast<ObjectId>(x));
      ++indeg[x];
    }
  }
  std::vector<std::uint32_t> rank(dg.n, 1);
  std::vector<ObjectId> ready;
  for (std::size_t x = 0; x < dg.n; ++x)
    if (indeg[x] == 0) ready.push_back(static_cast<ObjectId>(x));
  std::size_t seen = 0;
  while (!ready.empty()) {
    const ObjectId y = ready.back();
    ready.pop_back();
    ++seen;
    for (ObjectId x : succ[y]) {
      rank[x] = std::max(rank[x], rank[y] + 1);
      if (--indeg[x] == 0) ready.push_back(x);
    }
  }
  if (seen != dg.n) fail(Errc::cycle, "dependence graph contains a cycle");
  return rank;
}

}  // namespace phaselib
