#include "phaselib/activity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <tbb/parallel_sort.h>

#include "phaselib/aug_map.hpp"
#include "phaselib/error.hpp"
#include "phaselib/parallel.hpp"
#include "phaselib/pivot_multimap.hpp"

namespace phaselib {

namespace {

using TimeKey = std::pair<double, std::uint32_t>;
using TimeMap = AugMap<TimeKey, double, MinOfValues<TimeKey, double>>;
using DpMap = AugMap<TimeKey, double, MaxOfValues<TimeKey, double>>;

constexpr double kSentinel = std::numeric_limits<double>::lowest();

void check_activity(const Activity& a, std::size_t i) {
  if (!std::isfinite(a.start) || !std::isfinite(a.end) || !std::isfinite(a.weight))
    fail(Errc::invalid_input, "activity " + std::to_string(i) + ": non-finite field");
  if (!(a.start < a.end))
    fail(Errc::invalid_input, "activity " + std::to_string(i) + ": start must be before end");
  if (a.weight < 0) fail(Errc::invalid_input, "activity " + std::to_string(i) + ": negative weight");
}

void check_sorted(std::span<const Activity> acts) {
  for (std::size_t i = 0; i < acts.size(); ++i) {
    check_activity(acts[i], i);
    if (i > 0 && acts[i].end < acts[i - 1].end)
      fail(Errc::unsorted_keys, "activities must be sorted by end time (position " +
                                    std::to_string(i) + ")");
  }
}

std::vector<double> ends_of(std::span<const Activity> acts) {
  std::vector<double> e(acts.size());
  for (std::size_t i = 0; i < acts.size(); ++i) e[i] = acts[i].end;
  return e;
}

// Number of activities ending no later than t.
std::size_t ending_by(const std::vector<double>& ends, double t) {
  return static_cast<std::size_t>(std::upper_bound(ends.begin(), ends.end(), t) - ends.begin());
}

DpMap sentinel_dp_map(std::span<const Activity> acts) {
  std::vector<DpMap::entry_type> entries(acts.size());
  for (std::size_t i = 0; i < acts.size(); ++i)
    entries[i] = {{acts[i].end, static_cast<std::uint32_t>(i)}, kSentinel};
  return DpMap::build(entries);
}

double best_ending_by(const DpMap& m, double t) {
  const double q = m.prefix_sum({t, std::numeric_limits<std::uint32_t>::max()}, true);
  return q == kSentinel ? 0.0 : q;
}

void publish(DpMap& m, std::span<const Activity> acts, std::span<const ObjectId> ids,
             const std::vector<double>& dp) {
  std::vector<DpMap::entry_type> batch(ids.size());
  for (std::size_t k = 0; k < ids.size(); ++k) batch[k] = {{acts[ids[k]].end, ids[k]}, dp[ids[k]]};
  m.multi_update(std::move(batch));
}

ActivityResult empty_result(std::size_t n) {
  ActivityResult r;
  r.dp.assign(n, 0);
  r.rank.assign(n, 0);
  return r;
}

void finish(ActivityResult& r) {
  r.best = 0;
  for (double d : r.dp) r.best = std::max(r.best, d);
}

}  // namespace

std::vector<Activity> sort_by_end(std::span<const Activity> acts, std::vector<std::uint32_t>* order) {
  for (std::size_t i = 0; i < acts.size(); ++i) check_activity(acts[i], i);
  std::vector<std::uint32_t> idx(acts.size());
  std::iota(idx.begin(), idx.end(), 0u);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return acts[a].end < acts[b].end; });
  std::vector<Activity> out(acts.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = acts[idx[i]];
  if (order) *order = std::move(idx);
  return out;
}

ActivityResult seq_activity_dp(std::span<const Activity> acts) {
  check_sorted(acts);
  const std::size_t n = acts.size();
  ActivityResult r = empty_result(n);
  const auto ends = ends_of(acts);
  std::vector<double> best(n + 1, 0.0);
  std::vector<std::uint32_t> deep(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    // Everything ending by s_i has a smaller position, so the prefix is final.
    const std::size_t p = ending_by(ends, acts[i].start);
    r.dp[i] = best[p] + acts[i].weight;
    r.rank[i] = deep[p] + 1;
    best[i + 1] = std::max(best[i], r.dp[i]);
    deep[i + 1] = std::max(deep[i], r.rank[i]);
  }
  r.rounds = n ? deep[n] : 0;
  finish(r);
  return r;
}

std::pair<ActivityResult, PhaseTrace> type1_activity(std::span<const Activity> acts) {
  check_sorted(acts);
  const std::size_t n = acts.size();
  ActivityResult res = empty_result(n);

  struct State {
    TimeMap time;
    DpMap dp;
  } st;
  {
    std::vector<TimeMap::entry_type> entries(n);
    parallel_for(0, n, [&](std::size_t i) {
      entries[i] = {{acts[i].start, static_cast<std::uint32_t>(i)}, acts[i].end};
    });
    tbb::parallel_sort(entries.begin(), entries.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
    st.time = TimeMap::build(entries);
  }
  st.dp = sentinel_dp_map(acts);

  PhaseProblem<State> prob;
  prob.object_count = n;
  prob.tag = "activity1";
  prob.frontier = [&](std::size_t, State& s, PhaseTrace&) {
    const double first_end = s.time.aug_all();
    auto [now, later] = std::move(s.time).split_before({first_end, 0});
    s.time = std::move(later);
    std::vector<ObjectId> ids;
    ids.reserve(now.size());
    now.for_each([&](const TimeKey& k, const double&) { ids.push_back(k.second); });
    std::sort(ids.begin(), ids.end());
    return ids;
  };
  prob.process = [&](std::size_t round, std::span<const ObjectId> ids, State& s, PhaseTrace& tr) {
    parallel_for(0, ids.size(), [&](std::size_t k) {
      const ObjectId i = ids[k];
      res.dp[i] = best_ending_by(s.dp, acts[i].start) + acts[i].weight;
      res.rank[i] = static_cast<std::uint32_t>(round);
    }, 256);
    publish(s.dp, acts, ids, res.dp);
    tr.bump("range_queries", static_cast<std::int64_t>(ids.size()));
  };
  PhaseTrace trace = run_phases(prob, st);
  res.rounds = trace.round_count();
  finish(res);
  return {std::move(res), std::move(trace)};
}

std::vector<std::uint32_t> activity_pivots(std::span<const Activity> acts) {
  check_sorted(acts);
  const std::size_t n = acts.size();
  const auto ends = ends_of(acts);
  // latest[k]: latest-start activity among the first k (ties to the later one).
  std::vector<std::uint32_t> latest(n + 1, kNoPivot);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t prev = latest[i];
    latest[i + 1] = (prev == kNoPivot || acts[i].start >= acts[prev].start)
                        ? static_cast<std::uint32_t>(i)
                        : prev;
  }
  std::vector<std::uint32_t> pivot(n);
  parallel_for(0, n, [&](std::size_t i) { pivot[i] = latest[ending_by(ends, acts[i].start)]; });
  return pivot;
}

std::pair<ActivityResult, PhaseTrace> type2_activity(std::span<const Activity> acts) {
  const std::size_t n = acts.size();
  ActivityResult res = empty_result(n);
  res.pivot = activity_pivots(acts);

  struct State {
    PivotMultiMap pivots;
    DpMap dp;
    std::vector<ObjectId> prev{0};  // 0 stands for "no pivot"
  } st{PivotMultiMap(n + 1), sentinel_dp_map(acts)};
  {
    std::vector<PivotMultiMap::Pair> pairs(n);
    for (std::size_t i = 0; i < n; ++i)
      pairs[i] = {res.pivot[i] == kNoPivot ? 0 : res.pivot[i] + 1, static_cast<ObjectId>(i)};
    st.pivots.multi_insert(std::move(pairs));
  }

  PhaseProblem<State> prob;
  prob.object_count = n;
  prob.tag = "activity2";
  prob.frontier = [&](std::size_t, State& s, PhaseTrace& tr) {
    auto ids = s.pivots.multi_find(s.prev);
    std::sort(ids.begin(), ids.end());
    tr.bump("wakeups", static_cast<std::int64_t>(ids.size()));
    return ids;
  };
  prob.process = [&](std::size_t round, std::span<const ObjectId> ids, State& s, PhaseTrace&) {
    parallel_for(0, ids.size(), [&](std::size_t k) {
      const ObjectId i = ids[k];
      res.dp[i] = best_ending_by(s.dp, acts[i].start) + acts[i].weight;
      res.rank[i] = static_cast<std::uint32_t>(round);
    }, 256);
    publish(s.dp, acts, ids, res.dp);
    s.prev.resize(ids.size());
    for (std::size_t k = 0; k < ids.size(); ++k) s.prev[k] = ids[k] + 1;
  };
  PhaseTrace trace = run_phases(prob, st);
  res.rounds = trace.round_count();
  finish(res);
  return {std::move(res), std::move(trace)};
}

std::vector<std::uint32_t> unweighted_activity_rank(std::span<const Activity> acts) {
  const std::size_t n = acts.size();
  const auto pivot = activity_pivots(acts);
  // Children lists by counting sort on the pivot.
  std::vector<std::size_t> start(n + 2, 0);
  for (std::size_t i = 0; i < n; ++i) ++start[(pivot[i] == kNoPivot ? 0 : pivot[i] + 1) + 1];
  for (std::size_t k = 1; k < start.size(); ++k) start[k] += start[k - 1];
  std::vector<std::uint32_t> child(n);
  {
    std::vector<std::size_t> at(start.begin(), start.end() - 1);
    for (std::size_t i = 0; i < n; ++i)
      child[at[pivot[i] == kNoPivot ? 0 : pivot[i] + 1]++] = static_cast<std::uint32_t>(i);
  }
  std::vector<std::uint32_t> rank(n, 0);
  std::vector<std::uint32_t> level(child.begin(), child.begin() + static_cast<std::ptrdiff_t>(start[1]));
  for (std::uint32_t depth = 1; !level.empty(); ++depth) {
    std::vector<std::size_t> off(level.size() + 1, 0);
    for (std::size_t k = 0; k < level.size(); ++k) {
      rank[level[k]] = depth;
      off[k + 1] = off[k] + (start[level[k] + 2] - start[level[k] + 1]);
    }
    std::vector<std::uint32_t> next(off.back());
    parallel_for(0, level.size(), [&](std::size_t k) {
      const std::size_t b = start[level[k] + 1], e = start[level[k] + 2];
      std::copy(child.begin() + static_cast<std::ptrdiff_t>(b), child.begin() + static_cast<std::ptrdiff_t>(e),
                next.begin() + static_cast<std::ptrdiff_t>(off[k]));
    }, 512);
    level = std::move(next);
  }
  return rank;
}

DependenceGraph activity_dependence_graph(std::span<const Activity> acts) {
  DependenceGraph dg(acts.size());
  for (std::size_t i = 0; i < acts.size(); ++i)
    for (std::size_t j = 0; j < acts.size(); ++j)
      if (j != i && acts[j].end <= acts[i].start) dg.add_edge(static_cast<ObjectId>(j), static_cast<ObjectId>(i));
  return dg;
}

}  // namespace phaselib
