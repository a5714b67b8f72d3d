#include "phaselib/lis.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <tuple>
#include <string>

#include "phaselib/error.hpp"
#include "phaselib/parallel.hpp"
#include "phaselib/pivot_multimap.hpp"
#include "phaselib/random.hpp"

namespace phaselib {

namespace {

void check_weights(std::size_t n, std::span<const std::uint32_t> w) {
  if (!w.empty() && w.size() != n)
    fail(Errc::invalid_input, "weights: expected " + std::to_string(n) + " entries, got " +
                                  std::to_string(w.size()));
  if (n >= (std::size_t{1} << 31))
    fail(Errc::overflow, "chain: more than 2^31 elements");
}

inline std::int64_t weight_of(std::span<const std::uint32_t> w, std::size_t i) {
  return w.empty() ? 1 : static_cast<std::int64_t>(w[i]);
}

struct ChainState {
  RangeIndex2D index;
  PivotMultiMap pivots;
  std::vector<ObjectId> prev;  // pivot ids finished last round; 0 is the virtual point
  std::vector<std::uint8_t> done;
  std::vector<std::pair<std::uint32_t, std::int64_t>> finals;
  std::vector<PivotMultiMap::Pair> fresh;
  std::vector<std::uint64_t> seen;  // scratch bitmap over object ids
};

// Unfinished objects hanging off `prev`, ascending by id. Large rounds go
// through a bitmap sweep, small ones through a sort.
std::vector<ObjectId> wake_list(ChainState& s) {
  std::vector<ObjectId> out;
  for (ObjectId p : s.prev)
    for (ObjectId id : s.pivots.objects_of(p))
      if (!s.done[id - 1]) out.push_back(id);
  if (out.size() * 16 < s.seen.size()) {
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  for (ObjectId id : out) s.seen[id >> 6] |= std::uint64_t{1} << (id & 63);
  out.clear();
  for (std::size_t w = 0; w < s.seen.size(); ++w) {
    for (std::uint64_t m = s.seen[w]; m; m &= m - 1)
      out.push_back(static_cast<ObjectId>(w * 64 + static_cast<std::size_t>(std::countr_zero(m))));
    s.seen[w] = 0;
  }
  return out;
}

}  // namespace

LisResult seq_dominance_chain(std::span<const std::uint32_t> y_by_x,
                              std::span<const std::uint32_t> weights) {
  const std::size_t n = y_by_x.size();
  check_weights(n, weights);
  LisResult r;
  r.dp.assign(n, 0);
  r.rank.assign(n, 0);
  r.pred.assign(n, kNoPred);
  std::uint32_t ymax = 0;
  for (auto y : y_by_x) ymax = std::max(ymax, y);
  // Fenwick over y: best (dp, index) and best rank.
  std::vector<std::uint32_t> best(n ? ymax + 2 : 1, kNoPred);
  std::vector<std::uint32_t> deep(best.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t arg = kNoPred;
    std::uint32_t depth = 0;
    for (std::size_t k = y_by_x[i]; k > 0; k &= k - 1) {
      const std::uint32_t c = best[k];
      if (c != kNoPred && (arg == kNoPred || r.dp[c] > r.dp[arg])) arg = c;
      depth = std::max(depth, deep[k]);
    }
    r.dp[i] = (arg == kNoPred ? 0 : r.dp[arg]) + weight_of(weights, i);
    r.pred[i] = arg;
    r.rank[i] = depth + 1;
    for (std::size_t k = y_by_x[i] + 1; k < best.size(); k += k & (~k + 1)) {
      if (best[k] == kNoPred || r.dp[best[k]] < r.dp[i]) best[k] = static_cast<std::uint32_t>(i);
      deep[k] = std::max(deep[k], r.rank[i]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    r.best = std::max(r.best, r.dp[i]);
    r.length = std::max(r.length, r.rank[i]);
  }
  r.rounds = r.length;
  return r;
}

std::pair<LisResult, PhaseTrace> par_dominance_chain(std::span<const std::uint32_t> y_by_x,
                                                     std::span<const std::uint32_t> weights,
                                                     const LisOptions& opt) {
  const std::size_t n = y_by_x.size();
  check_weights(n, weights);

  std::vector<Point2D> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = {static_cast<std::uint32_t>(i + 1), y_by_x[i]};

  LisResult res;
  res.dp.assign(n, 0);
  res.rank.assign(n, 0);
  res.pred.assign(n, kNoPred);
  res.wakeups.assign(n, 0);

  ChainState st{RangeIndex2D(pts, opt.seed), PivotMultiMap(n + 1), {0}, std::vector<std::uint8_t>(n, 0), {}, {},
                std::vector<std::uint64_t>(n / 64 + 1, 0)};
  st.index.set_witness_policy(opt.policy);
  {
    std::vector<PivotMultiMap::Pair> init(n);
    for (std::size_t i = 0; i < n; ++i) init[i] = {0, static_cast<ObjectId>(i + 1)};
    st.pivots.multi_insert(std::move(init));
  }

  PhaseProblem<ChainState> prob;
  prob.object_count = n;
  prob.tag = weights.empty() ? "lis" : "weighted-lis";
  prob.frontier = [&](std::size_t round, ChainState& s, PhaseTrace& tr) {
    // x order keeps neighbouring queries on shared blocks of the index.
    const std::vector<ObjectId> todo = wake_list(s);
    // A finished pivot never gains objects again.
    s.pivots.erase_pivots(s.prev);
    std::vector<std::uint32_t> verdict(todo.size(), kNoWitness);  // new pivot, or kNoWitness if ready
    parallel_for(0, todo.size(), [&](std::size_t k) {
      const std::size_t i = todo[k] - 1;
      ++res.wakeups[i];
      if (k + 8 < todo.size()) s.index.prefetch_below(todo[k + 8] - 1);
      const LisAggregate q = s.index.query_below(i);
      if (q.unfinished > 0) {
        verdict[k] = q.witness;
        return;
      }
      res.dp[i] = q.finished_max_or_zero() + weight_of(weights, i);
      res.pred[i] = q.witness == kNoWitness ? kNoPred : q.witness - 1;
      res.rank[i] = static_cast<std::uint32_t>(round);
    }, 256);

    std::vector<ObjectId> ready;
    s.finals.clear();
    s.fresh.clear();
    std::uint64_t attempts = 0, hash = 0;
    for (std::size_t k = 0; k < todo.size(); ++k) {
      ++attempts;
      const ObjectId id = todo[k];
      if (verdict[k] == kNoWitness) {
        ready.push_back(id - 1);
        s.finals.emplace_back(id, res.dp[id - 1]);
      } else {
        s.fresh.emplace_back(verdict[k], id);
        hash += hash_combine(id, verdict[k]) >> 24;
      }
    }
    tr.bump("attempts", static_cast<std::int64_t>(attempts));
    tr.bump("new_pivots", static_cast<std::int64_t>(s.fresh.size()));
    tr.bump("pivot_hash", static_cast<std::int64_t>(hash & ((std::uint64_t{1} << 62) - 1)));
    return ready;
  };
  prob.process = [&](std::size_t, std::span<const ObjectId> frontier, ChainState& s, PhaseTrace&) {
    s.index.finalize_batch(s.finals);
    s.pivots.multi_insert(std::move(s.fresh));
    s.fresh = {};
    s.prev.resize(frontier.size());
    for (std::size_t k = 0; k < frontier.size(); ++k) {
      s.done[frontier[k]] = 1;
      s.prev[k] = frontier[k] + 1;
    }
  };

  // Objects whose pivot was just finalized are exactly the todo list of the
  // next round, so Type 2 needs nothing beyond this loop.
  PhaseTrace trace = run_phases(prob, st);
  for (std::size_t i = 0; i < n; ++i) {
    res.best = std::max(res.best, res.dp[i]);
    res.length = std::max(res.length, res.rank[i]);
  }
  res.rounds = trace.round_count();
  return {std::move(res), std::move(trace)};
}

std::vector<std::uint32_t> reconstruct_lis(const LisResult& r) {
  std::vector<std::uint32_t> out;
  std::size_t at = r.dp.size();
  for (std::size_t i = r.dp.size(); i-- > 0;) {
    if (r.dp[i] == r.best) {
      at = i;
      break;
    }
  }
  if (at == r.dp.size()) return out;
  for (std::uint32_t i = static_cast<std::uint32_t>(at); i != kNoPred; i = r.pred[i]) out.push_back(i);
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<std::uint32_t> moles_to_chain(std::span<const Mole> moles,
                                          std::vector<std::uint32_t>* order) {
  const std::size_t n = moles.size();
  std::vector<std::int64_t> u(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = moles[i].t + moles[i].p;
    v[i] = moles[i].t - moles[i].p;
  }
  std::vector<std::uint32_t> by_u(n), by_v(n);
  std::iota(by_u.begin(), by_u.end(), 0u);
  std::iota(by_v.begin(), by_v.end(), 0u);
  // Lexicographic (u, v, index) and (v, u, index) turn the non-strict
  // dominance u_j <= u_i, v_j <= v_i into a strict one on distinct ranks.
  std::sort(by_u.begin(), by_u.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::tie(u[a], v[a], a) < std::tie(u[b], v[b], b);
  });
  std::sort(by_v.begin(), by_v.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::tie(v[a], u[a], a) < std::tie(v[b], u[b], b);
  });
  std::vector<std::uint32_t> yrank(n);
  for (std::uint32_t r = 0; r < n; ++r) yrank[by_v[r]] = r;
  std::vector<std::uint32_t> y(n);
  for (std::size_t x = 0; x < n; ++x) y[x] = yrank[by_u[x]];
  if (order) *order = std::move(by_u);
  return y;
}

std::uint32_t seq_moles(std::span<const Mole> moles) {
  const auto y = moles_to_chain(moles);
  return seq_dominance_chain(y).length;
}

std::pair<std::uint32_t, PhaseTrace> par_moles(std::span<const Mole> moles, const LisOptions& opt) {
  const auto y = moles_to_chain(moles);
  auto [r, trace] = par_dominance_chain(y, {}, opt);
  trace.tag = "moles";
  return {r.length, std::move(trace)};
}

std::uint64_t pivot_chain_length(std::uint64_t n, std::uint64_t seed, std::uint64_t trial) {
  const CounterRng rng(seed, trial);
  std::uint64_t x = 1, k = 0;
  while (x < n) {
    x += rng.uniform_int(k, n - x + 1);
    ++k;
  }
  return k;
}

double pivot_chain_expectation(std::uint64_t n) {
  if (n <= 1) return 0.0;
  double h = 0.0;
  for (std::uint64_t k = n - 1; k >= 1; --k) h += 1.0 / static_cast<double>(k);
  return 1.0 + h;
}

}  // namespace phaselib
