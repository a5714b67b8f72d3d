// phasebench: run a phase-parallel algorithm on a file or a generated input,
// optionally check it against the sequential version, and print one CSV row.
//
// Exit codes: 0 ok, 1 usage, 2 bad input, 3 verification failure.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "phaselib/activity.hpp"
#include "phaselib/error.hpp"
#include "phaselib/gen.hpp"
#include "phaselib/huffman.hpp"
#include "phaselib/io.hpp"
#include "phaselib/knapsack.hpp"
#include "phaselib/lis.hpp"
#include "phaselib/mis.hpp"
#include "phaselib/parallel.hpp"
#include "phaselib/random.hpp"
#include "phaselib/sssp.hpp"

namespace {

using namespace phaselib;

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitVerify = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// family:key=value,key=value
struct GenSpec {
  std::string family;
  std::map<std::string, std::string> params;
  mutable std::map<std::string, bool> used;

  static GenSpec parse(const std::string& text) {
    GenSpec g;
    const auto colon = text.find(':');
    g.family = text.substr(0, colon);
    if (g.family.empty()) throw UsageError("--gen: missing family in '" + text + "'");
    if (colon == std::string::npos) return g;
    std::stringstream rest(text.substr(colon + 1));
    std::string kv;
    while (std::getline(rest, kv, ',')) {
      if (kv.empty()) continue;
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw UsageError("--gen: expected key=value, got '" + kv + "'");
      g.params[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    return g;
  }

  std::string text() const {
    std::string s = family;
    char sep = ':';
    for (const auto& [k, v] : params) {
      s += sep + k + "=" + v;
      sep = ',';
    }
    return s;
  }

  double num(const std::string& key, double fallback) const {
    used[key] = true;
    const auto it = params.find(key);
    if (it == params.end()) return fallback;
    try {
      std::size_t pos = 0;
      const double v = std::stod(it->second, &pos);
      if (pos != it->second.size() || !std::isfinite(v)) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw UsageError("--gen: " + key + "=" + it->second + " is not a number");
    }
  }

  std::int64_t integer(const std::string& key, std::int64_t fallback, std::int64_t lo = 0) const {
    const double v = num(key, static_cast<double>(fallback));
    if (v != std::floor(v) || v < static_cast<double>(lo) || v > 9.0e15)
      throw UsageError("--gen: " + key + " must be an integer >= " + std::to_string(lo));
    return static_cast<std::int64_t>(v);
  }

  std::string str(const std::string& key, const std::string& fallback) const {
    used[key] = true;
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }

  void expect_family(std::initializer_list<const char*> allowed) const {
    for (const char* a : allowed)
      if (family == a) return;
    std::string list;
    for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
    throw UsageError("--gen: family '" + family + "' does not fit; expected one of " + list);
  }

  void reject_unused() const {
    for (const auto& [k, v] : params)
      if (!used.count(k)) throw UsageError("--gen: unknown parameter '" + k + "' for family " + family);
  }
};

struct Options {
  std::string algo;
  std::string in;
  std::string gen;
  std::uint64_t seed = 1;
  int threads = 1;
  int repeats = 5;
  bool verify = false;
  std::string out = "csv";
  std::optional<std::int64_t> capacity;
  std::uint32_t src = 0;
  std::string format = "text";
  std::string policy = "uniform";
  bool inject_fault = false;
};

// One output row. Unset optionals print as NA.
struct BenchRecord {
  std::string algo;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  int threads = 1;
  std::optional<std::uint64_t> input_rank;
  std::optional<std::uint64_t> rounds;
  double time_ms = 0;
  std::optional<double> wakeup_mean;
  std::optional<std::uint64_t> wakeup_max;
  std::optional<std::uint64_t> tas_attempts;
  std::optional<std::uint64_t> relaxations;
  std::uint64_t checksum = 0;
  std::optional<bool> oracle_ok;
  std::string result;
  std::string diagnostic;
};

const std::vector<std::string> kColumns = {"algo", "n", "seed", "threads", "input_rank", "rounds",
                                           "time_ms", "wakeup_mean", "wakeup_max", "tas_attempts",
                                           "relaxations", "checksum", "oracle_ok", "result"};

template <class T>
std::string opt_str(const std::optional<T>& v) {
  if (!v) return "NA";
  std::ostringstream os;
  if constexpr (std::is_same_v<T, bool>) os << (*v ? 1 : 0);
  else os << *v;
  return os.str();
}

std::vector<std::string> cells(const BenchRecord& r) {
  std::ostringstream t, c, w;
  t << std::fixed << std::setprecision(3) << r.time_ms;
  c << std::hex << std::setw(16) << std::setfill('0') << r.checksum;
  if (r.wakeup_mean) w << std::fixed << std::setprecision(4) << *r.wakeup_mean;
  return {r.algo, std::to_string(r.n), std::to_string(r.seed), std::to_string(r.threads),
          opt_str(r.input_rank), opt_str(r.rounds), t.str(), r.wakeup_mean ? w.str() : "NA",
          opt_str(r.wakeup_max), opt_str(r.tas_attempts), opt_str(r.relaxations), c.str(),
          opt_str(r.oracle_ok), r.result.empty() ? "NA" : r.result};
}

void print_row(std::ostream& os, const std::vector<std::string>& row, char sep) {
  for (std::size_t i = 0; i < row.size(); ++i) os << (i ? std::string(1, sep) : "") << row[i];
  os << '\n';
}

// Order-independent: a wrapping sum of per-element hashes.
struct Checksum {
  std::uint64_t value = 0;
  void add(std::uint64_t index, std::uint64_t payload) { value += hash_combine(index, payload); }
  void add_double(std::uint64_t index, double payload) { add(index, std::bit_cast<std::uint64_t>(payload)); }
};

template <class F>
double median_ms(int repeats, F&& run) {
  run();  // warm-up
  std::vector<double> t;
  for (int r = 0; r < std::max(1, repeats); ++r) {
    const auto a = std::chrono::steady_clock::now();
    run();
    const auto b = std::chrono::steady_clock::now();
    t.push_back(std::chrono::duration<double, std::milli>(b - a).count());
  }
  std::sort(t.begin(), t.end());
  const std::size_t m = t.size();
  return m % 2 ? t[m / 2] : (t[m / 2 - 1] + t[m / 2]) / 2;
}

template <class T>
std::string show(const T& v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

// Fills oracle_ok and, on mismatch, the diagnostic for the first divergent index.
template <class Got, class Want>
void compare(BenchRecord& rec, const std::string& what, const Got& got, const Want& want) {
  if (got.size() != want.size()) {
    rec.oracle_ok = false;
    rec.diagnostic = what + ": size " + std::to_string(got.size()) + " vs oracle " + std::to_string(want.size());
    return;
  }
  for (std::size_t i = 0; i < got.size(); ++i) {
    if (!(got[i] == want[i])) {
      rec.oracle_ok = false;
      rec.diagnostic = "first divergent element: " + what + "[" + std::to_string(i) + "] = " + show(got[i]) +
                       ", oracle " + show(want[i]);
      return;
    }
  }
  if (!rec.oracle_ok) rec.oracle_ok = true;
}

GenSpec require_gen(const Options& o) {
  if (o.in.empty() == o.gen.empty()) throw UsageError("exactly one of --in or --gen is required");
  return o.gen.empty() ? GenSpec{} : GenSpec::parse(o.gen);
}

std::vector<Activity> load_activities(const Options& o) {
  const GenSpec g = require_gen(o);
  std::vector<Activity> acts;
  if (!o.in.empty()) {
    auto f = open_input(o.in);
    acts = read_activities(f);
  } else {
    g.expect_family({"activities"});
    const auto n = static_cast<std::size_t>(g.integer("n", 1000, 0));
    const double b = g.num("b", 1), sigma = g.num("sigma", 1), horizon = g.num("horizon", -1);
    g.reject_unused();
    if (!(b > 0) || sigma < 0) throw UsageError("--gen activities: need b > 0 and sigma >= 0");
    acts = gen_activities(n, b, sigma, o.seed, horizon);
  }
  return sort_by_end(acts);
}

std::vector<double> load_values(const Options& o) {
  const GenSpec g = require_gen(o);
  if (!o.in.empty()) {
    auto f = open_input(o.in);
    return read_values(f);
  }
  g.expect_family({"segments", "line"});
  const auto n = static_cast<std::size_t>(g.integer("n", 1000, 0));
  if (g.family == "segments") {
    const auto k = static_cast<std::size_t>(g.integer("k", 10, 1));
    const double noise = g.num("noise", 0.25);
    const auto gap = g.integer("gap", 1000, 1);
    g.reject_unused();
    if (k > std::max<std::size_t>(n, 1) || noise < 0 || noise > 1)
      throw UsageError("--gen segments: need 1 <= k <= n and noise in [0, 1]");
    const auto v = gen_lis_segments(n, k, noise, o.seed, gap);
    return {v.begin(), v.end()};
  }
  const double t = g.num("t", 1), w = g.num("w", 100);
  const bool discrete = g.integer("discrete", 0, 0) != 0;
  g.reject_unused();
  if (t < 0 || w < 0) throw UsageError("--gen line: need t >= 0 and w >= 0");
  return gen_lis_line(n, t, w, o.seed, discrete);
}

std::vector<Mole> load_moles(const Options& o) {
  const GenSpec g = require_gen(o);
  if (!o.in.empty()) {
    auto f = open_input(o.in);
    return read_moles(f);
  }
  g.expect_family({"moles"});
  const auto n = g.integer("n", 1000, 0);
  const auto horizon = g.integer("horizon", std::max<std::int64_t>(n, 1), 1);
  const auto span = g.integer("span", 100, 1);
  g.reject_unused();
  return gen_moles(static_cast<std::size_t>(n), horizon, span, o.seed);
}

std::vector<Item> load_items(const Options& o, std::int64_t& capacity) {
  const GenSpec g = require_gen(o);
  std::optional<std::int64_t> cap = o.capacity;
  std::vector<Item> items;
  if (!o.in.empty()) {
    auto f = open_input(o.in);
    items = read_items(f);
  } else {
    g.expect_family({"items"});
    const auto n = static_cast<std::size_t>(g.integer("n", 100, 0));
    const auto wmin = g.integer("wmin", 1, 1), wmax = g.integer("wmax", 100, 1);
    const auto vmax = g.integer("vmax", 1000, 0);
    if (g.params.count("cap") && !cap) cap = g.integer("cap", 0, 0);
    g.used["cap"] = true;
    g.reject_unused();
    if (wmin > wmax) throw UsageError("--gen items: need wmin <= wmax");
    items = gen_items(n, wmin, wmax, vmax, o.seed);
  }
  if (!cap) throw UsageError("knapsack needs --capacity (or cap= in --gen)");
  if (*cap < 0) throw UsageError("--capacity must be non-negative");
  capacity = *cap;
  return items;
}

std::vector<std::uint64_t> load_freqs(const Options& o) {
  const GenSpec g = require_gen(o);
  if (!o.in.empty()) {
    auto f = open_input(o.in);
    return read_freqs(f);
  }
  g.expect_family({"freqs"});
  const auto n = static_cast<std::size_t>(g.integer("n", 1000, 1));
  const std::string dist = g.str("dist", "uniform");
  const auto maxf = g.integer("maxf", 1000, 1);
  g.reject_unused();
  if (maxf >= (std::int64_t{1} << 32)) throw UsageError("--gen freqs: maxf must be below 2^32");
  try {
    return gen_freqs(n, parse_freq_dist(dist), static_cast<std::uint64_t>(maxf), o.seed);
  } catch (const Error& e) {
    throw UsageError(std::string("--gen freqs: ") + e.what());
  }
}

struct GraphParams {
  std::size_t n;
  double deg;
  std::uint32_t wmin, wmax;
};

GraphParams graph_params(const GenSpec& g) {
  g.expect_family({"graph"});
  GraphParams p{static_cast<std::size_t>(g.integer("n", 1000, 0)), g.num("deg", 5),
                static_cast<std::uint32_t>(g.integer("wmin", 1, 1)), static_cast<std::uint32_t>(g.integer("wmax", 100, 1))};
  g.reject_unused();
  if (p.wmin > p.wmax || p.deg < 0) throw UsageError("--gen graph: need wmin <= wmax and deg >= 0");
  return p;
}

WeightedGraph load_weighted(const Options& o) {
  const GenSpec g = require_gen(o);
  if (!o.in.empty()) {
    auto f = open_input(o.in);
    return o.format == "binary" ? read_csr_binary(f) : read_weighted_graph(f);
  }
  const auto p = graph_params(g);
  return gen_weighted_graph(p.n, p.deg, p.wmin, p.wmax, o.seed);
}

UndirectedGraph load_undirected(const Options& o) {
  const GenSpec g = require_gen(o);
  if (!o.in.empty()) {
    auto f = open_input(o.in);
    if (o.format == "binary") {
      const WeightedGraph w = read_csr_binary(f);
      std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
      for (std::size_t u = 0; u < w.n; ++u)
        for (auto e = w.offsets[u]; e < w.offsets[u + 1]; ++e)
          if (w.targets[e] != u) edges.push_back({static_cast<std::uint32_t>(u), w.targets[e]});
      return UndirectedGraph::from_edges(w.n, edges);
    }
    return read_undirected_graph(f);
  }
  const auto p = graph_params(g);
  return gen_undirected_graph(p.n, p.deg, o.seed);
}

BenchRecord base_record(const Options& o, std::size_t n) {
  BenchRecord r;
  r.algo = o.algo;
  r.n = n;
  r.seed = o.seed;
  r.threads = o.threads;
  return r;
}

BenchRecord bench_activity(const Options& o) {
  const auto acts = load_activities(o);
  BenchRecord rec = base_record(o, acts.size());
  const ActivityResult oracle = seq_activity_dp(acts);
  rec.input_rank = oracle.rounds;
  ActivityResult got;
  PhaseTrace trace;
  if (o.algo == "activity-unweighted") {
    rec.time_ms = median_ms(o.repeats, [&] { got.rank = unweighted_activity_rank(acts); });
    std::uint32_t deepest = 0;
    for (auto r : got.rank) deepest = std::max(deepest, r);
    got.rounds = deepest;
    if (o.inject_fault && !got.rank.empty()) got.rank[got.rank.size() / 2] += 1;
    for (std::size_t i = 0; i < got.rank.size(); ++i) rec.checksum += hash_combine(i, got.rank[i]);
    rec.result = "max_set=" + std::to_string(deepest);
    if (o.verify) compare(rec, "rank", got.rank, oracle.rank);
  } else {
    const bool type1 = o.algo == "activity1";
    rec.time_ms = median_ms(o.repeats, [&] {
      std::tie(got, trace) = type1 ? type1_activity(acts) : type2_activity(acts);
    });
    if (o.inject_fault && !got.dp.empty()) got.dp[got.dp.size() / 2] += 1;
    Checksum c;
    for (std::size_t i = 0; i < got.dp.size(); ++i) c.add_double(i, got.dp[i]);
    rec.checksum = c.value;
    rec.result = "best=" + show(got.best);
    if (!type1) {
      const auto w = trace.totals.count("wakeups") ? trace.totals.at("wakeups") : 0;
      rec.wakeup_mean = acts.empty() ? 0.0 : static_cast<double>(w) / static_cast<double>(acts.size());
      rec.wakeup_max = acts.empty() ? 0 : 1;
    }
    if (o.verify) {
      compare(rec, "dp", got.dp, oracle.dp);
      if (rec.oracle_ok.value_or(false)) compare(rec, "rank", got.rank, oracle.rank);
    }
  }
  rec.rounds = got.rounds;
  return rec;
}

BenchRecord bench_knapsack(const Options& o) {
  std::int64_t capacity = 0;
  const auto items = load_items(o, capacity);
  BenchRecord rec = base_record(o, items.size());
  const std::int64_t wstar = min_item_weight(capacity, items);
  rec.input_rank = static_cast<std::uint64_t>(capacity / wstar + 1);
  KnapsackResult got;
  PhaseTrace trace;
  rec.time_ms = median_ms(o.repeats, [&] { std::tie(got, trace) = phase_knapsack(capacity, items); });
  if (o.inject_fault) got.dp[got.dp.size() / 2] += 1;
  for (std::size_t j = 0; j < got.dp.size(); ++j) rec.checksum += hash_combine(j, static_cast<std::uint64_t>(got.dp[j]));
  rec.rounds = got.rounds;
  rec.result = "best=" + std::to_string(got.best());
  if (o.verify) compare(rec, "dp", got.dp, seq_knapsack(capacity, items).dp);
  return rec;
}

BenchRecord bench_huffman(const Options& o) {
  const auto freqs = load_freqs(o);
  BenchRecord rec = base_record(o, freqs.size());
  HuffmanTree got;
  PhaseTrace trace;
  rec.time_ms = median_ms(o.repeats, [&] { std::tie(got, trace) = phase_huffman(freqs); });
  auto depth = got.depths();
  std::uint64_t wpl = got.wpl;
  if (o.inject_fault && !depth.empty()) {
    depth[depth.size() / 2] += 1;
    wpl += got.freq[depth.size() / 2];
  }
  for (std::size_t i = 0; i < depth.size(); ++i) rec.checksum += hash_combine(i, depth[i]);
  rec.checksum += hash_combine(~std::uint64_t{0}, wpl);
  rec.rounds = trace.round_count();
  rec.input_rank = got.height;
  rec.result = "H=" + std::to_string(got.height) + ";wpl=" + std::to_string(wpl);
  if (o.verify) {
    const HuffmanTree want = seq_huffman(freqs);
    std::uint64_t recomputed = 0;
    for (std::size_t i = 0; i < depth.size(); ++i) recomputed += got.freq[i] * depth[i];
    rec.oracle_ok = wpl == want.wpl && recomputed == wpl && got.freq[got.root] == want.freq[want.root];
    if (!*rec.oracle_ok)
      rec.diagnostic = "weighted path length " + std::to_string(wpl) + " (from depths " + std::to_string(recomputed) +
                       "), oracle " + std::to_string(want.wpl);
  }
  return rec;
}

BenchRecord bench_sssp(const Options& o) {
  const auto g = load_weighted(o);
  if (o.src >= g.n) throw Error(Errc::invalid_input, "--src " + std::to_string(o.src) + " is not a vertex");
  BenchRecord rec = base_record(o, g.n);
  SsspResult got;
  PhaseTrace trace;
  rec.time_ms = median_ms(o.repeats, [&] { std::tie(got, trace) = windowed_sssp(g, o.src); });
  double far = 0;
  for (double d : got.dist)
    if (d != kUnreachable) far = std::max(far, d);
  if (g.edge_count() > 0) rec.input_rank = static_cast<std::uint64_t>(std::ceil(far / g.min_weight())) + 1;
  if (o.inject_fault && g.n > 1) got.dist[g.n / 2] = got.dist[g.n / 2] == kUnreachable ? 0.5 : got.dist[g.n / 2] + 1;
  Checksum c;
  for (std::size_t v = 0; v < got.dist.size(); ++v) c.add_double(v, got.dist[v]);
  rec.checksum = c.value;
  rec.rounds = got.rounds;
  rec.relaxations = got.relaxations;
  rec.result = "max_dist=" + show(far);
  if (o.verify) compare(rec, "dist", got.dist, seq_dijkstra(g, o.src).dist);
  return rec;
}

WitnessPolicy parse_policy(const std::string& p) {
  if (p == "uniform") return WitnessPolicy::uniform;
  if (p == "rightmost") return WitnessPolicy::rightmost;
  throw UsageError("--policy must be uniform or rightmost");
}

void wakeup_stats(BenchRecord& rec, const std::vector<std::uint32_t>& w) {
  std::uint64_t sum = 0, top = 0;
  for (auto x : w) {
    sum += x;
    top = std::max<std::uint64_t>(top, x);
  }
  rec.wakeup_mean = w.empty() ? 0.0 : static_cast<double>(sum) / static_cast<double>(w.size());
  rec.wakeup_max = top;
}

BenchRecord bench_lis(const Options& o) {
  const auto values = load_values(o);
  BenchRecord rec = base_record(o, values.size());
  const LisOptions lo{o.seed, parse_policy(o.policy)};
  const std::span<const double> a(values);
  LisResult got;
  PhaseTrace trace;
  rec.time_ms = median_ms(o.repeats, [&] { std::tie(got, trace) = par_lis(a, lo); });
  if (o.inject_fault && !got.dp.empty()) got.dp[got.dp.size() / 2] += 1;
  Checksum c;
  for (std::size_t i = 0; i < got.dp.size(); ++i) c.add(i, static_cast<std::uint64_t>(got.dp[i]));
  c.add(~std::uint64_t{0}, static_cast<std::uint64_t>(trace.totals.count("pivot_hash") ? trace.totals.at("pivot_hash") : 0));
  rec.checksum = c.value;
  rec.rounds = got.rounds;
  wakeup_stats(rec, got.wakeups);
  rec.result = "length=" + std::to_string(got.length);
  const LisResult want = seq_lis(a);
  rec.input_rank = want.length;
  if (o.verify) compare(rec, "dp", got.dp, want.dp);
  return rec;
}

BenchRecord bench_moles(const Options& o) {
  const auto moles = load_moles(o);
  BenchRecord rec = base_record(o, moles.size());
  const LisOptions lo{o.seed, parse_policy(o.policy)};
  LisResult got;
  PhaseTrace trace;
  rec.time_ms = median_ms(o.repeats, [&] {
    const auto y = moles_to_chain(moles);
    std::tie(got, trace) = par_dominance_chain(y, {}, lo);
  });
  if (o.inject_fault && !got.rank.empty()) {
    got.rank[got.rank.size() / 2] += 1;
    got.length = std::max(got.length, got.rank[got.rank.size() / 2]);
  }
  for (std::size_t i = 0; i < got.rank.size(); ++i) rec.checksum += hash_combine(i, got.rank[i]);
  rec.rounds = got.rounds;
  wakeup_stats(rec, got.wakeups);
  rec.result = "moles=" + std::to_string(got.length);
  const LisResult want = seq_dominance_chain(moles_to_chain(moles));
  rec.input_rank = want.length;
  if (o.verify) compare(rec, "rank", got.rank, want.rank);
  return rec;
}

BenchRecord bench_mis(const Options& o) {
  const auto g = load_undirected(o);
  BenchRecord rec = base_record(o, g.n);
  const auto prio = assign_random_priorities(g.n, o.seed);
  MisResult got;
  rec.time_ms = median_ms(o.repeats, [&] { got = par_greedy_mis(g, prio); });
  if (o.inject_fault && g.n > 0) {
    auto& s = got.status[g.n / 2];
    s = s == MisStatus::selected ? MisStatus::removed : MisStatus::selected;
  }
  for (std::size_t v = 0; v < got.status.size(); ++v) rec.checksum += hash_combine(v, static_cast<std::uint64_t>(got.status[v]));
  const auto rank = mis_rank(g, prio);
  std::uint32_t deepest = 0;
  for (auto r : rank) deepest = std::max(deepest, r);
  rec.input_rank = deepest;
  rec.tas_attempts = got.counters.tas_attempts;
  std::uint64_t wakes = 0;
  for (auto w : got.wake_count) wakes += w;
  rec.wakeup_mean = g.n ? static_cast<double>(wakes) / static_cast<double>(g.n) : 0.0;
  rec.wakeup_max = got.counters.max_wakes;
  rec.result = "selected=" + std::to_string(got.selected().size());
  if (o.verify) {
    std::vector<int> gs(got.status.size()), ws(got.status.size());
    const MisResult want = seq_greedy_mis(g, prio);
    for (std::size_t v = 0; v < gs.size(); ++v) {
      gs[v] = static_cast<int>(got.status[v]);
      ws[v] = static_cast<int>(want.status[v]);
    }
    compare(rec, "status", gs, ws);
    if (rec.oracle_ok.value_or(false) && !(is_independent(g, got.status) && is_maximal(g, got.status))) {
      rec.oracle_ok = false;
      rec.diagnostic = "selected set is not a maximal independent set";
    }
  }
  return rec;
}

const std::map<std::string, std::function<BenchRecord(const Options&)>>& algorithms() {
  static const std::map<std::string, std::function<BenchRecord(const Options&)>> table = {
      {"activity1", bench_activity}, {"activity2", bench_activity}, {"activity-unweighted", bench_activity},
      {"knapsack", bench_knapsack},  {"huffman", bench_huffman},    {"sssp", bench_sssp},
      {"lis", bench_lis},            {"moles", bench_moles},        {"mis", bench_mis},
  };
  return table;
}

BenchRecord run_one(const Options& o) {
  return with_threads(o.threads, [&] { return algorithms().at(o.algo)(o); });
}

char separator(const Options& o) {
  if (o.out == "csv") return ',';
  if (o.out == "tsv") return '\t';
  throw UsageError("--out must be csv or tsv");
}

int emit(const Options& o, const std::vector<BenchRecord>& recs, const std::vector<std::string>& extra_cols,
         const std::vector<std::vector<std::string>>& extra) {
  const char sep = separator(o);
  std::cout << "# phaselib-bench v1\n";
  auto header = kColumns;
  header.insert(header.end(), extra_cols.begin(), extra_cols.end());
  print_row(std::cout, header, sep);
  bool failed = false;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    auto row = cells(recs[i]);
    if (i < extra.size()) row.insert(row.end(), extra[i].begin(), extra[i].end());
    print_row(std::cout, row, sep);
    if (recs[i].oracle_ok && !*recs[i].oracle_ok) {
      failed = true;
      std::cerr << "phasebench: verification failed for " << recs[i].algo << ": " << recs[i].diagnostic << '\n';
    }
  }
  return failed ? kExitVerify : 0;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--in", o.in, "Input file");
  sub->add_option("--gen", o.gen, "Generated input, e.g. segments:n=1000,k=10");
  sub->add_option("--seed", o.seed, "Seed for generators and randomized choices");
  sub->add_option("--threads", o.threads, "Worker threads (default: PHASELIB_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--repeats", o.repeats, "Timed runs after one warm-up; the median is reported")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--verify", o.verify, "Compare against the sequential algorithm");
  sub->add_option("--out", o.out, "Row format")->check(CLI::IsMember({"csv", "tsv"}));
  sub->add_option("--format", o.format, "Graph file format")->check(CLI::IsMember({"text", "binary"}));
  sub->add_option("--capacity", o.capacity, "Knapsack capacity");
  sub->add_option("--src", o.src, "SSSP source vertex");
  sub->add_option("--policy", o.policy, "LIS pivot policy")->check(CLI::IsMember({"uniform", "rightmost"}));
  sub->add_flag("--inject-fault", o.inject_fault)->group("");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int run_sweep(Options o, const std::string& vary, const std::string& thread_list) {
  if (o.gen.empty()) throw UsageError("sweep needs --gen");
  if (!algorithms().count(o.algo)) throw UsageError("sweep: unknown algorithm '" + o.algo + "'");
  // Without --vary the sweep is a single point over the thread list.
  std::string key = "NA";
  std::vector<std::string> values{"NA"};
  if (!vary.empty()) {
    const auto eq = vary.find('=');
    if (eq == std::string::npos) throw UsageError("--vary expects key=v1,v2,...");
    key = vary.substr(0, eq);
    values = split_list(vary.substr(eq + 1));
    if (values.empty()) throw UsageError("--vary lists no values");
  }
  std::vector<int> threads;
  for (const auto& t : split_list(thread_list)) {
    try {
      threads.push_back(std::stoi(t));
    } catch (const std::exception&) {
      throw UsageError("--threads-list: bad entry '" + t + "'");
    }
    if (threads.back() < 1) throw UsageError("--threads-list entries must be positive");
  }
  if (threads.empty()) threads.push_back(o.threads);

  GenSpec base = GenSpec::parse(o.gen);
  std::vector<BenchRecord> recs;
  std::vector<std::vector<std::string>> extra;
  for (const auto& v : values) {
    if (!vary.empty()) base.params[key] = v;
    Options point = o;
    point.gen = base.text();
    point.threads = 1;
    const BenchRecord baseline = run_one(point);
    for (int t : threads) {
      point.threads = t;
      BenchRecord r = t == 1 ? baseline : run_one(point);
      std::ostringstream b, s;
      b << std::fixed << std::setprecision(3) << baseline.time_ms;
      s << std::fixed << std::setprecision(3) << (r.time_ms > 0 ? baseline.time_ms / r.time_ms : 0.0);
      extra.push_back({key, v, b.str(), s.str()});
      recs.push_back(std::move(r));
    }
  }
  return emit(o, recs, {"param", "value", "baseline_ms", "speedup"}, extra);
}

int run_gen(const Options& o, const std::string& path, bool undirected) {
  if (o.gen.empty()) throw UsageError("gen needs --gen");
  const GenSpec g = GenSpec::parse(o.gen);
  std::ofstream file;
  if (!path.empty()) {
    file.open(path, std::ios::binary);
    if (!file) throw Error(Errc::parse, "cannot write '" + path + "'");
  }
  std::ostream& out = path.empty() ? std::cout : file;
  Options q = o;
  q.in.clear();
  if (g.family == "activities") {
    const auto n = static_cast<std::size_t>(g.integer("n", 1000, 0));
    const double b = g.num("b", 1), sigma = g.num("sigma", 1), horizon = g.num("horizon", -1);
    g.reject_unused();
    write_activities(out, gen_activities(n, b, sigma, o.seed, horizon));
  } else if (g.family == "segments" || g.family == "line") {
    write_values(out, load_values(q));
  } else if (g.family == "moles") {
    write_moles(out, load_moles(q));
  } else if (g.family == "items") {
    std::int64_t cap = 0;
    if (!q.capacity) q.capacity = 0;
    write_items(out, load_items(q, cap));
  } else if (g.family == "freqs") {
    write_freqs(out, load_freqs(q));
  } else if (g.family == "graph") {
    if (undirected) {
      write_undirected_graph(out, load_undirected(q));
    } else {
      const auto w = load_weighted(q);
      if (o.format == "binary") write_csr_binary(out, w);
      else write_weighted_graph(out, w);
    }
  } else {
    throw UsageError("gen: unknown family '" + g.family +
                     "' (activities, segments, line, moles, items, freqs, graph)");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phasebench: phase-parallel algorithm benchmarks"};
  app.require_subcommand(1);
  Options o;
  o.threads = default_threads();

  const std::map<std::string, std::string> help = {
      {"activity1", "weighted activity selection, range-split frontier"},
      {"activity2", "weighted activity selection, pivot wake-ups"},
      {"activity-unweighted", "unweighted activity selection by pivot depth"},
      {"knapsack", "unbounded knapsack (needs --capacity)"},
      {"huffman", "Huffman tree; reports H and WPL"},
      {"sssp", "windowed shortest paths"},
      {"lis", "longest increasing subsequence"},
      {"moles", "whac-a-mole"},
      {"mis", "greedy maximal independent set"},
  };
  for (const auto& [name, text] : help) {
    auto* sub = app.add_subcommand(name, text);
    add_common(sub, o);
    sub->final_callback([&o, name = name] { o.algo = name; });
  }

  std::string vary, thread_list, out_path;
  bool undirected = false;
  auto* sweep = app.add_subcommand("sweep", "run one algorithm over a parameter range");
  sweep->add_option("algo", o.algo, "Algorithm")->required();
  add_common(sweep, o);
  sweep->add_option("--vary", vary, "Generator parameter and values, e.g. sigma=1,10,100");
  sweep->add_option("--threads-list", thread_list, "Thread counts, e.g. 1,2,4");

  auto* gen = app.add_subcommand("gen", "write a generated input");
  gen->add_option("--gen", o.gen, "Generator spec")->required();
  gen->add_option("--seed", o.seed, "Seed");
  gen->add_option("--format", o.format, "Graph format")->check(CLI::IsMember({"text", "binary"}));
  gen->add_option("-o,--output", out_path, "Output file (default stdout)");
  gen->add_flag("--undirected", undirected, "Write an undirected graph");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (gen->parsed()) return run_gen(o, out_path, undirected);
    if (sweep->parsed()) return run_sweep(o, vary, thread_list);
    separator(o);
    return emit(o, {run_one(o)}, {}, {});
  } catch (const UsageError& e) {
    std::cerr << "phasebench: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "phasebench: " << errc_name(e.code()) << ": " << e.what() << '\n';
    return e.code() == Errc::verification ? kExitVerify : kExitInput;
  }
}
