#include "phaselib/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <string_view>

#include "phaselib/error.hpp"

namespace phaselib {

namespace {

[[noreturn]] void bad_line(std::size_t line, const std::string& what) {
  fail(Errc::parse, "line " + std::to_string(line) + ": " + what);
}

// Splits the next meaningful line into whitespace-separated fields.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next() {
    while (std::getline(in_, text_)) {
      ++line_;
      fields_.clear();
      std::string_view s(text_);
      std::size_t i = 0;
      while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r' || s[i] == ',')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r' && s[j] != ',') ++j;
        if (j > i) fields_.push_back(s.substr(i, j - i));
        i = j;
      }
      if (fields_.empty() || fields_[0].front() == '#') continue;
      return true;
    }
    return false;
  }

  std::size_t line() const noexcept { return line_; }
  std::size_t size() const noexcept { return fields_.size(); }

  void expect(std::size_t lo, std::size_t hi) const {
    if (fields_.size() < lo || fields_.size() > hi)
      bad_line(line_, "expected " + (lo == hi ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi)) +
                          " fields, found " + std::to_string(fields_.size()));
  }

  double real(std::size_t k) const {
    double v = 0;
    const auto f = fields_[k];
    const auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec != std::errc() || p != f.data() + f.size() || !std::isfinite(v))
      bad_line(line_, "not a finite number: '" + std::string(f) + "'");
    return v;
  }

  template <class T>
  T integer(std::size_t k) const {
    T v{};
    auto f = fields_[k];
    if (!f.empty() && f.front() == '+') f.remove_prefix(1);
    const auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec != std::errc() || p != f.data() + f.size())
      bad_line(line_, "not an integer in range: '" + std::string(fields_[k]) + "'");
    return v;
  }

 private:
  std::istream& in_;
  std::string text_;
  std::vector<std::string_view> fields_;
  std::size_t line_ = 0;
};

template <class T>
void put_raw(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get_raw(std::istream& in, const char* what) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v))
    fail(Errc::parse, std::string("csr binary: truncated while reading ") + what);
  return v;
}

struct RawGraph {
  std::size_t n = 0;
  bool fixed_n = false;
  std::vector<Edge> edges;
};

RawGraph read_edge_list(std::istream& in, bool weighted) {
  LineReader r(in);
  RawGraph g;
  std::uint64_t top = 0;
  bool first = true;
  while (r.next()) {
    if (first && r.size() == 1) {
      g.n = r.integer<std::uint32_t>(0);
      g.fixed_n = true;
      first = false;
      continue;
    }
    first = false;
    if (weighted) r.expect(3, 3);
    else r.expect(2, 3);
    Edge e{r.integer<std::uint32_t>(0), r.integer<std::uint32_t>(1), weighted ? r.real(2) : 1.0};
    if (weighted && !(e.weight > 0)) bad_line(r.line(), "edge weight must be positive");
    if (g.fixed_n && (e.from >= g.n || e.to >= g.n)) bad_line(r.line(), "vertex id not below n");
    top = std::max<std::uint64_t>(top, std::max(e.from, e.to) + std::uint64_t{1});
    g.edges.push_back(e);
  }
  if (!g.fixed_n) g.n = static_cast<std::size_t>(top);
  return g;
}

}  // namespace

std::vector<double> read_values(std::istream& in) {
  LineReader r(in);
  std::vector<double> v;
  while (r.next()) {
    r.expect(1, 1);
    v.push_back(r.real(0));
  }
  return v;
}

std::vector<Activity> read_activities(std::istream& in) {
  LineReader r(in);
  std::vector<Activity> acts;
  while (r.next()) {
    r.expect(3, 3);
    Activity a{r.real(0), r.real(1), r.real(2)};
    if (!(a.start < a.end)) bad_line(r.line(), "start must be before end");
    if (a.weight < 0) bad_line(r.line(), "weight must be non-negative");
    acts.push_back(a);
  }
  return acts;
}

std::vector<Item> read_items(std::istream& in) {
  LineReader r(in);
  std::vector<Item> items;
  while (r.next()) {
    r.expect(2, 2);
    Item it{r.integer<std::int64_t>(0), r.integer<std::int64_t>(1)};
    if (it.weight <= 0) bad_line(r.line(), "item weight must be positive");
    if (it.value < 0) bad_line(r.line(), "item value must be non-negative");
    items.push_back(it);
  }
  return items;
}

std::vector<std::uint64_t> read_freqs(std::istream& in) {
  LineReader r(in);
  std::vector<std::uint64_t> f;
  while (r.next()) {
    r.expect(1, 1);
    const auto v = r.integer<std::uint64_t>(0);
    if (v == 0) bad_line(r.line(), "frequency must be positive");
    f.push_back(v);
  }
  return f;
}

std::vector<Mole> read_moles(std::istream& in) {
  LineReader r(in);
  std::vector<Mole> m;
  while (r.next()) {
    r.expect(2, 2);
    m.push_back({r.integer<std::int64_t>(0), r.integer<std::int64_t>(1)});
    if (m.size() > 1 && m.back().t < m[m.size() - 2].t) bad_line(r.line(), "moles must be sorted by time");
  }
  return m;
}

WeightedGraph read_weighted_graph(std::istream& in) {
  const RawGraph raw = read_edge_list(in, true);
  return WeightedGraph::from_edges(raw.n, raw.edges);
}

UndirectedGraph read_undirected_graph(std::istream& in) {
  const RawGraph raw = read_edge_list(in, false);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(raw.edges.size());
  for (const Edge& e : raw.edges) {
    if (e.from == e.to) fail(Errc::parse, "graph: self-loop at vertex " + std::to_string(e.from));
    edges.push_back({e.from, e.to});
  }
  return UndirectedGraph::from_edges(raw.n, edges);
}

WeightedGraph read_csr_binary(std::istream& in) {
  WeightedGraph g;
  const auto n = get_raw<std::uint64_t>(in, "n");
  const auto m = get_raw<std::uint64_t>(in, "m");
  if (n >= (std::uint64_t{1} << 32) || m >= (std::uint64_t{1} << 40))
    fail(Errc::parse, "csr binary: implausible header n=" + std::to_string(n) + " m=" + std::to_string(m));
  g.n = static_cast<std::size_t>(n);
  g.offsets.resize(g.n + 1);
  for (auto& o : g.offsets) o = get_raw<std::uint64_t>(in, "offsets");
  g.targets.resize(m);
  for (auto& t : g.targets) t = get_raw<std::uint32_t>(in, "targets");
  g.weights.resize(m);
  for (auto& w : g.weights) w = static_cast<double>(get_raw<std::uint32_t>(in, "weights"));
  try {
    g.validate();
  } catch (const Error& e) {
    fail(Errc::parse, std::string("csr binary: ") + e.what());
  }
  return g;
}

void write_values(std::ostream& out, const std::vector<double>& v) {
  out << std::setprecision(17);
  for (double x : v) out << x << '\n';
}

void write_values(std::ostream& out, const std::vector<std::int64_t>& v) {
  for (auto x : v) out << x << '\n';
}

void write_activities(std::ostream& out, const std::vector<Activity>& acts) {
  out << std::setprecision(17);
  for (const auto& a : acts) out << a.start << ' ' << a.end << ' ' << a.weight << '\n';
}

void write_items(std::ostream& out, const std::vector<Item>& items) {
  for (const auto& it : items) out << it.weight << ' ' << it.value << '\n';
}

void write_freqs(std::ostream& out, const std::vector<std::uint64_t>& f) {
  for (auto x : f) out << x << '\n';
}

void write_moles(std::ostream& out, const std::vector<Mole>& m) {
  for (const auto& x : m) out << x.t << ' ' << x.p << '\n';
}

void write_weighted_graph(std::ostream& out, const WeightedGraph& g) {
  out << std::setprecision(17) << g.n << '\n';
  for (std::size_t u = 0; u < g.n; ++u)
    for (std::uint64_t e = g.offsets[u]; e < g.offsets[u + 1]; ++e)
      out << u << ' ' << g.targets[e] << ' ' << g.weights[e] << '\n';
}

void write_undirected_graph(std::ostream& out, const UndirectedGraph& g) {
  out << g.n << '\n';
  for (std::size_t u = 0; u < g.n; ++u)
    for (std::uint32_t v : g.neighbors(u))
      if (u < v) out << u << ' ' << v << '\n';
}

void write_csr_binary(std::ostream& out, const WeightedGraph& g) {
  for (std::size_t e = 0; e < g.weights.size(); ++e) {
    const double w = g.weights[e];
    if (!(w >= 1 && w < 4294967296.0) || w != std::floor(w))
      fail(Errc::invalid_input, "csr binary: weight of edge " + std::to_string(e) + " is not a 32-bit integer");
  }
  put_raw<std::uint64_t>(out, g.n);
  put_raw<std::uint64_t>(out, g.targets.size());
  for (auto o : g.offsets) put_raw<std::uint64_t>(out, o);
  for (auto t : g.targets) put_raw<std::uint32_t>(out, t);
  for (auto w : g.weights) put_raw<std::uint32_t>(out, static_cast<std::uint32_t>(w));
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::parse, "cannot open '" + path + "'");
  return in;
}

}  // namespace phaselib
