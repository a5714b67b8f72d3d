#include <gtest/gtest.h>

#include <functional>
#include <sstream>

#include "phaselib/error.hpp"
#include "phaselib/gen.hpp"
#include "phaselib/io.hpp"

using namespace phaselib;

namespace {

std::string parse_message(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::parse);
    return e.what();
  }
  ADD_FAILURE() << "no error";
  return {};
}

}  // namespace

TEST(Io, ValuesSkipCommentsAndBlanks) {
  std::istringstream in("# header\n3\n\n  1.5\n# more\n-2\n");
  EXPECT_EQ(read_values(in), (std::vector<double>{3, 1.5, -2}));
}

TEST(Io, ActivitiesRoundTrip) {
  const auto a = gen_activities(300, 2, 1.5, 4);
  std::stringstream s;
  write_activities(s, a);
  const auto b = read_activities(s);
  ASSERT_EQ(b.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(b[i].start, a[i].start);
    EXPECT_EQ(b[i].end, a[i].end);
    EXPECT_EQ(b[i].weight, a[i].weight);
  }
}

TEST(Io, CommaAndTabSeparators) {
  std::istringstream in("2,3\n3\t5\r\n");
  const auto items = read_items(in);
  ASSERT_EQ(items.size(), 2u);
  EXPECT_EQ(items[1].weight, 3);
  EXPECT_EQ(items[1].value, 5);
}

TEST(Io, ItemsFreqsMolesRoundTrip) {
  const auto items = gen_items(100, 1, 9, 99, 2);
  std::stringstream s1;
  write_items(s1, items);
  const auto items2 = read_items(s1);
  for (std::size_t i = 0; i < items.size(); ++i) {
    EXPECT_EQ(items2[i].weight, items[i].weight);
    EXPECT_EQ(items2[i].value, items[i].value);
  }
  const auto f = gen_freqs(100, FreqDist::zipf, 5000, 2);
  std::stringstream s2;
  write_freqs(s2, f);
  EXPECT_EQ(read_freqs(s2), f);
  const auto m = gen_moles(100, 50, 10, 2);
  std::stringstream s3;
  write_moles(s3, m);
  const auto m2 = read_moles(s3);
  for (std::size_t i = 0; i < m.size(); ++i) {
    EXPECT_EQ(m2[i].t, m[i].t);
    EXPECT_EQ(m2[i].p, m[i].p);
  }
  std::stringstream s4;
  const std::vector<std::int64_t> v{5, -4, 9};
  write_values(s4, v);
  EXPECT_EQ(read_values(s4), (std::vector<double>{5, -4, 9}));
}

TEST(Io, GraphsRoundTrip) {
  const auto g = gen_weighted_graph(200, 4, 1, 50, 3);
  std::stringstream s;
  write_weighted_graph(s, g);
  const auto h = read_weighted_graph(s);
  EXPECT_EQ(h.n, g.n);
  EXPECT_EQ(h.offsets, g.offsets);
  EXPECT_EQ(h.targets, g.targets);
  EXPECT_EQ(h.weights, g.weights);
  const auto u = gen_undirected_graph(200, 6, 3);
  std::stringstream su;
  write_undirected_graph(su, u);
  const auto v = read_undirected_graph(su);
  EXPECT_EQ(v.n, u.n);
  EXPECT_EQ(v.offsets, u.offsets);
  EXPECT_EQ(v.adj, u.adj);
}

TEST(Io, GraphSizeFromLargestId) {
  std::istringstream in("0 4 2.5\n4 1 1\n");
  const auto g = read_weighted_graph(in);
  EXPECT_EQ(g.n, 5u);
  EXPECT_EQ(g.edge_count(), 2u);
  std::istringstream sized("9\n0 4 2.5\n");
  EXPECT_EQ(read_weighted_graph(sized).n, 9u);
}

TEST(Io, UndirectedEdgesAreSymmetrized) {
  std::istringstream in("0 1\n1 2\n");
  const auto g = read_undirected_graph(in);
  EXPECT_EQ(g.degree(1), 2u);
  EXPECT_EQ(g.neighbors(0)[0], 1u);
}

TEST(Io, CsrBinaryRoundTrip) {
  const auto g = gen_weighted_graph(500, 5, 1, 1000, 9);
  std::stringstream s(std::ios::in | std::ios::out | std::ios::binary);
  write_csr_binary(s, g);
  const auto h = read_csr_binary(s);
  EXPECT_EQ(h.offsets, g.offsets);
  EXPECT_EQ(h.targets, g.targets);
  EXPECT_EQ(h.weights, g.weights);
  std::stringstream cut(s.str().substr(0, 40), std::ios::in | std::ios::binary);
  EXPECT_NE(parse_message([&] { (void)read_csr_binary(cut); }).find("truncated"), std::string::npos);
  const std::vector<Edge> frac{{0, 1, 1.5}};
  std::stringstream bad(std::ios::out | std::ios::binary);
  EXPECT_THROW(write_csr_binary(bad, WeightedGraph::from_edges(2, frac)), Error);
}

TEST(Io, ErrorsCarryLineNumbers) {
  std::istringstream a("1 2 3\n\n4 x 6\n");
  EXPECT_NE(parse_message([&] { (void)read_activities(a); }).find("line 3"), std::string::npos);
  std::istringstream b("1 2\n3\n");
  EXPECT_NE(parse_message([&] { (void)read_items(b); }).find("line 2"), std::string::npos);
  std::istringstream c("5\n0\n");
  EXPECT_NE(parse_message([&] { (void)read_freqs(c); }).find("line 2"), std::string::npos);
  std::istringstream d("3 1\n2 1\n");
  EXPECT_NE(parse_message([&] { (void)read_moles(d); }).find("line 2"), std::string::npos);
  std::istringstream e("0 1 -1\n");
  EXPECT_NE(parse_message([&] { (void)read_weighted_graph(e); }).find("line 1"), std::string::npos);
  std::istringstream f("1.5 2 3\n");
  EXPECT_THROW((void)read_items(f), Error);
  EXPECT_THROW((void)open_input("/nonexistent/file.txt"), Error);
}
