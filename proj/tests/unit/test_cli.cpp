#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(PHASEBENCH_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> f;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) f.push_back(cell);
  return f;
}

/// Rows keyed by column name; skips the version comment.
std::vector<std::map<std::string, std::string>> rows(const std::string& out, char sep = ',') {
  std::istringstream in(out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# phaselib-bench v1");
  std::getline(in, line);
  const auto head = split(line, sep);
  std::vector<std::map<std::string, std::string>> res;
  while (std::getline(in, line)) {
    const auto f = split(line, sep);
    EXPECT_EQ(f.size(), head.size());
    std::map<std::string, std::string> m;
    for (std::size_t i = 0; i < head.size() && i < f.size(); ++i) m[head[i]] = f[i];
    res.push_back(m);
  }
  return res;
}

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("phasebench_test_" + name);
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST(Cli, LisSegmentsRoundsEqualLength) {
  const auto r = run("lis --gen segments:n=1000,k=10 --verify --repeats 1");
  ASSERT_EQ(r.status, 0);
  const auto rs = rows(r.out);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0].at("oracle_ok"), "1");
  EXPECT_EQ(rs[0].at("result"), "length=" + rs[0].at("rounds"));
  EXPECT_EQ(rs[0].at("rounds"), rs[0].at("input_rank"));
}

TEST(Cli, MisChecksumIndependentOfThreads) {
  const auto a = run("mis --gen graph:n=100,deg=5 --threads 1 --verify --repeats 1");
  const auto b = run("mis --gen graph:n=100,deg=5 --threads 8 --verify --repeats 1");
  ASSERT_EQ(a.status, 0);
  ASSERT_EQ(b.status, 0);
  EXPECT_EQ(rows(a.out)[0].at("checksum"), rows(b.out)[0].at("checksum"));
  EXPECT_EQ(rows(b.out)[0].at("threads"), "8");
}

TEST(Cli, KnapsackFromFile) {
  const auto path = temp_file("items.txt", "2 3\n3 5\n");
  const auto r = run("knapsack --in " + path + " --capacity 7 --verify --repeats 1");
  ASSERT_EQ(r.status, 0);
  const auto rs = rows(r.out);
  EXPECT_EQ(rs[0].at("result"), "best=11");
  EXPECT_EQ(rs[0].at("rounds"), "4");
}

TEST(Cli, TsvOutput) {
  const auto r = run("huffman --gen freqs:n=500,dist=zipf,maxf=1000 --verify --repeats 1 --out tsv");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(rows(r.out, '\t')[0].at("oracle_ok"), "1");
}

TEST(Cli, EverySubcommandVerifies) {
  const std::vector<std::string> cmds{
      "activity1 --gen activities:n=3000,b=4",
      "activity2 --gen activities:n=3000,b=4",
      "activity-unweighted --gen activities:n=3000,b=4",
      "knapsack --gen items:n=20,wmin=3,wmax=30,vmax=100,cap=400",
      "huffman --gen freqs:n=3000,dist=exponential,maxf=100000",
      "sssp --gen graph:n=3000,deg=4,wmin=1,wmax=100",
      "lis --gen line:n=3000,t=0.01,w=10",
      "moles --gen moles:n=3000,horizon=3000,span=100",
      "mis --gen graph:n=3000,deg=8"};
  for (const auto& c : cmds) {
    const auto r = run(c + " --verify --repeats 2 --threads 2");
    ASSERT_EQ(r.status, 0) << c;
    const auto rs = rows(r.out);
    ASSERT_EQ(rs.size(), 1u) << c;
    EXPECT_EQ(rs[0].at("oracle_ok"), "1") << c;
    if (c.rfind("knapsack", 0) != 0) EXPECT_EQ(rs[0].at("n"), "3000") << c;
  }
}

TEST(Cli, SweepRoundsTrackRank) {
  const auto r = run("sweep activity1 --gen activities:n=2000,b=1 --vary b=1,4,16 --threads-list 1 --repeats 1 --verify");
  ASSERT_EQ(r.status, 0);
  const auto rs = rows(r.out);
  ASSERT_EQ(rs.size(), 3u);
  long prev = 1L << 40;
  for (const auto& row : rs) {
    EXPECT_EQ(row.at("rounds"), row.at("input_rank"));
    EXPECT_EQ(row.at("param"), "b");
    const long rank = std::stol(row.at("rounds"));
    EXPECT_LT(rank, prev);
    prev = rank;
  }
}

TEST(Cli, SweepWakeupsInvariantAcrossThreads) {
  const auto r = run("sweep lis --gen line:n=20000,t=0,w=1 --threads-list 1,2,4 --repeats 1");
  ASSERT_EQ(r.status, 0);
  const auto rs = rows(r.out);
  ASSERT_EQ(rs.size(), 3u);
  for (const auto& row : rs) {
    EXPECT_EQ(row.at("wakeup_mean"), rs[0].at("wakeup_mean"));
    EXPECT_EQ(row.at("checksum"), rs[0].at("checksum"));
  }
}

TEST(Cli, InjectedFaultFailsVerification) {
  for (const std::string algo : {"lis --gen line:n=500,t=0,w=1", "mis --gen graph:n=300,deg=4",
                                 "sssp --gen graph:n=300,deg=4", "huffman --gen freqs:n=300"}) {
    const auto r = run(algo + " --verify --inject-fault --repeats 1");
    EXPECT_EQ(r.status, 3) << algo;
    EXPECT_EQ(rows(r.out)[0].at("oracle_ok"), "0") << algo;
  }
}

TEST(Cli, ParseErrorExitsTwo) {
  const auto path = temp_file("bad.txt", "1 2\nx 3\n");
  EXPECT_EQ(run("knapsack --in " + path + " --capacity 3").status, 2);
  EXPECT_EQ(run("lis --in /nonexistent/input.txt").status, 2);
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run("frobnicate").status, 1);
  EXPECT_EQ(run("lis --gen line:n=5,zz=1").status, 1);
  EXPECT_EQ(run("lis").status, 1);
  EXPECT_EQ(run("knapsack --gen items:n=5").status, 1);
}

TEST(Cli, GenWritesReadableInput) {
  const auto path = (std::filesystem::temp_directory_path() / "phasebench_test_gen.txt").string();
  ASSERT_EQ(run("gen --gen activities:n=400,b=2 --seed 5 -o " + path).status, 0);
  const auto from_file = run("activity2 --in " + path + " --verify --repeats 1");
  const auto direct = run("activity2 --gen activities:n=400,b=2 --seed 5 --verify --repeats 1");
  ASSERT_EQ(from_file.status, 0);
  EXPECT_EQ(rows(from_file.out)[0].at("checksum"), rows(direct.out)[0].at("checksum"));
  const auto bin = (std::filesystem::temp_directory_path() / "phasebench_test_gen.bin").string();
  ASSERT_EQ(run("gen --gen graph:n=300,deg=3 --format binary -o " + bin).status, 0);
  EXPECT_EQ(run("sssp --in " + bin + " --format binary --verify --repeats 1").status, 0);
}
