#pragma once

// Text and binary input formats. Text readers skip blank lines and lines
// starting with '#', and report malformed input as Errc::parse with the
// 1-based line number.
//
//   values       one number per line
//   activities   "s e w"
//   items        "w v" (integers)
//   freqs        one positive integer per line
//   moles        "t p" (integers)
//   graph        "u v w" per directed edge; "u v" for undirected graphs.
//                An optional first line holding a single integer fixes n,
//                otherwise n = 1 + largest vertex id.
//   csr binary   little-endian u64 n, u64 m, u64 offsets[n+1],
//                u32 targets[m], u32 weights[m]

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "phaselib/activity.hpp"
#include "phaselib/knapsack.hpp"
#include "phaselib/lis.hpp"
#include "phaselib/mis.hpp"
#include "phaselib/sssp.hpp"

namespace phaselib {

std::vector<double> read_values(std::istream& in);
std::vector<Activity> read_activities(std::istream& in);
std::vector<Item> read_items(std::istream& in);
std::vector<std::uint64_t> read_freqs(std::istream& in);
std::vector<Mole> read_moles(std::istream& in);
WeightedGraph read_weighted_graph(std::istream& in);
UndirectedGraph read_undirected_graph(std::istream& in);
WeightedGraph read_csr_binary(std::istream& in);

void write_values(std::ostream& out, const std::vector<double>& v);
void write_values(std::ostream& out, const std::vector<std::int64_t>& v);
void write_activities(std::ostream& out, const std::vector<Activity>& acts);
void write_items(std::ostream& out, const std::vector<Item>& items);
void write_freqs(std::ostream& out, const std::vector<std::uint64_t>& f);
void write_moles(std::ostream& out, const std::vector<Mole>& m);
void write_weighted_graph(std::ostream& out, const WeightedGraph& g);
void write_undirected_graph(std::ostream& out, const UndirectedGraph& g);
/// Weights must be integers in [1, 2^32).
void write_csr_binary(std::ostream& out, const WeightedGraph& g);

/// Opens a file for reading (binary mode); Errc::parse when it cannot.
std::ifstream open_input(const std::string& path);

}  // namespace phaselib
