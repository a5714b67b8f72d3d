#pragma once

// Huffman tree construction. Nodes 0..n-1 are the leaves in input order;
// internal nodes follow in creation order.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "phaselib/phase.hpp"

namespace phaselib {

inline constexpr std::uint32_t kNoNode = 0xFFFFFFFFu;

struct HuffmanTree {
  std::size_t leaves = 0;
  std::vector<std::uint64_t> freq;
  std::vector<std::uint32_t> left, right, parent;  // kNoNode where absent
  std::vector<std::uint32_t> built_round;          // 0 for leaves and for seq_huffman
  std::uint32_t root = kNoNode;
  std::uint32_t height = 0;
  std::uint64_t wpl = 0;

  std::size_t node_count() const noexcept { return freq.size(); }
  /// Leaf depths; 0 for a single-leaf tree.
  std::vector<std::uint32_t> depths() const;
};

/// Greedy with a binary heap on (frequency, node id). Throws
/// Errc::invalid_input on empty input or a zero frequency, Errc::overflow
/// when the total exceeds 64 bits.
HuffmanTree seq_huffman(std::span<const std::uint64_t> freqs);

/// Rounds over a (frequency, id) ordered map: with f_m the sum of the two
/// smallest, every object below f_m is merged (dropping the largest when
/// their count is odd), pairing neighbours in ascending order. The trace
/// frontier lists the nodes consumed in each round.
std::pair<HuffmanTree, PhaseTrace> phase_huffman(std::span<const std::uint64_t> freqs);

/// f*_0..f*_H are the frequencies on the path from the smallest leaf to the
/// root; a node of frequency f has rank i when f*_i <= f < f*_{i+1}, and rank
/// H at or above the root frequency.
std::vector<std::uint32_t> relaxed_rank_huffman(const HuffmanTree& tree);

}  // namespace phaselib
