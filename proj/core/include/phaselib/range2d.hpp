#pragma once

// Static 2D dominance index over a point set whose dp values are finalized
// incrementally. Answers, for the open lower-left quadrant {x < qx, y < qy}:
//   - the number of unfinished points,
//   - the maximum finished dp (with the x attaining it),
//   - a witness x drawn uniformly from the unfinished points in the quadrant.
//
// Layout: a merge-sort tree over x. Level L partitions the x-sorted points
// into aligned blocks of 2^L and keeps each block sorted by y. Unfinished
// entries are a bitmask per level with a Fenwick tree over 64-entry chunks
// of each block; a second chunk Fenwick tracks prefix-max dp. The
// quadrant below a point decomposes into at most one block per level plus
// a short run of x-neighbours.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace phaselib {

inline constexpr std::uint32_t kNoWitness = std::numeric_limits<std::uint32_t>::max();
inline constexpr std::uint32_t kNoRank = std::numeric_limits<std::uint32_t>::max();

struct Point2D {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
};

/// Aggregate over a set of points.
///   unfinished > 0  => dp_max == kUnfinishedDp, witness is an unfinished x
///   unfinished == 0 => dp_max is the largest dp (kEmptyDp for an empty set)
///                      and witness attains it (kNoWitness when empty)
struct LisAggregate {
  static constexpr std::int64_t kUnfinishedDp = std::numeric_limits<std::int64_t>::max();
  static constexpr std::int64_t kEmptyDp = -1;

  std::uint64_t unfinished = 0;
  std::int64_t dp_max = kEmptyDp;
  std::uint32_t witness = kNoWitness;

  bool empty_region() const noexcept { return unfinished == 0 && dp_max == kEmptyDp; }
  /// dp of the region as seen by a caller that treats empty as 0.
  std::int64_t finished_max_or_zero() const noexcept { return dp_max < 0 ? 0 : dp_max; }

  bool operator==(const LisAggregate&) const = default;
};

/// Combine rule for two aggregates. When either side holds unfinished
/// points, the witness comes from side 1 with probability n1 / (n1 + n2),
/// decided by the 64 random bits in `draw`. Otherwise the larger dp wins,
/// ties going to side 2.
LisAggregate combine(const LisAggregate& a, const LisAggregate& b, std::uint64_t draw);

enum class WitnessSource {
  counter_hash,  // reproducible: hash(seed, epoch, query)
  true_random,   // test-only: std::random_device-seeded engine
};

enum class WitnessPolicy {
  uniform,    // uniformly random unfinished point
  rightmost,  // unfinished point with the largest x
};

class RangeIndex2D {
 public:
  RangeIndex2D() = default;

  /// Points need distinct x; y values must be distinct too. All points start
  /// unfinished.
  RangeIndex2D(std::span<const Point2D> points, std::uint64_t seed);

  std::size_t size() const noexcept { return n_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t epoch() const noexcept { return epoch_; }

  void set_witness_source(WitnessSource s) noexcept { source_ = s; }
  void set_witness_policy(WitnessPolicy p) noexcept { policy_ = p; }
  WitnessPolicy witness_policy() const noexcept { return policy_; }

  /// Aggregate over {x < qx, y < qy}.
  LisAggregate dominance_query(std::uint32_t qx, std::uint32_t qy) const;

  /// Same region as dominance_query(x_of(rank), y_of(rank)) for the point
  /// with x-rank `rank`, using precomputed per-level ranks.
  LisAggregate query_below(std::size_t rank) const;

  /// Cache hint ahead of query_below(rank).
  void prefetch_below(std::size_t rank) const noexcept {
    __builtin_prefetch(left_rank_.data() + rank * levels_);
    __builtin_prefetch(below_.data() + rank);
  }

  /// Sets dp for unfinished points, given as (x, dp). Throws
  /// Errc::already_finished if any point was finalized before, and
  /// Errc::invalid_input for unknown x or negative dp.
  void finalize_batch(std::span<const std::pair<std::uint32_t, std::int64_t>> updates);

  bool finished(std::uint32_t x) const;
  std::int64_t dp_of(std::uint32_t x) const;

  /// x-rank (0-based position in x order) of a point.
  std::size_t rank_of_x(std::uint32_t x) const;
  std::uint32_t x_at(std::size_t rank) const noexcept { return xs_[rank]; }
  std::uint32_t y_at(std::size_t rank) const noexcept { return ys_[rank]; }

 private:
  struct Best {
    std::int64_t dp = -1;
    std::uint32_t rank = kNoRank;
    // Larger dp wins; on equal dp the larger rank (= larger x).
    bool beats(const Best& o) const noexcept {
      return dp != o.dp ? dp > o.dp : (rank != kNoRank && (o.rank == kNoRank || rank > o.rank));
    }
  };

  // One block of the decomposition: the first `prefix` y-sorted entries of
  // the block of `level` starting at slot `start`.
  struct Piece {
    std::uint32_t level;
    std::size_t start;
    std::size_t prefix;
    std::uint64_t unfinished;
  };

  // The partial 64-group left of the query point: bit j of `below` stands
  // for rank begin + j and is set when that point lies in the quadrant;
  // `open` keeps the unfinished ones.
  struct Group {
    std::size_t begin = 0;
    std::uint64_t below = 0;
    std::uint64_t open = 0;
  };

  std::size_t block_len(std::uint32_t level, std::size_t start) const noexcept;
  std::uint64_t count_prefix(std::uint32_t level, std::size_t start, std::size_t prefix) const;
  Best best_prefix(std::uint32_t level, std::size_t start, std::size_t prefix) const;
  Best best_in_chunk(std::uint32_t level, std::size_t from, std::size_t count, Best best) const;
  std::size_t kth_unfinished(std::uint32_t level, std::size_t start, std::uint64_t k) const;
  std::size_t y_rank_in_block(std::uint32_t level, std::size_t start, std::uint32_t qy) const;
  std::uint32_t rightmost_unfinished(const Piece& piece, std::uint32_t qy) const;
  std::uint32_t rightmost_in_group(const Group& g) const;
  Group scan_group(std::size_t begin, std::size_t end, std::uint32_t qy) const;
  Group group_below(std::size_t rank) const;

  LisAggregate assemble(std::span<const Piece> pieces, const Group& group,
                        std::uint32_t qx, std::uint32_t qy) const;
  std::uint64_t draw_bits(std::uint32_t qx, std::uint32_t qy) const;

  // Levels below kLeafBits are not stored: the up to 63 points left of a
  // query inside its 64-group are covered by below_ and open_.
  static constexpr std::uint32_t kLeafBits = 6;

  std::size_t index(std::uint32_t level, std::size_t slot) const noexcept {
    return static_cast<std::size_t>(level - kLeafBits) * n_ + slot;
  }
  std::size_t per_rank(std::size_t rank, std::uint32_t level) const noexcept {
    return rank * levels_ + (level - kLeafBits);
  }
  std::size_t word(std::uint32_t level, std::size_t slot) const noexcept {
    return static_cast<std::size_t>(level - kLeafBits) * words_ + (slot >> 6);
  }
  std::size_t octet(std::uint32_t level, std::size_t slot) const noexcept {
    return static_cast<std::size_t>(level - kLeafBits) * octets_ + (slot >> 3);
  }

  std::size_t n_ = 0;
  std::size_t words_ = 0;     // 64-bit words per level
  std::size_t octets_ = 0;    // 8-slot groups per level
  std::uint32_t levels_ = 0;  // stored levels kLeafBits .. kLeafBits+levels_-1
  std::uint64_t seed_ = 0;
  std::uint64_t epoch_ = 0;
  WitnessSource source_ = WitnessSource::counter_hash;
  WitnessPolicy policy_ = WitnessPolicy::uniform;

  std::vector<std::uint32_t> xs_;  // x by rank (ascending)
  std::vector<std::uint32_t> ys_;  // y by rank
  std::vector<std::int64_t> dp_;   // dp by rank; -1 while unfinished
  std::vector<std::uint64_t> below_;      // [rank]: earlier ranks of its 64-group with smaller y
  std::vector<std::uint64_t> open_;       // [rank / 64]: unfinished bit per rank

  std::vector<std::uint32_t> ids_;        // [level][slot]: rank at each block slot (y-sorted)
  std::vector<std::uint32_t> slot_of_;    // [rank][level]: slot of the rank
  std::vector<std::uint32_t> left_rank_;  // [rank][level]: left sibling entries with smaller y
  std::vector<std::uint64_t> live_;       // [level][word]: unfinished bit per slot
  std::vector<std::uint32_t> chunk_cnt_;  // [level][word]: Fenwick over chunk popcounts
  std::vector<Best> octet_best_;          // [level][slot/8]: best of 8 aligned slots
  std::vector<Best> chunk_best_;          // [level][word]: Fenwick of best per chunk
};

}  // namespace phaselib
