#include "phaselib/range2d.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <string>

#include "phaselib/error.hpp"
#include "phaselib/parallel.hpp"
#include "phaselib/random.hpp"

namespace phaselib {

namespace {

constexpr std::size_t lowbit(std::size_t i) noexcept { return i & (~i + 1); }

constexpr std::uint64_t low_mask(std::size_t bits) noexcept {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

// Position of the (k+1)-th set bit.
inline std::size_t select_bit(std::uint64_t w, std::uint64_t k) noexcept {
  std::size_t base = 0;
  for (std::size_t half = 32; half >= 8; half >>= 1) {
    const std::uint64_t lo = w & low_mask(half);
    const auto c = static_cast<std::uint64_t>(std::popcount(lo));
    if (k >= c) {
      k -= c;
      w >>= half;
      base += half;
    } else {
      w = lo;
    }
  }
  for (; k > 0; --k) w &= w - 1;
  return base + static_cast<std::size_t>(std::countr_zero(w));
}

}  // namespace

LisAggregate combine(const LisAggregate& a, const LisAggregate& b, std::uint64_t draw) {
  if (a.unfinished + b.unfinished > 0) {
    LisAggregate out;
    out.unfinished = a.unfinished + b.unfinished;
    out.dp_max = LisAggregate::kUnfinishedDp;
    out.witness = bounded(draw, out.unfinished) < a.unfinished ? a.witness : b.witness;
    return out;
  }
  return a.dp_max > b.dp_max ? a : b;
}

RangeIndex2D::RangeIndex2D(std::span<const Point2D> points, std::uint64_t seed)
    : n_(points.size()), seed_(seed) {
  std::vector<Point2D> pts(points.begin(), points.end());
  const auto by_x = [](const Point2D& a, const Point2D& b) { return a.x < b.x; };
  if (!std::is_sorted(pts.begin(), pts.end(), by_x)) std::sort(pts.begin(), pts.end(), by_x);
  for (std::size_t i = 1; i < n_; ++i)
    if (pts[i].x == pts[i - 1].x)
      fail(Errc::duplicate_key, "range index: duplicate x " + std::to_string(pts[i].x));
  {
    std::uint32_t max_y = 0;
    for (const Point2D& p : pts) max_y = std::max(max_y, p.y);
    bool dup = false;
    if (max_y < 8 * n_) {
      std::vector<bool> seen(std::size_t{max_y} + 1);
      for (const Point2D& p : pts) {
        dup = dup || seen[p.y];
        seen[p.y] = true;
      }
    } else {
      std::vector<std::uint32_t> ys(n_);
      for (std::size_t i = 0; i < n_; ++i) ys[i] = pts[i].y;
      std::sort(ys.begin(), ys.end());
      dup = std::adjacent_find(ys.begin(), ys.end()) != ys.end();
    }
    if (dup) fail(Errc::duplicate_key, "range index: y values must be distinct");
  }
  xs_.resize(n_);
  ys_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    xs_[i] = pts[i].x;
    ys_[i] = pts[i].y;
  }
  dp_.assign(n_, -1);
  open_.resize((n_ + 63) / 64);
  for (std::size_t w = 0; w < open_.size(); ++w) open_[w] = low_mask(std::min<std::size_t>(64, n_ - w * 64));
  below_.assign(n_, 0);
  parallel_for(0, open_.size(), [&](std::size_t g) {
    const std::size_t s = g * 64, e = std::min(s + 64, n_);
    for (std::size_t r = s; r < e; ++r) {
      std::uint64_t m = 0;
      for (std::size_t j = s; j < r; ++j) m |= static_cast<std::uint64_t>(ys_[j] < ys_[r]) << (j - s);
      below_[r] = m;
    }
  }, 16);
  if (n_ <= (std::size_t{1} << kLeafBits)) return;

  // Stored levels run up to the first one whose single block covers all
  // points; that top level only supplies left ranks for the level below.
  const auto top = static_cast<std::uint32_t>(std::bit_width(n_ - 1));
  levels_ = top - kLeafBits + 1;
  words_ = (n_ + 63) / 64;
  octets_ = (n_ + 7) / 8;
  ids_.resize(levels_ * n_);
  slot_of_.resize(levels_ * n_);
  left_rank_.resize(levels_ * n_);
  live_.assign(levels_ * words_, 0);
  chunk_cnt_.assign(levels_ * words_, 0);
  octet_best_.assign(levels_ * octets_, Best{});
  chunk_best_.assign(levels_ * words_, Best{});

  // y of each slot at the level being read, so merges compare without
  // chasing ids back into ys_.
  std::vector<std::uint32_t> ycur(n_), ynext(n_);
  // Slots and left ranks are written level-major here, where each block
  // touches only its own range of ranks, and transposed at the end.
  std::vector<std::uint32_t> slot_lm(levels_ * n_), left_lm(levels_ * n_, 0);
  parallel_for(0, words_, [&](std::size_t g) {
    const std::size_t s = g * 64, e = std::min(s + 64, n_);
    std::uint32_t* ids = ids_.data() + index(kLeafBits, s);
    for (std::size_t r = s; r < e; ++r) ids[r - s] = static_cast<std::uint32_t>(r);
    std::sort(ids, ids + (e - s), [&](std::uint32_t a, std::uint32_t b) { return ys_[a] < ys_[b]; });
    for (std::size_t k = s; k < e; ++k) {
      slot_lm[index(kLeafBits, ids[k - s])] = static_cast<std::uint32_t>(k);
      ycur[k] = ys_[ids[k - s]];
    }
  }, 64);

  for (std::uint32_t L = kLeafBits + 1; L <= top; ++L) {
    const std::size_t width = std::size_t{1} << L;
    const std::size_t half = width >> 1;
    const std::size_t blocks = (n_ + width - 1) / width;
    parallel_for(0, blocks, [&](std::size_t b) {
      const std::size_t s = b * width;
      const std::size_t mid = std::min(s + half, n_);
      const std::size_t end = std::min(s + width, n_);
      const std::uint32_t* src = ids_.data() + index(L - 1, 0);
      std::uint32_t* dst = ids_.data() + index(L, 0);
      std::size_t i = s, j = mid, out = s;
      while (i < mid || j < end) {
        const bool take_left = j >= end || (i < mid && ycur[i] < ycur[j]);
        std::uint32_t id;
        if (take_left) {
          ynext[out] = ycur[i];
          id = src[i++];
        } else {
          ynext[out] = ycur[j];
          id = src[j++];
          left_lm[index(L - 1, id)] = static_cast<std::uint32_t>(i - s);
        }
        dst[out] = id;
        slot_lm[index(L, id)] = static_cast<std::uint32_t>(out);
        ++out;
      }
    }, std::max<std::size_t>(1, (std::size_t{1} << 14) >> L));
    ycur.swap(ynext);
  }
  parallel_for(0, n_, [&](std::size_t r) {
    for (std::uint32_t m = 0; m < levels_; ++m) {
      slot_of_[r * levels_ + m] = slot_lm[m * n_ + r];
      left_rank_[r * levels_ + m] = left_lm[m * n_ + r];
    }
  }, 4096);

  parallel_for(0, levels_, [&](std::size_t m) {
    const auto L = static_cast<std::uint32_t>(m) + kLeafBits;
    for (std::size_t w = 0; w < words_; ++w)
      live_[word(L, w * 64)] = low_mask(std::min<std::size_t>(64, n_ - w * 64));
    const std::size_t width = std::size_t{1} << L;
    for (std::size_t s = 0; s < n_; s += width) {
      const std::size_t chunks = (block_len(L, s) + 63) / 64;
      std::uint32_t* tree = chunk_cnt_.data() + word(L, s) - 1;
      for (std::size_t c = 1; c <= chunks; ++c) {
        tree[c] += static_cast<std::uint32_t>(std::popcount(live_[word(L, s) + c - 1]));
        const std::size_t up = c + lowbit(c);
        if (up <= chunks) tree[up] += tree[c];
      }
    }
  }, 1);
}

std::size_t RangeIndex2D::block_len(std::uint32_t level, std::size_t start) const noexcept {
  return std::min(std::size_t{1} << level, n_ - start);
}

std::uint64_t RangeIndex2D::count_prefix(std::uint32_t level, std::size_t start,
                                         std::size_t prefix) const {
  const std::uint32_t* tree = chunk_cnt_.data() + word(level, start) - 1;
  std::uint64_t sum = 0;
  for (std::size_t c = prefix >> 6; c > 0; c -= lowbit(c)) sum += tree[c];
  if (prefix & 63)
    sum += static_cast<std::uint64_t>(
        std::popcount(live_[word(level, start + prefix)] & low_mask(prefix & 63)));
  return sum;
}

// Best finished entry among `count` slots from `from`, all inside one chunk.
// Unfinished slots hold dp -1 and never win.
RangeIndex2D::Best RangeIndex2D::best_in_chunk(std::uint32_t level, std::size_t from,
                                               std::size_t count, Best best) const {
  const std::size_t end = from + count;
  std::size_t i = from;
  for (; i + 8 <= end; i += 8) {
    const Best& c = octet_best_[octet(level, i)];
    if (c.beats(best)) best = c;
  }
  for (; i < end; ++i) {
    const std::uint32_t r = ids_[index(level, i)];
    const Best c{dp_[r], r};
    if (c.dp >= 0 && c.beats(best)) best = c;
  }
  return best;
}

RangeIndex2D::Best RangeIndex2D::best_prefix(std::uint32_t level, std::size_t start,
                                             std::size_t prefix) const {
  const Best* tree = chunk_best_.data() + word(level, start) - 1;
  Best best;
  for (std::size_t c = prefix >> 6; c > 0; c -= lowbit(c))
    if (tree[c].beats(best)) best = tree[c];
  if (prefix & 63)
    best = best_in_chunk(level, start + (prefix & ~std::size_t{63}), prefix & 63, best);
  return best;
}

// Slot of the (k+1)-th unfinished entry of a block.
std::size_t RangeIndex2D::kth_unfinished(std::uint32_t level, std::size_t start,
                                         std::uint64_t k) const {
  const std::uint32_t* tree = chunk_cnt_.data() + word(level, start) - 1;
  const std::size_t chunks = (block_len(level, start) + 63) / 64;
  std::size_t pos = 0;
  for (std::size_t step = std::bit_floor(chunks); step > 0; step >>= 1) {
    if (pos + step <= chunks && tree[pos + step] <= k) {
      pos += step;
      k -= tree[pos];
    }
  }
  return start + pos * 64 + select_bit(live_[word(level, start) + pos], k);
}

std::size_t RangeIndex2D::y_rank_in_block(std::uint32_t level, std::size_t start,
                                          std::uint32_t qy) const {
  const std::uint32_t* ids = ids_.data() + index(level, start);
  std::size_t lo = 0, hi = block_len(level, start);
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (ys_[ids[mid]] < qy) lo = mid + 1;
    else hi = mid;
  }
  return lo;
}

std::uint32_t RangeIndex2D::rightmost_in_group(const Group& g) const {
  if (g.open == 0) return kNoWitness;
  return xs_[g.begin + 63 - static_cast<std::size_t>(std::countl_zero(g.open))];
}

std::uint32_t RangeIndex2D::rightmost_unfinished(const Piece& piece, std::uint32_t qy) const {
  std::uint32_t level = piece.level;
  std::size_t start = piece.start;
  while (level > kLeafBits) {
    const std::size_t right = start + (std::size_t{1} << (level - 1));
    if (right < n_) {
      const std::size_t r = y_rank_in_block(level - 1, right, qy);
      if (count_prefix(level - 1, right, r) > 0) start = right;
    }
    --level;
  }
  return rightmost_in_group(scan_group(start, std::min(start + 64, n_), qy));
}

// Ranks [begin, end) must lie in one 64-group.
RangeIndex2D::Group RangeIndex2D::scan_group(std::size_t begin, std::size_t end,
                                             std::uint32_t qy) const {
  Group g;
  g.begin = begin & ~std::size_t{63};
  for (std::size_t r = begin; r < end; ++r)
    g.below |= static_cast<std::uint64_t>(ys_[r] < qy) << (r - g.begin);
  if (g.below) g.open = g.below & open_[g.begin >> 6];
  return g;
}

RangeIndex2D::Group RangeIndex2D::group_below(std::size_t rank) const {
  Group g;
  g.begin = rank & ~std::size_t{63};
  g.below = below_[rank];
  if (g.below) g.open = g.below & open_[rank >> 6];
  return g;
}

std::uint64_t RangeIndex2D::draw_bits(std::uint32_t qx, std::uint32_t qy) const {
  if (source_ == WitnessSource::true_random) {
    thread_local std::mt19937_64 engine{std::random_device{}()};
    return engine();
  }
  return hash3(seed_, epoch_, (static_cast<std::uint64_t>(qx) << 32) | qy);
}

LisAggregate RangeIndex2D::assemble(std::span<const Piece> pieces, const Group& group,
                                    std::uint32_t qx, std::uint32_t qy) const {
  LisAggregate out;
  out.unfinished = static_cast<std::uint64_t>(std::popcount(group.open));
  for (const Piece& p : pieces) out.unfinished += p.unfinished;
  if (out.unfinished == 0) {
    Best best;
    for (std::uint64_t m = group.below; m; m &= m - 1) {
      const std::size_t r = group.begin + static_cast<std::size_t>(std::countr_zero(m));
      const Best c{dp_[r], static_cast<std::uint32_t>(r)};
      if (c.beats(best)) best = c;
    }
    for (const Piece& p : pieces) {
      const Best b = best_prefix(p.level, p.start, p.prefix);
      if (b.beats(best)) best = b;
    }
    if (best.rank != kNoRank) {
      out.dp_max = best.dp;
      out.witness = xs_[best.rank];
    }
    return out;
  }
  out.dp_max = LisAggregate::kUnfinishedDp;
  if (policy_ == WitnessPolicy::rightmost) {
    // Pieces run left to right in x and the group lies right of all of them.
    if (group.open) {
      out.witness = rightmost_in_group(group);
      return out;
    }
    for (std::size_t i = pieces.size(); i-- > 0;) {
      if (pieces[i].unfinished > 0) {
        out.witness = rightmost_unfinished(pieces[i], qy);
        break;
      }
    }
    return out;
  }
  // Choosing a piece with probability proportional to its unfinished count
  // and then a uniform entry inside it is the same distribution as folding
  // the pieces pairwise with combine().
  std::uint64_t k = bounded(draw_bits(qx, qy), out.unfinished);
  for (const Piece& p : pieces) {
    if (k < p.unfinished) {
      out.witness = xs_[ids_[index(p.level, kth_unfinished(p.level, p.start, k))]];
      return out;
    }
    k -= p.unfinished;
  }
  out.witness = xs_[group.begin + select_bit(group.open, k)];
  return out;
}

LisAggregate RangeIndex2D::dominance_query(std::uint32_t qx, std::uint32_t qy) const {
  const std::size_t p = static_cast<std::size_t>(
      std::lower_bound(xs_.begin(), xs_.end(), qx) - xs_.begin());
  Piece pieces[64];
  std::size_t np = 0;
  std::size_t start = 0;
  for (std::uint32_t L = kLeafBits + levels_; L-- > kLeafBits;) {
    if (!((p >> L) & 1U)) continue;
    const std::size_t prefix = y_rank_in_block(L, start, qy);
    pieces[np++] = Piece{L, start, prefix, count_prefix(L, start, prefix)};
    start += std::size_t{1} << L;
  }
  const Group g = scan_group(start, p, qy);
  return assemble(std::span<const Piece>(pieces, np), g, qx, qy);
}

LisAggregate RangeIndex2D::query_below(std::size_t rank) const {
  Piece pieces[64];
  std::size_t np = 0;
  std::size_t start = 0;
  for (std::uint32_t L = kLeafBits + levels_; L-- > kLeafBits;) {
    if (!((rank >> L) & 1U)) continue;
    const std::size_t prefix = left_rank_[per_rank(rank, L)];
    pieces[np++] = Piece{L, start, prefix, count_prefix(L, start, prefix)};
    start += std::size_t{1} << L;
  }
  return assemble(std::span<const Piece>(pieces, np), group_below(rank), xs_[rank], ys_[rank]);
}

std::size_t RangeIndex2D::rank_of_x(std::uint32_t x) const {
  auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
  if (it == xs_.end() || *it != x)
    fail(Errc::invalid_input, "range index: unknown x " + std::to_string(x));
  return static_cast<std::size_t>(it - xs_.begin());
}

bool RangeIndex2D::finished(std::uint32_t x) const { return dp_[rank_of_x(x)] >= 0; }

std::int64_t RangeIndex2D::dp_of(std::uint32_t x) const {
  const std::int64_t dp = dp_[rank_of_x(x)];
  return dp < 0 ? LisAggregate::kUnfinishedDp : dp;
}

void RangeIndex2D::finalize_batch(
    std::span<const std::pair<std::uint32_t, std::int64_t>> updates) {
  if (updates.empty()) return;
  std::vector<std::uint32_t> ranks(updates.size());
  for (std::size_t i = 0; i < updates.size(); ++i) {
    const auto [x, dp] = updates[i];
    ranks[i] = static_cast<std::uint32_t>(rank_of_x(x));
    if (dp_[ranks[i]] >= 0)
      fail(Errc::already_finished, "range index: point x=" + std::to_string(x) + " already finished");
    if (dp < 0) fail(Errc::invalid_input, "range index: dp must be non-negative");
    if (dp == LisAggregate::kUnfinishedDp) fail(Errc::invalid_input, "range index: dp must be finite");
  }
  for (std::size_t i = 0; i < updates.size(); ++i) {
    if (dp_[ranks[i]] >= 0) {
      // Seen earlier in this batch: undo before reporting.
      for (std::size_t j = 0; j < i; ++j) {
        dp_[ranks[j]] = -1;
        open_[ranks[j] >> 6] |= std::uint64_t{1} << (ranks[j] & 63);
      }
      fail(Errc::already_finished, "range index: point finalized twice in one batch");
    }
    dp_[ranks[i]] = updates[i].second;
    open_[ranks[i] >> 6] &= ~(std::uint64_t{1} << (ranks[i] & 63));
  }

  // The top stored level is never a query piece, so it is left alone.
  const std::size_t live_levels = levels_ > 0 ? levels_ - 1 : 0;
  parallel_for(0, live_levels, [&](std::size_t m) {
    const auto L = static_cast<std::uint32_t>(m) + kLeafBits;
    const std::size_t width = std::size_t{1} << L;
    for (std::size_t i = 0; i < updates.size(); ++i) {
      if (i + 16 < updates.size()) __builtin_prefetch(&slot_of_[per_rank(ranks[i + 16], L)]);
      if (i + 8 < updates.size()) {
        const std::size_t ahead = slot_of_[per_rank(ranks[i + 8], L)];
        __builtin_prefetch(&octet_best_[octet(L, ahead)], 1);
      }
      const std::uint32_t r = ranks[i];
      const std::size_t slot = slot_of_[per_rank(r, L)];
      const std::size_t start = slot & ~(width - 1);
      const Best mine{updates[i].second, r};
      live_[word(L, slot)] &= ~(std::uint64_t{1} << (slot & 63));
      Best& oct = octet_best_[octet(L, slot)];
      if (mine.beats(oct)) oct = mine;
      std::uint32_t* tree = chunk_cnt_.data() + word(L, start) - 1;
      Best* best = chunk_best_.data() + word(L, start) - 1;
      const std::size_t chunks = (block_len(L, start) + 63) / 64;
      for (std::size_t c = ((slot - start) >> 6) + 1; c <= chunks; c += lowbit(c)) {
        tree[c] -= 1;
        if (mine.beats(best[c])) best[c] = mine;
      }
    }
  }, 1);
  ++epoch_;
}

}  // namespace phaselib
