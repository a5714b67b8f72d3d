#include "phaselib/pivot_multimap.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <utility>

#include "phaselib/error.hpp"
#include "phaselib/parallel.hpp"

namespace phaselib {

namespace {

// Start offsets of each pivot's run inside sorted pairs.
std::vector<std::size_t> run_starts(const std::vector<PivotMultiMap::Pair>& pairs) {
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (i == 0 || pairs[i].first != pairs[i - 1].first) starts.push_back(i);
  starts.push_back(pairs.size());
  return starts;
}

// LSD radix sort, 11 bits per pass; passes where every key shares the
// digit are skipped.
void radix_sort(std::vector<std::uint64_t>& keys, int bits) {
  std::vector<std::uint64_t> tmp(keys.size());
  std::vector<std::size_t> count(2048);
  for (int shift = 0; shift < bits; shift += 11) {
    std::fill(count.begin(), count.end(), 0);
    for (std::uint64_t k : keys) ++count[(k >> shift) & 2047];
    if (*std::max_element(count.begin(), count.end()) == keys.size()) continue;
    std::size_t sum = 0;
    for (auto& c : count) sum += std::exchange(c, sum);
    for (std::uint64_t k : keys) tmp[count[(k >> shift) & 2047]++] = k;
    keys.swap(tmp);
  }
}

// Sorts by (pivot, object) through packed 64-bit keys.
void sort_unique(std::vector<PivotMultiMap::Pair>& pairs) {
  ObjectId max_obj = 0;
  for (const auto& p : pairs) max_obj = std::max(max_obj, p.second);
  const int shift = std::bit_width(max_obj);
  std::vector<std::uint64_t> keys(pairs.size());
  std::uint64_t top = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    keys[i] = (static_cast<std::uint64_t>(pairs[i].first) << shift) | pairs[i].second;
    top |= keys[i];
  }
  if (keys.size() < 4096) std::sort(keys.begin(), keys.end());
  else radix_sort(keys, std::bit_width(top));
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  pairs.resize(keys.size());
  const std::uint64_t low = (std::uint64_t{1} << shift) - 1;
  for (std::size_t i = 0; i < keys.size(); ++i)
    pairs[i] = {static_cast<ObjectId>(keys[i] >> shift), static_cast<ObjectId>(keys[i] & low)};
}

}  // namespace

void PivotMultiMap::multi_insert(std::vector<Pair> pairs) {
  sort_unique(pairs);
  for (const Pair& p : pairs) {
    if (p.first >= buckets_.size())
      fail(Errc::invalid_input, "pivot id " + std::to_string(p.first) + " out of range");
  }
  const auto starts = run_starts(pairs);
  const std::size_t runs = starts.size() - 1;
  std::vector<std::size_t> added(runs, 0);
  parallel_for(0, runs, [&](std::size_t r) {
    auto& bucket = buckets_[pairs[starts[r]].first];
    const std::size_t before = bucket.size();
    if (before == 0) {
      bucket.resize(starts[r + 1] - starts[r]);
      for (std::size_t i = starts[r]; i < starts[r + 1]; ++i) bucket[i - starts[r]] = pairs[i].second;
      added[r] = bucket.size();
      return;
    }
    for (std::size_t i = starts[r]; i < starts[r + 1]; ++i) bucket.push_back(pairs[i].second);
    const auto mid = bucket.begin() + static_cast<std::ptrdiff_t>(before);
    if (*(mid - 1) >= *mid) {
      std::inplace_merge(bucket.begin(), mid, bucket.end());
      bucket.erase(std::unique(bucket.begin(), bucket.end()), bucket.end());
    }
    added[r] = bucket.size() - before;
  }, 256);
  for (std::size_t a : added) size_ += a;
}

void PivotMultiMap::multi_delete(std::vector<Pair> pairs) {
  sort_unique(pairs);
  const auto starts = run_starts(pairs);
  const std::size_t runs = starts.size() - 1;
  std::vector<std::size_t> removed(runs, 0);
  parallel_for(0, runs, [&](std::size_t r) {
    const ObjectId pivot = pairs[starts[r]].first;
    if (pivot >= buckets_.size()) return;
    auto& bucket = buckets_[pivot];
    const std::size_t before = bucket.size();
    std::vector<ObjectId> doomed;
    for (std::size_t i = starts[r]; i < starts[r + 1]; ++i) doomed.push_back(pairs[i].second);
    std::vector<ObjectId> kept;
    std::set_difference(bucket.begin(), bucket.end(), doomed.begin(), doomed.end(),
                        std::back_inserter(kept));
    removed[r] = before - kept.size();
    bucket = std::move(kept);
  }, 16);
  for (std::size_t a : removed) size_ -= a;
}

void PivotMultiMap::erase_pivots(std::span<const ObjectId> pivots) {
  for (ObjectId p : pivots) {
    if (p >= buckets_.size()) continue;
    size_ -= buckets_[p].size();
    buckets_[p].clear();
    buckets_[p].shrink_to_fit();
  }
}

std::vector<ObjectId> PivotMultiMap::multi_find(std::span<const ObjectId> pivots) const {
  std::vector<ObjectId> sorted(pivots.begin(), pivots.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::size_t> offset(sorted.size() + 1, 0);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const std::size_t len = sorted[i] < buckets_.size() ? buckets_[sorted[i]].size() : 0;
    offset[i + 1] = offset[i] + len;
  }
  std::vector<ObjectId> out(offset.back());
  parallel_for(0, sorted.size(), [&](std::size_t i) {
    if (sorted[i] >= buckets_.size()) return;
    const auto& b = buckets_[sorted[i]];
    std::copy(b.begin(), b.end(), out.begin() + static_cast<std::ptrdiff_t>(offset[i]));
  }, 64);
  // An object may hang off more than one queried pivot; keep the first.
  if (sorted.size() > 1) {
    std::vector<ObjectId> seen(out);
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
      std::vector<std::pair<ObjectId, std::size_t>> tagged(out.size());
      for (std::size_t i = 0; i < out.size(); ++i) tagged[i] = {out[i], i};
      std::sort(tagged.begin(), tagged.end());
      std::vector<char> keep(out.size(), 0);
      for (std::size_t i = 0; i < tagged.size(); ++i)
        if (i == 0 || tagged[i].first != tagged[i - 1].first) keep[tagged[i].second] = 1;
      std::vector<ObjectId> unique;
      unique.reserve(out.size());
      for (std::size_t i = 0; i < out.size(); ++i)
        if (keep[i]) unique.push_back(out[i]);
      return unique;
    }
  }
  return out;
}

std::span<const ObjectId> PivotMultiMap::objects_of(ObjectId pivot) const {
  if (pivot >= buckets_.size()) return {};
  return buckets_[pivot];
}

}  // namespace phaselib
