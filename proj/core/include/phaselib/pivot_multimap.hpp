#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace phaselib {

using ObjectId = std::uint32_t;

/// Multimap from pivot id to the objects it blocks. Pivot ids are dense in
/// [0, pivot_bound); each pivot owns a sorted set of object ids.
class PivotMultiMap {
 public:
  using Pair = std::pair<ObjectId, ObjectId>;  // (pivot, object)

  PivotMultiMap() = default;
  explicit PivotMultiMap(std::size_t pivot_bound) : buckets_(pivot_bound) {}

  std::size_t pivot_bound() const noexcept { return buckets_.size(); }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  /// Adds pairs; pairs already present are ignored. Pivots must be below
  /// pivot_bound().
  void multi_insert(std::vector<Pair> pairs);

  /// Removes pairs that are present; absent pairs are ignored.
  void multi_delete(std::vector<Pair> pairs);

  /// Drops every pair whose pivot is listed.
  void erase_pivots(std::span<const ObjectId> pivots);

  /// Objects whose pivot is in `pivots`, without duplicates. Output order is
  /// ascending pivot, then ascending object id within a pivot (an object
  /// reachable from two queried pivots appears at its first occurrence).
  std::vector<ObjectId> multi_find(std::span<const ObjectId> pivots) const;

  std::span<const ObjectId> objects_of(ObjectId pivot) const;

 private:
  std::vector<std::vector<ObjectId>> buckets_;
  std::size_t size_ = 0;
};

}  // namespace phaselib
