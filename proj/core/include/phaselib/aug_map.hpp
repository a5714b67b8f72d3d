#pragma once

// Batch-parallel ordered map with a user-supplied monoid augmentation.
//
// The tree is a treap whose priorities are a hash of the key, so the shape is
// a pure function of the key set: every sequence of batch operations that
// ends with the same contents yields the same tree, independent of how the
// work was scheduled. All bulk operations are join-based (split / join) and
// recurse in parallel on large subtrees.

#include <algorithm>
#include <bit>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "phaselib/error.hpp"
#include "phaselib/parallel.hpp"
#include "phaselib/random.hpp"

namespace phaselib {

// ---------------------------------------------------------------------------
// Key hashing for treap priorities.

template <class T>
  requires std::integral<T> || std::is_enum_v<T>
constexpr std::uint64_t key_hash(const T& k) noexcept {
  return mix64(static_cast<std::uint64_t>(k));
}

template <std::floating_point T>
constexpr std::uint64_t key_hash(const T& k) noexcept {
  double d = static_cast<double>(k);
  if (d == 0.0) d = 0.0;  // fold -0.0 onto +0.0
  return mix64(std::bit_cast<std::uint64_t>(d));
}

template <class A, class B>
constexpr std::uint64_t key_hash(const std::pair<A, B>& k) noexcept {
  return hash_combine(key_hash(k.first), key_hash(k.second));
}

template <class K>
struct KeyHash {
  std::uint64_t operator()(const K& k) const noexcept { return key_hash(k); }
};

// ---------------------------------------------------------------------------
// Monoid policy: identity, combine (associative), base(key, value).

template <class M, class K, class V>
concept AugMonoid = requires(const K& k, const V& v, const typename M::aug_type& a) {
  typename M::aug_type;
  { M::identity() } -> std::convertible_to<typename M::aug_type>;
  { M::base(k, v) } -> std::convertible_to<typename M::aug_type>;
  { M::combine(a, a) } -> std::convertible_to<typename M::aug_type>;
};

template <class K, class V>
struct SumOfValues {
  using aug_type = V;
  static V identity() { return V{}; }
  static V base(const K&, const V& v) { return v; }
  static V combine(const V& a, const V& b) { return a + b; }
};

template <class K, class V>
struct MaxOfValues {
  using aug_type = V;
  static V identity() { return std::numeric_limits<V>::lowest(); }
  static V base(const K&, const V& v) { return v; }
  static V combine(const V& a, const V& b) { return a < b ? b : a; }
};

template <class K, class V>
struct MinOfValues {
  using aug_type = V;
  static V identity() { return std::numeric_limits<V>::max(); }
  static V base(const K&, const V& v) { return v; }
  static V combine(const V& a, const V& b) { return b < a ? b : a; }
};

/// Counts entries; useful when only the ordered structure matters.
template <class K, class V>
struct CountEntries {
  using aug_type = std::size_t;
  static std::size_t identity() { return 0; }
  static std::size_t base(const K&, const V&) { return 1; }
  static std::size_t combine(std::size_t a, std::size_t b) { return a + b; }
};

/// Endpoint openness for range queries.
enum class Interval { closed, open, left_open, right_open };

template <class K, class V, class M, class Compare = std::less<K>,
          class Hash = KeyHash<K>>
  requires AugMonoid<M, K, V>
class AugMap {
 public:
  using key_type = K;
  using mapped_type = V;
  using aug_type = typename M::aug_type;
  using entry_type = std::pair<K, V>;

  struct UpdateSummary {
    std::size_t applied = 0;
    std::vector<K> missing;
  };

  AugMap() = default;
  ~AugMap() { destroy(root_); }

  AugMap(const AugMap& other) : root_(clone(other.root_)) {}
  AugMap(AugMap&& other) noexcept : root_(std::exchange(other.root_, nullptr)) {}
  AugMap& operator=(AugMap other) noexcept {
    std::swap(root_, other.root_);
    return *this;
  }

  /// Builds from entries sorted strictly by key.
  static AugMap build(std::span<const entry_type> entries) {
    check_sorted_unique(entries);
    AugMap m;
    m.root_ = build_cartesian(entries);
    return m;
  }
  static AugMap build(const std::vector<entry_type>& entries) {
    return build(std::span<const entry_type>(entries));
  }

  std::size_t size() const noexcept { return size_of(root_); }
  bool empty() const noexcept { return root_ == nullptr; }

  aug_type aug_all() const { return aug_of(root_); }

  const V* find(const K& k) const {
    const Node* t = root_;
    while (t) {
      if (less(k, t->key)) t = t->left;
      else if (less(t->key, k)) t = t->right;
      else return &t->value;
    }
    return nullptr;
  }
  bool contains(const K& k) const { return find(k) != nullptr; }

  std::optional<entry_type> first() const {
    const Node* t = root_;
    if (!t) return std::nullopt;
    while (t->left) t = t->left;
    return entry_type{t->key, t->value};
  }
  std::optional<entry_type> last() const {
    const Node* t = root_;
    if (!t) return std::nullopt;
    while (t->right) t = t->right;
    return entry_type{t->key, t->value};
  }

  /// Fold of base(k, v) over lo..hi in key order. Empty or inverted ranges
  /// yield the identity.
  aug_type range_sum(const K& lo, const K& hi,
                     Interval iv = Interval::closed) const {
    const bool lo_inc = iv == Interval::closed || iv == Interval::right_open;
    const bool hi_inc = iv == Interval::closed || iv == Interval::left_open;
    const Node* t = root_;
    while (t) {
      if (!above_lo(t->key, lo, lo_inc)) t = t->right;
      else if (!below_hi(t->key, hi, hi_inc)) t = t->left;
      else {
        return M::combine(M::combine(fold_from(t->left, lo, lo_inc), base_of(t)),
                          fold_upto(t->right, hi, hi_inc));
      }
    }
    return M::identity();
  }

  /// Fold over all keys <= hi (or < hi when `inclusive` is false).
  aug_type prefix_sum(const K& hi, bool inclusive = true) const {
    return fold_upto(root_, hi, inclusive);
  }
  /// Fold over all keys >= lo (or > lo).
  aug_type suffix_sum(const K& lo, bool inclusive = true) const {
    return fold_from(root_, lo, inclusive);
  }

  /// Splits into (keys <= k, keys > k).
  std::pair<AugMap, AugMap> split_at(const K& k) && {
    auto [l, m, r] = split(std::exchange(root_, nullptr), k);
    if (m) l = join(l, m, nullptr);
    return {AugMap(l), AugMap(r)};
  }
  /// Splits into (keys < k, keys >= k).
  std::pair<AugMap, AugMap> split_before(const K& k) && {
    auto [l, m, r] = split(std::exchange(root_, nullptr), k);
    if (m) r = join(nullptr, m, r);
    return {AugMap(l), AugMap(r)};
  }

  /// Concatenates two maps whose key ranges do not interleave the wrong way:
  /// every key of `left` must be smaller than every key of `right`.
  static AugMap concat(AugMap left, AugMap right) {
    if (left.root_ && right.root_) {
      const auto lk = left.last()->first;
      const auto rk = right.first()->first;
      if (!less(lk, rk)) fail(Errc::unsorted_keys, "concat: key ranges overlap");
    }
    return AugMap(join2(std::exchange(left.root_, nullptr),
                        std::exchange(right.root_, nullptr)));
  }

  /// Union; on shared keys the value from `b` wins.
  static AugMap map_union(AugMap a, AugMap b) {
    return AugMap(union_nodes(std::exchange(a.root_, nullptr),
                              std::exchange(b.root_, nullptr)));
  }

  /// Inserts a batch of distinct keys; existing keys take the new value.
  void multi_insert(std::vector<entry_type> batch) {
    sort_batch(batch);
    root_ = insert_sorted(root_, std::span<const entry_type>(batch));
  }

  /// Removes every listed key that is present.
  void multi_delete(std::vector<K> keys) {
    std::sort(keys.begin(), keys.end(), [](const K& a, const K& b) { return less(a, b); });
    for (std::size_t i = 1; i < keys.size(); ++i)
      if (!less(keys[i - 1], keys[i])) fail(Errc::duplicate_key, "multi_delete: repeated key in batch");
    root_ = delete_sorted(root_, std::span<const K>(keys));
  }

  /// Replaces values of present keys; absent keys are reported, not inserted.
  UpdateSummary multi_update(std::vector<entry_type> batch) {
    sort_batch(batch);
    UpdateSummary out;
    out.missing = update_sorted(root_, std::span<const entry_type>(batch));
    out.applied = batch.size() - out.missing.size();
    return out;
  }

  void insert(const K& k, const V& v) { multi_insert({entry_type{k, v}}); }
  void erase(const K& k) { multi_delete({k}); }

  std::vector<entry_type> flatten() const {
    std::vector<entry_type> out(size());
    flatten_into(root_, out.data());
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    visit(root_, f);
  }

  /// Structural self-check used by tests: heap order on priorities, key order,
  /// subtree sizes, and (when aug_type is comparable) stored aggregates.
  bool validate() const {
    bool ok = true;
    check_node(root_, nullptr, nullptr, ok);
    return ok;
  }

 private:
  struct Node {
    K key;
    V value;
    aug_type aug;
    std::uint64_t prio;
    std::size_t size = 1;
    Node* left = nullptr;
    Node* right = nullptr;
  };

  static constexpr std::size_t kParThreshold = 2048;

  explicit AugMap(Node* root) : root_(root) {}

  static bool less(const K& a, const K& b) { return Compare{}(a, b); }
  static std::size_t size_of(const Node* t) { return t ? t->size : 0; }
  static aug_type aug_of(const Node* t) { return t ? t->aug : M::identity(); }
  static aug_type base_of(const Node* t) { return M::base(t->key, t->value); }

  static void update(Node* t) {
    t->size = 1 + size_of(t->left) + size_of(t->right);
    t->aug = M::combine(M::combine(aug_of(t->left), base_of(t)), aug_of(t->right));
  }

  static Node* make(const K& k, const V& v) {
    Node* t = new Node{k, v, M::base(k, v), Hash{}(k)};
    return t;
  }

  // Total order on priorities; ties resolved by key so the shape is unique.
  static bool higher(const Node* a, const Node* b) {
    if (a->prio != b->prio) return a->prio > b->prio;
    return less(b->key, a->key);
  }

  static void destroy(Node* t) {
    if (!t) return;
    destroy(t->left);
    destroy(t->right);
    delete t;
  }

  static Node* clone(const Node* t) {
    if (!t) return nullptr;
    Node* c = new Node{t->key, t->value, t->aug, t->prio, t->size};
    par_do(t->size > kParThreshold,
           [&] { c->left = clone(t->left); },
           [&] { c->right = clone(t->right); });
    return c;
  }

  static bool above_lo(const K& key, const K& lo, bool inc) {
    return inc ? !less(key, lo) : less(lo, key);
  }
  static bool below_hi(const K& key, const K& hi, bool inc) {
    return inc ? !less(hi, key) : less(key, hi);
  }

  static aug_type fold_from(const Node* t, const K& lo, bool inc) {
    if (!t) return M::identity();
    if (!above_lo(t->key, lo, inc)) return fold_from(t->right, lo, inc);
    return M::combine(M::combine(fold_from(t->left, lo, inc), base_of(t)), aug_of(t->right));
  }

  static aug_type fold_upto(const Node* t, const K& hi, bool inc) {
    aug_type acc = M::identity();
    while (t) {
      if (below_hi(t->key, hi, inc)) {
        acc = M::combine(acc, M::combine(aug_of(t->left), base_of(t)));
        t = t->right;
      } else {
        t = t->left;
      }
    }
    return acc;
  }

  static Node* join(Node* l, Node* m, Node* r) {
    const bool m_over_l = !l || higher(m, l);
    const bool m_over_r = !r || higher(m, r);
    if (m_over_l && m_over_r) {
      m->left = l;
      m->right = r;
      update(m);
      return m;
    }
    if (l && (!r || higher(l, r))) {
      l->right = join(l->right, m, r);
      update(l);
      return l;
    }
    r->left = join(l, m, r->left);
    update(r);
    return r;
  }

  static Node* join2(Node* l, Node* r) {
    if (!l) return r;
    if (!r) return l;
    if (higher(l, r)) {
      l->right = join2(l->right, r);
      update(l);
      return l;
    }
    r->left = join2(l, r->left);
    update(r);
    return r;
  }

  static std::tuple<Node*, Node*, Node*> split(Node* t, const K& k) {
    if (!t) return {nullptr, nullptr, nullptr};
    if (less(k, t->key)) {
      auto [l, m, r] = split(t->left, k);
      t->left = r;
      update(t);
      return {l, m, t};
    }
    if (less(t->key, k)) {
      auto [l, m, r] = split(t->right, k);
      t->right = l;
      update(t);
      return {t, m, r};
    }
    Node* l = t->left;
    Node* r = t->right;
    t->left = t->right = nullptr;
    update(t);
    return {l, t, r};
  }

  static Node* union_nodes(Node* a, Node* b) {
    if (!a) return b;
    if (!b) return a;
    if (higher(a, b)) {
      auto [bl, bm, br] = split(b, a->key);
      if (bm) {
        a->value = bm->value;
        delete bm;
      }
      Node* al = a->left;
      Node* ar = a->right;
      const bool par = a->size + size_of(bl) + size_of(br) > kParThreshold;
      par_do(par, [&] { al = union_nodes(al, bl); }, [&] { ar = union_nodes(ar, br); });
      a->left = al;
      a->right = ar;
      update(a);
      return a;
    }
    auto [al, am, ar] = split(a, b->key);
    if (am) delete am;
    Node* bl = b->left;
    Node* br = b->right;
    const bool par = b->size + size_of(al) + size_of(ar) > kParThreshold;
    par_do(par, [&] { bl = union_nodes(al, bl); }, [&] { br = union_nodes(ar, br); });
    b->left = bl;
    b->right = br;
    update(b);
    return b;
  }

  static Node* insert_sorted(Node* t, std::span<const entry_type> batch) {
    if (batch.empty()) return t;
    if (!t) return build_cartesian(batch);
    const std::size_t mid = batch.size() / 2;
    auto [l, m, r] = split(t, batch[mid].first);
    if (m) {
      m->value = batch[mid].second;
    } else {
      m = make(batch[mid].first, batch[mid].second);
    }
    const bool par = batch.size() + size_of(l) + size_of(r) > kParThreshold;
    par_do(par, [&] { l = insert_sorted(l, batch.first(mid)); },
           [&] { r = insert_sorted(r, batch.subspan(mid + 1)); });
    return join(l, m, r);
  }

  static Node* delete_sorted(Node* t, std::span<const K> keys) {
    if (!t || keys.empty()) return t;
    const std::size_t mid = keys.size() / 2;
    auto [l, m, r] = split(t, keys[mid]);
    if (m) delete m;
    const bool par = size_of(l) + size_of(r) > kParThreshold;
    par_do(par, [&] { l = delete_sorted(l, keys.first(mid)); },
           [&] { r = delete_sorted(r, keys.subspan(mid + 1)); });
    return join2(l, r);
  }

  static std::vector<K> update_sorted(Node* t, std::span<const entry_type> batch) {
    if (batch.empty()) return {};
    if (!t) {
      std::vector<K> missing;
      missing.reserve(batch.size());
      for (const auto& e : batch) missing.push_back(e.first);
      return missing;
    }
    auto it = std::lower_bound(batch.begin(), batch.end(), t->key,
                               [](const entry_type& e, const K& k) { return less(e.first, k); });
    const std::size_t lo = static_cast<std::size_t>(it - batch.begin());
    std::size_t hi = lo;
    if (it != batch.end() && !less(t->key, it->first)) {
      t->value = it->second;
      hi = lo + 1;
    }
    std::vector<K> ml, mr;
    const bool par = t->size > kParThreshold && batch.size() > 64;
    par_do(par, [&] { ml = update_sorted(t->left, batch.first(lo)); },
           [&] { mr = update_sorted(t->right, batch.subspan(hi)); });
    update(t);
    ml.insert(ml.end(), mr.begin(), mr.end());
    return ml;
  }

  // O(n) treap construction from a sorted run (right-spine stack).
  static Node* build_cartesian(std::span<const entry_type> entries) {
    if (entries.empty()) return nullptr;
    std::vector<Node*> nodes(entries.size());
    parallel_for(0, entries.size(), [&](std::size_t i) {
      nodes[i] = make(entries[i].first, entries[i].second);
    });
    std::vector<Node*> spine;
    for (Node* x : nodes) {
      Node* last = nullptr;
      while (!spine.empty() && higher(x, spine.back())) {
        last = spine.back();
        spine.pop_back();
      }
      x->left = last;
      if (!spine.empty()) spine.back()->right = x;
      spine.push_back(x);
    }
    fix_up(spine.front(), 0);
    return spine.front();
  }

  static void fix_up(Node* t, int depth) {
    if (!t) return;
    par_do(depth < 6 && t->left && t->right,
           [&] { fix_up(t->left, depth + 1); },
           [&] { fix_up(t->right, depth + 1); });
    update(t);
  }

  static void flatten_into(const Node* t, entry_type* out) {
    if (!t) return;
    const std::size_t ls = size_of(t->left);
    out[ls] = entry_type{t->key, t->value};
    par_do(t->size > kParThreshold,
           [&] { flatten_into(t->left, out); },
           [&] { flatten_into(t->right, out + ls + 1); });
  }

  template <class F>
  static void visit(const Node* t, F& f) {
    if (!t) return;
    visit(t->left, f);
    f(t->key, t->value);
    visit(t->right, f);
  }

  static void check_node(const Node* t, const K* lo, const K* hi, bool& ok) {
    if (!t || !ok) return;
    if ((lo && !less(*lo, t->key)) || (hi && !less(t->key, *hi))) ok = false;
    if (t->left && higher(t->left, t)) ok = false;
    if (t->right && higher(t->right, t)) ok = false;
    if (t->size != 1 + size_of(t->left) + size_of(t->right)) ok = false;
    if constexpr (std::equality_comparable<aug_type>) {
      const aug_type want =
          M::combine(M::combine(aug_of(t->left), base_of(t)), aug_of(t->right));
      if (!(want == t->aug)) ok = false;
    }
    check_node(t->left, lo, &t->key, ok);
    check_node(t->right, &t->key, hi, ok);
  }

  static void sort_batch(std::vector<entry_type>& batch) {
    std::sort(batch.begin(), batch.end(),
              [](const entry_type& a, const entry_type& b) { return less(a.first, b.first); });
    for (std::size_t i = 1; i < batch.size(); ++i)
      if (!less(batch[i - 1].first, batch[i].first))
        fail(Errc::duplicate_key, "batch contains a repeated key");
  }

  static void check_sorted_unique(std::span<const entry_type> entries) {
    for (std::size_t i = 1; i < entries.size(); ++i) {
      if (less(entries[i].first, entries[i - 1].first))
        fail(Errc::unsorted_keys, "build: entries not sorted at position " + std::to_string(i));
      if (!less(entries[i - 1].first, entries[i].first))
        fail(Errc::duplicate_key, "build: duplicate key at position " + std::to_string(i));
    }
  }

  Node* root_ = nullptr;
};

}  // namespace phaselib
