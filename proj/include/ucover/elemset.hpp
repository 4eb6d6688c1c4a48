#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "ucover/common.hpp"

namespace ucover {

// A subset of a fixed universe {0, ..., n-1}, stored as a word-packed bitset.
// Intersection tests are the inner loop of every hit-probability evaluation,
// so they must stay O(words).
class ElemSet {
 public:
  ElemSet() = default;

  explicit ElemSet(int universe) : n_(universe), words_((universe + 63) / 64, 0) {
    if (universe < 0) throw ValidationError("ElemSet: negative universe size");
  }

  static ElemSet of(int universe, std::initializer_list<int> ids) {
    ElemSet s(universe);
    for (int id : ids) s.insert(id);
    return s;
  }

  static ElemSet of(int universe, const std::vector<int>& ids) {
    ElemSet s(universe);
    for (int id : ids) s.insert(id);
    return s;
  }

  static ElemSet full(int universe) {
    ElemSet s(universe);
    for (int u = 0; u < universe; ++u) s.insert(u);
    return s;
  }

  int universe() const { return n_; }

  bool contains(int id) const {
    check_id(id);
    return (words_[id >> 6] >> (id & 63)) & 1ULL;
  }

  void insert(int id) {
    check_id(id);
    words_[id >> 6] |= 1ULL << (id & 63);
  }

  void erase(int id) {
    check_id(id);
    words_[id >> 6] &= ~(1ULL << (id & 63));
  }

  int count() const {
    int c = 0;
    for (uint64_t w : words_) c += __builtin_popcountll(w);
    return c;
  }

  bool empty() const {
    for (uint64_t w : words_) {
      if (w) return false;
    }
    return true;
  }

  bool intersects(const ElemSet& other) const {
    for (size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & other.words_[i]) return true;
    }
    return false;
  }

  bool is_subset_of(const ElemSet& other) const {
    for (size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~other.words_[i]) return false;
    }
    return true;
  }

  ElemSet united(const ElemSet& other) const {
    ElemSet r(*this);
    for (size_t i = 0; i < words_.size(); ++i) r.words_[i] |= other.words_[i];
    return r;
  }

  ElemSet intersected(const ElemSet& other) const {
    ElemSet r(*this);
    for (size_t i = 0; i < words_.size(); ++i) r.words_[i] &= other.words_[i];
    return r;
  }

  ElemSet minus(const ElemSet& other) const {
    ElemSet r(*this);
    for (size_t i = 0; i < words_.size(); ++i) r.words_[i] &= ~other.words_[i];
    return r;
  }

  std::vector<int> to_vector() const {
    std::vector<int> ids;
    ids.reserve(count());
    for (size_t i = 0; i < words_.size(); ++i) {
      uint64_t w = words_[i];
      while (w) {
        int b = __builtin_ctzll(w);
        ids.push_back(static_cast<int>(i) * 64 + b);
        w &= w - 1;
      }
    }
    return ids;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (size_t i = 0; i < words_.size(); ++i) {
      uint64_t w = words_[i];
      while (w) {
        int b = __builtin_ctzll(w);
        fn(static_cast<int>(i) * 64 + b);
        w &= w - 1;
      }
    }
  }

  bool operator==(const ElemSet& other) const = default;

  // Total order: treats the bitset as a little-endian integer. Used only for
  // map keys and deterministic output ordering.
  std::strong_ordering operator<=>(const ElemSet& other) const {
    if (auto c = n_ <=> other.n_; c != 0) return c;
    for (size_t i = words_.size(); i-- > 0;) {
      if (auto c = words_[i] <=> other.words_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

 private:
  void check_id(int id) const {
    if (id < 0 || id >= n_) throw ValidationError("ElemSet: element id out of range");
  }

  int n_ = 0;
  std::vector<uint64_t> words_;
};

// Orders sets by cardinality, then lexicographically on the ascending element
// list. This is the tie-break rule the minimizers use.
inline bool smaller_then_lex(const ElemSet& a, const ElemSet& b) {
  int ca = a.count(), cb = b.count();
  if (ca != cb) return ca < cb;
  auto va = a.to_vector(), vb = b.to_vector();
  return va < vb;
}

}  // namespace ucover
