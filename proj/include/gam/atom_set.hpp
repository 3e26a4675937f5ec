#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace gam {

using AtomId = std::uint32_t;
using ActionId = std::uint32_t;

// Sorted, duplicate-free vector of atom ids. Every set stored in the model
// uses this form so iteration is always in ascending id order.
using AtomSet = std::vector<AtomId>;

namespace sets {

inline AtomSet normalized(AtomSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline bool contains(std::span<const AtomId> s, AtomId a) {
  return std::binary_search(s.begin(), s.end(), a);
}

inline bool is_subset(std::span<const AtomId> sub, std::span<const AtomId> super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

inline bool intersects(std::span<const AtomId> a, std::span<const AtomId> b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

inline AtomSet set_union(std::span<const AtomId> a, std::span<const AtomId> b) {
  AtomSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline AtomSet set_intersection(std::span<const AtomId> a, std::span<const AtomId> b) {
  AtomSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline AtomSet set_difference(std::span<const AtomId> a, std::span<const AtomId> b) {
  AtomSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace sets

// Fixed-universe bitset over atom ids.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(__builtin_popcountll(w));
    return n;
  }

  bool any_of(std::span<const AtomId> ids) const {
    for (auto a : ids) {
      if (test(a)) return true;
    }
    return false;
  }

  bool all_of(std::span<const AtomId> ids) const {
    for (auto a : ids) {
      if (!test(a)) return false;
    }
    return true;
  }

  void set_all(std::span<const AtomId> ids) {
    for (auto a : ids) set(a);
  }

  void reset_all(std::span<const AtomId> ids) {
    for (auto a : ids) reset(a);
  }

  bool is_subset_of(const Bitset& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~other.words_[i]) return false;
    }
    return true;
  }

  Bitset& operator|=(const Bitset& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }

  AtomSet to_set() const {
    AtomSet out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      auto bits = words_[w];
      while (bits != 0) {
        int b = __builtin_ctzll(bits);
        out.push_back(static_cast<AtomId>(w * 64 + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  std::span<const std::uint64_t> words() const { return words_; }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ULL;
    for (auto w : words_) {
      h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace gam
