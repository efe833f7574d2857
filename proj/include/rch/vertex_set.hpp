#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <vector>

namespace rch {

/// Fixed-width set of vertex ids in [0, 64·W).
template <int W>
class BasicVertexSet {
 public:
  static constexpr int kCapacity = 64 * W;

  constexpr BasicVertexSet() = default;

  BasicVertexSet(std::initializer_list<int> vertices) {
    for (int v : vertices) insert(v);
  }

  /// {0, 1, ..., n-1}
  static constexpr BasicVertexSet range(int n) {
    BasicVertexSet s;
    for (int i = 0; i < W; ++i) {
      const int lo = 64 * i;
      if (n >= lo + 64)
        s.words_[i] = ~std::uint64_t{0};
      else if (n > lo)
        s.words_[i] = (std::uint64_t{1} << (n - lo)) - 1;
    }
    return s;
  }

  static constexpr BasicVertexSet from_words(const std::array<std::uint64_t, W>& w) {
    BasicVertexSet s;
    s.words_ = w;
    return s;
  }

  constexpr bool contains(int v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }
  constexpr void insert(int v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  constexpr void erase(int v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }

  constexpr int size() const {
    int s = 0;
    for (std::uint64_t w : words_) s += std::popcount(w);
    return s;
  }
  constexpr bool empty() const {
    for (std::uint64_t w : words_)
      if (w != 0) return false;
    return true;
  }

  /// Smallest member, or -1 when empty.
  constexpr int first() const {
    for (int i = 0; i < W; ++i)
      if (words_[i] != 0) return 64 * i + std::countr_zero(words_[i]);
    return -1;
  }

  constexpr bool intersects(const BasicVertexSet& o) const {
    for (int i = 0; i < W; ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  constexpr bool is_subset_of(const BasicVertexSet& o) const { return (*this - o).empty(); }

  constexpr BasicVertexSet& operator&=(const BasicVertexSet& o) {
    for (int i = 0; i < W; ++i) words_[i] &= o.words_[i];
    return *this;
  }
  constexpr BasicVertexSet& operator|=(const BasicVertexSet& o) {
    for (int i = 0; i < W; ++i) words_[i] |= o.words_[i];
    return *this;
  }
  constexpr BasicVertexSet& operator-=(const BasicVertexSet& o) {
    for (int i = 0; i < W; ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend constexpr BasicVertexSet operator&(BasicVertexSet a, const BasicVertexSet& b) { return a &= b; }
  friend constexpr BasicVertexSet operator|(BasicVertexSet a, const BasicVertexSet& b) { return a |= b; }
  friend constexpr BasicVertexSet operator-(BasicVertexSet a, const BasicVertexSet& b) { return a -= b; }
  friend constexpr bool operator==(const BasicVertexSet&, const BasicVertexSet&) = default;

  constexpr std::uint64_t word(int i) const { return words_[i]; }

  /// Pops the lowest remaining bit on every step.
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = int;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = int;

    constexpr iterator() = default;
    constexpr explicit iterator(const std::array<std::uint64_t, W>& w) : rest_(w) { skip(); }
    constexpr int operator*() const { return 64 * idx_ + std::countr_zero(rest_[idx_]); }
    constexpr iterator& operator++() {
      rest_[idx_] &= rest_[idx_] - 1;
      skip();
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    friend constexpr bool operator==(const iterator&, const iterator&) = default;

   private:
    constexpr void skip() {
      while (idx_ < W && rest_[idx_] == 0) ++idx_;
    }
    std::array<std::uint64_t, W> rest_{};
    int idx_ = 0;
  };

  constexpr iterator begin() const { return iterator(words_); }
  constexpr iterator end() const { return iterator(std::array<std::uint64_t, W>{}); }

  std::vector<int> to_vector() const { return {begin(), end()}; }

 private:
  std::array<std::uint64_t, W> words_{};
};

inline constexpr int kMaxVertices = 128;

using VertexSet = BasicVertexSet<2>;

}  // namespace rch
