#pragma once

// Element indices and fixed-capacity element sets.
//
// Every carrier is indexed 0..n-1 in its canonical order, so a set of
// elements is a bitset and iteration order is carrier order.

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace mvla {

using Elem = std::uint16_t;

inline constexpr std::size_t kMaxCarrier = 256;

class ElemSet {
 public:
  constexpr ElemSet() = default;
  ElemSet(std::initializer_list<Elem> es) {
    for (Elem e : es) insert(e);
  }

  static ElemSet single(Elem e) {
    ElemSet s;
    s.insert(e);
    return s;
  }

  // {0, ..., n-1}
  static ElemSet range(std::size_t n) {
    ElemSet s;
    for (std::size_t w = 0; w < kWords && n > 0; ++w) {
      if (n >= 64) {
        s.words_[w] = ~std::uint64_t{0};
        n -= 64;
      } else {
        s.words_[w] = (std::uint64_t{1} << n) - 1;
        n = 0;
      }
    }
    return s;
  }

  void insert(Elem e) { words_[e >> 6] |= bit(e); }
  void erase(Elem e) { words_[e >> 6] &= ~bit(e); }
  bool contains(Elem e) const { return (words_[e >> 6] & bit(e)) != 0; }

  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  // Least element; the set must be non-empty.
  Elem first() const {
    for (std::size_t w = 0; w < kWords; ++w)
      if (words_[w])
        return static_cast<Elem>(w * 64 + std::countr_zero(words_[w]));
    return 0;
  }

  bool is_single() const { return size() == 1; }

  bool subset_of(const ElemSet& o) const {
    for (std::size_t w = 0; w < kWords; ++w)
      if (words_[w] & ~o.words_[w]) return false;
    return true;
  }

  bool intersects(const ElemSet& o) const {
    for (std::size_t w = 0; w < kWords; ++w)
      if (words_[w] & o.words_[w]) return true;
    return false;
  }

  ElemSet& operator|=(const ElemSet& o) {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] |= o.words_[w];
    return *this;
  }
  ElemSet& operator&=(const ElemSet& o) {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] &= o.words_[w];
    return *this;
  }
  ElemSet& operator-=(const ElemSet& o) {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] &= ~o.words_[w];
    return *this;
  }
  friend ElemSet operator|(ElemSet a, const ElemSet& b) { return a |= b; }
  friend ElemSet operator&(ElemSet a, const ElemSet& b) { return a &= b; }
  friend ElemSet operator-(ElemSet a, const ElemSet& b) { return a -= b; }

  friend bool operator==(const ElemSet&, const ElemSet&) = default;

  // Orders sets by their members listed in carrier order.
  friend bool operator<(const ElemSet& a, const ElemSet& b) {
    auto ia = a.begin(), ib = b.begin();
    for (; ia != a.end() && ib != b.end(); ++ia, ++ib)
      if (*ia != *ib) return *ia < *ib;
    return ia == a.end() && ib != b.end();
  }

  class const_iterator {
   public:
    using value_type = Elem;
    using difference_type = std::ptrdiff_t;

    const_iterator() = default;
    const_iterator(const ElemSet* s, std::size_t pos) : s_(s), pos_(pos) {
      advance();
    }
    Elem operator*() const { return static_cast<Elem>(pos_); }
    const_iterator& operator++() {
      ++pos_;
      advance();
      return *this;
    }
    const_iterator operator++(int) {
      auto t = *this;
      ++*this;
      return t;
    }
    bool operator==(const const_iterator& o) const { return pos_ == o.pos_; }

   private:
    void advance() {
      while (pos_ < kMaxCarrier) {
        std::uint64_t w = s_->words_[pos_ >> 6] >> (pos_ & 63);
        if (w) {
          pos_ += static_cast<std::size_t>(std::countr_zero(w));
          return;
        }
        pos_ = ((pos_ >> 6) + 1) << 6;
      }
      pos_ = kMaxCarrier;
    }
    const ElemSet* s_ = nullptr;
    std::size_t pos_ = kMaxCarrier;
  };

  const_iterator begin() const { return {this, 0}; }
  const_iterator end() const { return {this, kMaxCarrier}; }

  std::vector<Elem> to_vector() const { return {begin(), end()}; }

  std::size_t hash() const {
    std::size_t h = 0;
    for (auto w : words_) h = h * 1000003u ^ static_cast<std::size_t>(w ^ (w >> 32));
    return h;
  }

 private:
  static constexpr std::size_t kWords = kMaxCarrier / 64;
  static std::uint64_t bit(Elem e) { return std::uint64_t{1} << (e & 63); }

  std::array<std::uint64_t, kWords> words_{};
};

struct ElemSetHash {
  std::size_t operator()(const ElemSet& s) const { return s.hash(); }
};

}  // namespace mvla
