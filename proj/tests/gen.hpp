#pragma once

// Seeded random generators for property tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "mvla/matrix.hpp"
#include "mvla/poly.hpp"

namespace gen {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  mvla::Elem elem(const mvla::Structure& s) { return static_cast<mvla::Elem>(below(s.size())); }
  mvla::Elem nonzero(const mvla::Structure& s) {
    for (;;) {
      const auto e = elem(s);
      if (e != s.zero()) return e;
    }
  }
  mvla::ElemSet subset(const mvla::Structure& s, std::size_t max_size) {
    mvla::ElemSet out;
    const std::size_t k = 1 + below(std::min(max_size, s.size()));
    while (out.size() < k) out.insert(elem(s));
    return out;
  }

  mvla::Matrix matrix(const mvla::StructurePtr& s, std::size_t rows, std::size_t cols) {
    std::vector<mvla::Elem> e(rows * cols);
    for (auto& x : e) x = elem(*s);
    return mvla::Matrix(s, rows, cols, e);
  }

  // Degree exactly d (nonzero leading coefficient).
  mvla::Poly poly(const mvla::StructurePtr& s, std::size_t d) {
    std::vector<mvla::Elem> c(d + 1);
    for (auto& x : c) x = elem(*s);
    c.back() = nonzero(*s);
    return mvla::Poly(s, c);
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace gen
