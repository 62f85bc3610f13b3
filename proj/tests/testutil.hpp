#pragma once

// Small helpers shared by the test files.

#include <string>
#include <vector>

#include "mvla/structure.hpp"

namespace testutil {

inline mvla::ElemSet set_of(const mvla::Structure& s, const std::vector<std::string>& toks) {
  mvla::ElemSet out;
  for (const auto& t : toks) out.insert(s.elem(t));
  return out;
}

// Copy of s with one sum (or product) cell replaced.
inline mvla::StructurePtr mutate(const mvla::Structure& s, bool sum, mvla::Elem a, mvla::Elem b,
                                 const mvla::ElemSet& cell) {
  mvla::MultiOp add = s.sum_table();
  mvla::MultiOp mul = s.prod_table();
  (sum ? add : mul).set(a, b, cell);
  std::vector<mvla::Elem> neg;
  for (mvla::Elem x = 0; x < s.size(); ++x) neg.push_back(s.neg(x));
  return mvla::make_structure(s.name() + "*", s.tokens(), add, mul, neg, s.zero(), s.one());
}

}  // namespace testutil
