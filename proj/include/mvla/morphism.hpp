#pragma once

// Maps between structures and their morphism checks.

#include <string>
#include <utility>
#include <vector>

#include "mvla/axioms.hpp"

namespace mvla {

struct Morphism {
  StructurePtr source;
  StructurePtr target;
  std::vector<Elem> map;  // indexed by source element

  Elem operator()(Elem a) const { return map[a]; }
  ElemSet image(const ElemSet& xs) const;
};

// Sends each source token to the target element with the same token.
Morphism inclusion_by_tokens(StructurePtr source, StructurePtr target);
Morphism morphism_from_pairs(StructurePtr source, StructurePtr target,
                             const std::vector<std::pair<std::string, std::string>>& pairs);

// Morphism: f(0)=0, f(1)=1, f(-a)=-f(a), c in a+b => f(c) in f(a)+f(b),
// c in ab => f(c) in f(a)f(b). Full morphisms additionally satisfy
// f(a+b) = f(a)+f(b) and f(ab) = f(a)f(b) as sets.
AxiomReport check_morphism(const Morphism& f, bool full = false);
bool recheck(const Morphism& f, const Witness& w);

}  // namespace mvla
