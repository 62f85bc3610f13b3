#pragma once

// Characteristic, ideals and quotients of finite superrings.

#include <optional>
#include <vector>

#include "mvla/axioms.hpp"

namespace mvla {

// Least n >= 1 with 0 in 1+...+1 (n terms), or 0 if the partial sums cycle
// without ever containing 0.
int characteristic(const Structure& s);

// Least subset containing gens and closed under I+I and S*I. The empty
// generator set gives {0}.
ElemSet generated_ideal(const Structure& s, const ElemSet& gens);

bool is_ideal(const Structure& s, const ElemSet& i);

struct IdealClass {
  bool ideal = false;
  bool prime = false;
  bool strongly_prime = false;
  bool maximal = false;
  // Elements refuting primality / strong primality / maximality, if any.
  std::vector<Elem> prime_witness;
  std::vector<Elem> strong_witness;
  std::optional<Elem> maximal_witness;  // x with I < <I,x> < S
};

IdealClass classify_ideal(const Structure& s, const ElemSet& i);

// Every ideal of s, ordered by size then members.
std::vector<ElemSet> enumerate_ideals(const Structure& s);

// S/I under x ~ y iff x+I = y+I. Throws Error when the induced operations
// depend on the choice of representatives. Elements are the classes in
// order of their least member, named "[r]" after that member.
StructurePtr quotient(const Structure& s, const ElemSet& i);

// Class index of each element of s in quotient(s, i).
std::vector<Elem> quotient_map(const Structure& s, const ElemSet& i);

}  // namespace mvla
