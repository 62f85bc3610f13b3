#pragma once

// Built-in structures.

#include <string_view>

#include "mvla/structure.hpp"

namespace mvla {

StructurePtr krasner();            // K = {0,1}, 1+1 = {0,1}
StructurePtr signs();              // Q2 = {-1,0,1}
StructurePtr hp(int p);            // H_p, p prime: a+a = H_p for a != 0
StructurePtr kaleidoscope(int n);  // X_n on {-n..n}
StructurePtr prime_field(int p);   // strict Z/p
StructurePtr residue_ring(int n);  // strict Z/n
StructurePtr tropical();           // lazy, carrier Z with infinity

// "K", "Q2", "Hp(3)", "Xn(2)", "Fp(5)", "Zn(6)", "Trop". Also accepts the
// argument without parentheses ("Hp3"). Returns null for unknown names.
StructurePtr builtin(std::string_view name);

bool is_prime(int p);

}  // namespace mvla
