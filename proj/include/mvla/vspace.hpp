#pragma once

// Finite multivalued vector spaces over superfields: axioms, the standard
// constructions, spans, independence, bases and dimension.

#include <string>
#include <vector>

#include "mvla/extension.hpp"

namespace mvla {

struct VectorSpace {
  std::string name;
  StructurePtr scalars;
  MultiGroupTable vectors;
  std::vector<ElemSet> action;  // action[l * |V| + v] = l v

  std::size_t size() const { return vectors.size(); }
  ElemSet all() const { return vectors.all(); }
  Elem zero() const { return vectors.zero; }
  const ElemSet& act(Elem l, Elem v) const { return action[l * size() + v]; }
  // Union of l v over l in ls.
  ElemSet act(const ElemSet& ls, Elem v) const;
  // Union of l w over w in vs.
  ElemSet act(Elem l, const ElemSet& vs) const;
  ElemSet add(const ElemSet& a, const ElemSet& b) const { return vectors.add(a, b); }
  const std::string& token(Elem v) const { return vectors.tokens[v]; }
  std::string describe(const ElemSet& vs) const;
};

// F^n with componentwise operations; vectors "(a,b)", first coordinate
// most significant in the element order.
VectorSpace coordinate_space(const StructurePtr& f, std::size_t n);
std::vector<Elem> coordinates(const VectorSpace& v, Elem e);  // for coordinate spaces
Elem coordinate_vector(const StructurePtr& f, const std::vector<Elem>& coords);

// rows x cols matrices with entrywise sum and scaling.
VectorSpace matrix_space(const StructurePtr& f, std::size_t rows, std::size_t cols);
// Polynomials of degree <= max_degree; the name records the truncation.
VectorSpace poly_space(const StructurePtr& f, std::size_t max_degree);
// K as an F-space: l v = e(l) v in K.
VectorSpace extension_space(const ExtensionPair& pair);

// Multigroup axioms of the vectors, nonempty action, MV0-MV3. With full,
// MV2 and MV3 must hold with equality. Witness tuples: MV0 (v), MV1
// (l, m, v), MV2 (l, v, w), MV3 (l, m, v); multigroup witnesses as in
// verify_multigroup with the axiom name prefixed "vectors ".
AxiomReport verify_vspace(const VectorSpace& v, bool full = false);
bool recheck(const VectorSpace& v, const Witness& w, bool full = false);

// Scalars reachable as sums of 1..bound scalars (the bundle coefficients).
std::vector<ElemSet> bundle_sums(const Structure& f, int bound);

// CL(A): every finite sum of terms c v with v in A (repeats allowed) and c
// ranging over the bundle sums, saturated. CL of the empty set is {0}.
ElemSet linear_combinations(const VectorSpace& v, const ElemSet& a, int bound = 2);

// Least subspace containing A, by closing A and 0 under sums and scaling.
ElemSet generated_subspace(const VectorSpace& v, const ElemSet& a);
bool is_subspace(const VectorSpace& v, const ElemSet& w);

struct SpanResult {
  ElemSet members;          // CL(A)
  bool subspace = false;    // CL(A) is a subspace
  bool least = false;       // CL(A) equals the generated subspace
};

SpanResult span(const VectorSpace& v, const ElemSet& a, int bound = 2);

struct IndependenceResult {
  bool independent = true;
  // On dependence: one scalar sequence per vector whose sums put 0 in the
  // weighted sum while some coefficient sum misses 0.
  std::vector<std::vector<Elem>> witness;
  int bound = 0;  // the verdict holds up to this bundle length
};

// Throws Error on duplicate vectors.
IndependenceResult is_linearly_independent(const VectorSpace& v, const std::vector<Elem>& vs,
                                           int bound = 2);
bool recheck_dependence(const VectorSpace& v, const std::vector<Elem>& vs,
                        const std::vector<std::vector<Elem>>& witness);

struct BasisResult {
  std::vector<Elem> basis;
  bool independent = false;  // false when no generator could be dropped
};

// Drops duplicates, then repeatedly drops the first generator lying in CL
// of the others until the rest is independent. Throws Error when the
// generators do not span V.
BasisResult find_basis(const VectorSpace& v, const std::vector<Elem>& generators, int bound = 2);

struct DimensionResult {
  std::size_t dimension = 0;
  std::vector<Elem> basis;
  AxiomReport closed;  // linear closedness of the scalars at (k, k+1), k <= dim
  // No independent set of size dim + 1 exists (checked when enumerable).
  bool bound_checked = false;
  bool bound_holds = true;
};

// Throws Error when the scalars are not certified linearly closed.
DimensionResult dimension(const VectorSpace& v, const Budget& budget = {});

struct KernelSpace {
  VectorSpace space;  // F^m
  ElemSet members;    // v with 0 in (Av)_i for every row
  bool subspace = false;
};

// Throws Error when F is not full.
KernelSpace solution_subspace(const Matrix& a);

}  // namespace mvla
