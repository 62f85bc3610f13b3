#pragma once

// Superfield extensions: the quotient F(p) = F[X]/<p> on coefficient
// vectors, extension kinds, evaluation closures and algebraicity.

#include <optional>
#include <string>
#include <vector>

#include "mvla/linsys.hpp"
#include "mvla/poly.hpp"

namespace mvla {

struct ExtensionPair {
  StructurePtr small;
  StructurePtr big;
  Morphism embedding;  // small -> big

  // Embedding by equal tokens.
  static ExtensionPair by_tokens(StructurePtr small, StructurePtr big);
};

enum class ExtensionKind { none, proto, extension, full };

std::string to_string(ExtensionKind k);

struct ExtensionClass {
  ExtensionKind kind = ExtensionKind::none;
  AxiomReport morphism;  // empty unless the embedding is injective
  AxiomReport full;
};

// proto: the embedding is injective; extension: it is a morphism; full: a
// full morphism.
ExtensionClass classify_extension(const ExtensionPair& pair);

// F(p) with elements the coefficient vectors c_0..c_(d-1), d = deg p,
// written "[c0,c1]". Element index is sum c_i |F|^i, so the constants come
// first. Sums are componentwise; a product collects every remainder r with
// t in q p + r over all t in the polynomial product.
class QuotientField {
 public:
  const StructurePtr& field() const { return field_; }
  const StructurePtr& base() const { return base_; }
  const Poly& modulus() const { return modulus_; }
  std::size_t degree() const { return degree_; }

  std::vector<Elem> coeffs(Elem e) const;
  Elem element(const std::vector<Elem>& coeffs) const;
  Poly representative(Elem e) const { return Poly(base_, coeffs(e)); }
  Elem constant(Elem a) const { return element({a}); }
  // The class of X. Equals a constant when deg p = 1.
  Elem gamma() const;
  ExtensionPair pair() const;

  AxiomReport verification;  // superfield axioms of the result

 private:
  friend QuotientField make_quotient_superfield(const StructurePtr&, const Poly&, bool,
                                                const Budget&);
  StructurePtr field_;
  StructurePtr base_;
  Poly modulus_;
  std::size_t degree_ = 0;
};

// Throws Error when p is constant or reducible, or when the result fails the
// superfield axioms (the message carries the witness). `check` = false skips
// both checks.
QuotientField make_quotient_superfield(const StructurePtr& f, const Poly& p, bool check = true,
                                       const Budget& budget = {});

struct Closure {
  ElemSet members;
  // The union did not grow at the last degree searched.
  bool stable = false;
  std::size_t degree = 0;  // last degree searched
};

// Union of ev(f, gamma, K) over f in F[X] with deg f <= bound. With
// `multiples_of` set, only f in g*h for deg h <= bound - deg g.
Closure eval_closure(Elem gamma, const ExtensionPair& pair, std::size_t bound,
                     const std::optional<Poly>& multiples_of = std::nullopt,
                     const Budget& budget = {});

struct AlgebraicityCertificate {
  Elem element = 0;
  Poly witness;
  bool checked = false;  // 0 in ev(witness, element, K), rechecked
};

// Least f of least degree (1..bound) with 0 in ev(f, gamma, K), in the
// polynomial order.
std::optional<AlgebraicityCertificate> minimal_polynomial(Elem gamma, const ExtensionPair& pair,
                                                          std::size_t bound);

// (a g^p + b g^q + c g^r) g = a g^(p+1) + b g^(q+1) + c g^(r+1) for all
// a, b, c in F and distinct p, q, r <= n + 1, where K is generated by
// 1, g, ..., g^n. Inconclusive when no n <= bound generates K. Witness tuple
// is (a, b, c, p, q, r).
AxiomReport is_almost_full(const ExtensionPair& pair, Elem gamma, std::size_t bound = 4);

struct AlgebraicReport {
  Verdict verdict = Verdict::pass;
  std::vector<AlgebraicityCertificate> certificates;  // one per element of K
  std::vector<Elem> missing;                          // no certificate within bound
  std::size_t max_degree = 0;                         // over all certificates
};

// Every element of K gets a minimal certificate of degree <= bound.
AlgebraicReport certify_algebraic_extension(const ExtensionPair& pair, std::size_t bound);

// g^k as a set in K: the empty product is {1}.
ElemSet power(const Structure& k, Elem g, std::size_t e);

struct SplitResult {
  SolveResult result;
  bool split = false;  // found through the stacked system over F
};

// Nontrivial d with 0 in (Ad)_i for A over F(p). Writes each entry as
// a_0 + a_1 g + ... and stacks the coefficient layers A_k into one system
// over F; a kernel vector of the stack, read as constants, solves A.
// Otherwise falls back to find_nontrivial_kernel over F(p).
SplitResult split_system(const QuotientField& q, const Matrix& a, const Budget& budget = {});

}  // namespace mvla
