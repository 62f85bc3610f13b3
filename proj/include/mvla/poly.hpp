#pragma once

// Polynomials over a finite multivalued structure.
//
// Sums and products are coefficientwise selections, so the result of an
// operation is a "box": one element set per coefficient. PolySet holds the
// materialised members.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mvla/morphism.hpp"

namespace mvla {

class Poly {
 public:
  Poly() = default;
  Poly(StructurePtr base, std::vector<Elem> coeffs);

  static Poly zero(StructurePtr base) { return Poly(std::move(base), {}); }
  static Poly constant(StructurePtr base, Elem a) { return Poly(std::move(base), {a}); }
  static Poly monomial(StructurePtr base, Elem a, std::size_t k);
  // X - a, that is X + (-a).
  static Poly x_minus(StructurePtr base, Elem a);

  const StructurePtr& base() const { return base_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  std::size_t length() const { return c_.size(); }
  bool is_zero() const { return c_.empty(); }
  // Empty for the zero polynomial.
  std::optional<std::size_t> degree() const {
    if (c_.empty()) return std::nullopt;
    return c_.size() - 1;
  }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : base_->zero(); }
  Elem leading() const { return c_.back(); }

  std::string str() const;     // "1,0,1"
  std::string pretty() const;  // "1 + X^2"

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  // By degree, then coefficients from the leading one down.
  friend bool operator<(const Poly& a, const Poly& b);

 private:
  StructurePtr base_;
  std::vector<Elem> c_;
};

// Coefficient sets; member polynomials pick one element per coefficient.
using PolyBox = std::vector<ElemSet>;

struct PolySet {
  StructurePtr base;
  std::vector<Poly> members;  // sorted, unique

  std::size_t size() const { return members.size(); }
  bool contains(const Poly& p) const;
  auto begin() const { return members.begin(); }
  auto end() const { return members.end(); }
};

// Polynomial syntax: comma-separated coefficient tokens from the constant
// term up, so "1,0,1" is 1 + X^2.
Poly parse_poly(StructurePtr base, std::string_view text);

PolyBox padd_box(const Poly& f, const Poly& g);
// c_n in a_0 b_n + ... + a_n b_0.
PolyBox pmul_box(const Poly& f, const Poly& g);
bool box_contains(const Structure& s, const PolyBox& box, const Poly& p);
std::size_t box_size(const PolyBox& box);  // saturates at SIZE_MAX
PolySet box_members(StructurePtr base, const PolyBox& box, const Budget& budget = {});

PolySet padd(const Poly& f, const Poly& g, const Budget& budget = {});
PolySet pmul(const Poly& f, const Poly& g, const Budget& budget = {});

struct DivMod {
  Poly q;
  Poly r;
};

// Pairs (q, r) with f in qg + r and deg r < deg g, deg q <= deg f - deg g.
// q is searched from the leading coefficient down in carrier order; with
// all = false only the first pair is returned. Empty when none exists.
std::vector<DivMod> pdivmod(const Poly& f, const Poly& g, bool all = false,
                            const Budget& budget = {});
// Independent check of f in qg + r by materialising qg.
bool divmod_holds(const Poly& f, const Poly& g, const DivMod& qr, const Budget& budget = {});

// a_0 + a_1 alpha + ... + a_n alpha^n in `ambient`. Coefficients are sent
// through `via`, or through the token inclusion when the bases differ (which
// must then be a morphism).
ElemSet evaluate(const Poly& f, Elem alpha, const StructurePtr& ambient,
                 const std::optional<Morphism>& via = std::nullopt);
ElemSet evaluate(const Poly& f, Elem alpha);

bool is_root(const Poly& f, Elem alpha);
// Some g of degree deg f - 1 with f in (X - alpha) g, least first.
std::optional<Poly> effective_root_cofactor(const Poly& f, Elem alpha,
                                            const Budget& budget = {});
bool is_effective_root(const Poly& f, Elem alpha, const Budget& budget = {});

// Polynomials of degree <= bound lying in the ideal generated by u, as far
// as sums of at most three products h*u with deg h <= bound reach.
std::vector<Poly> bounded_ideal(const Poly& u, std::size_t bound, const Budget& budget = {});

struct IrreducibleResult {
  bool irreducible = false;
  std::optional<Poly> witness;  // a proper factor or ideal witness
  std::string reason;
};

// f of degree >= 1 is reducible when f lies in u*v for non-constant u, v,
// or when some non-constant u with f in <u> generates a different bounded
// ideal than f.
IrreducibleResult is_irreducible(const Poly& f, const Budget& budget = {});

struct DegreeLawReport {
  Verdict verdict = Verdict::pass;
  // "sum", "product", "factor" parts that failed, with a witness each.
  std::vector<std::pair<std::string, std::string>> failures;
  // First t with deg t < min(deg f, deg g); such t exist whenever leading
  // coefficients can cancel, so the lower bound is only enforced for
  // unequal degrees.
  std::string literal_lower_bound;
  bool part_ok(const std::string& part) const;
};

// Exhaustive over nonzero f, g of degree <= bound:
//   sum:     f != -g, t in f+g  =>  deg t <= max deg, and deg t >= min deg
//            when deg f != deg g
//   product: t in fg  =>  deg t = deg f + deg g
//   factor:  every member of (X-a_1)...(X-a_p) has degree p, p <= bound
DegreeLawReport pdeg_laws_check(const StructurePtr& s, std::size_t bound);

// Calls fn for every coefficient vector of the given length, leading
// coefficient varying slowest. Stops when fn returns true.
template <class Fn>
void for_each_coeffs(std::size_t n_elems, std::size_t length, Fn&& fn) {
  std::vector<Elem> c(length, 0);
  for (;;) {
    if (fn(c)) return;
    std::size_t i = 0;
    while (i < length && ++c[i] == n_elems) c[i++] = 0;
    if (i == length) return;
  }
}

}  // namespace mvla
