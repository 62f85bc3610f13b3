#include <gtest/gtest.h>

#include "gen.hpp"
#include "mvla/builtins.hpp"
#include "mvla/poly.hpp"
#include "oracle/naive.hpp"
#include "testutil.hpp"

using namespace mvla;

namespace {

Poly P(const StructurePtr& s, const char* text) { return parse_poly(s, text); }

// Naive product box: c_k folded left over i = 0..k of a_i b_(k-i).
std::set<std::vector<int>> naive_product(const oracle::Table& t, const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) return {{}};
  std::vector<oracle::Set> cells;
  const int n = static_cast<int>(f.length() + g.length() - 1);
  for (int k = 0; k < n; ++k) {
    oracle::Set acc;
    bool first = true;
    for (int i = 0; i <= k; ++i) {
      const int j = k - i;
      if (i >= static_cast<int>(f.length()) || j >= static_cast<int>(g.length())) continue;
      const oracle::Set term = t.mul[f.coeffs()[i]][g.coeffs()[j]];
      acc = first ? term : t.add_sets(acc, term);
      first = false;
    }
    cells.push_back(acc);
  }
  std::set<std::vector<int>> out;
  for (auto v : oracle::expand(cells)) {
    while (!v.empty() && v.back() == t.zero) v.pop_back();
    out.insert(v);
  }
  return out;
}

std::set<std::vector<int>> as_vectors(const PolySet& ps) {
  std::set<std::vector<int>> out;
  for (const auto& p : ps) out.insert(std::vector<int>(p.coeffs().begin(), p.coeffs().end()));
  return out;
}

oracle::PolyZ to_z(const Poly& p) {
  oracle::PolyZ out;
  for (Elem e : p.coeffs()) out.push_back(std::stoi(p.base()->token(e)));
  return oracle::trim(out);
}

}  // namespace

TEST(PolyAdd, Examples) {
  auto h = hp(3);
  const Poly f = P(h, "1,2,1");
  auto s = padd(f, Poly::zero(h));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.members[0], f);

  auto k = krasner();
  auto ones = padd(P(k, "1"), P(k, "1"));
  ASSERT_EQ(ones.size(), 2u);
  EXPECT_TRUE(ones.contains(Poly::zero(k)));
  EXPECT_TRUE(ones.contains(P(k, "1")));
}

TEST(PolyAdd, SignsAgainstOracle) {
  auto q = signs();
  auto s = padd(P(q, "1,1"), P(q, "-1,1"));
  // constant in 1+(-1) = Q2, X-coefficient in 1+1 = {1}
  EXPECT_EQ(s.size(), 3u);
  std::set<std::vector<int>> expect;
  const auto t = oracle::Table::from(*q);
  for (int c : t.add[q->elem("1")][q->elem("-1")])
    for (int x : t.add[q->elem("1")][q->elem("1")]) expect.insert({c, x});
  EXPECT_EQ(as_vectors(s), expect);
}

TEST(PolyMul, Examples) {
  auto h = hp(3);
  const Poly f = P(h, "2,0,1");
  auto s = pmul(f, P(h, "1"));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.members[0], f);

  auto k = krasner();
  auto sq = pmul(P(k, "1,1"), P(k, "1,1"));
  ASSERT_EQ(sq.size(), 2u);
  EXPECT_TRUE(sq.contains(P(k, "1,0,1")));
  EXPECT_TRUE(sq.contains(P(k, "1,1,1")));
}

TEST(PolyMul, AgreesWithNaiveConvolution) {
  gen::Gen g(11);
  for (auto s : {krasner(), signs(), hp(3), kaleidoscope(2)}) {
    const auto t = oracle::Table::from(*s);
    for (int i = 0; i < 40; ++i) {
      const Poly a = g.poly(s, g.below(3));
      const Poly b = g.poly(s, g.below(3));
      EXPECT_EQ(as_vectors(pmul(a, b)), naive_product(t, a, b)) << a.str() << " * " << b.str();
    }
  }
}

// The printed expansion of (x-a)(x-b) puts a-b in the middle; the
// convolution gives (-a)+(-b). Recorded, not asserted as a law.
TEST(PolyMul, PrintedLinearFactorIdentityDiscrepancy) {
  auto q = signs();
  const Elem one = q->elem("1");
  auto prod = pmul(Poly::x_minus(q, one), Poly::x_minus(q, one));
  ASSERT_EQ(prod.size(), 1u);
  EXPECT_EQ(prod.members[0], P(q, "1,-1,1"));
  // printed form: X^2 + (1-1)X + 1 has three members
  const ElemSet middle = q->sum(one, q->neg(one));
  EXPECT_EQ(middle.size(), 3u);
  EXPECT_NE(prod.size(), middle.size());
}

TEST(PolyMul, MonomialRules) {
  for (auto s : {krasner(), signs(), hp(3), kaleidoscope(2), prime_field(3)}) {
    for (std::size_t n = 0; n <= 3; ++n)
      for (std::size_t m = 0; m <= 3; ++m) {
        auto xs = pmul(Poly::monomial(s, s->one(), n), Poly::monomial(s, s->one(), m));
        ASSERT_EQ(xs.size(), 1u);
        EXPECT_EQ(xs.members[0], Poly::monomial(s, s->one(), n + m));
      }
    for (Elem a = 0; a < s->size(); ++a)
      for (std::size_t n = 0; n <= 3; ++n) {
        auto ax = pmul(Poly::constant(s, a), Poly::monomial(s, s->one(), n));
        ASSERT_EQ(ax.size(), 1u);
        EXPECT_EQ(ax.members[0], a == s->zero() ? Poly::zero(s) : Poly::monomial(s, a, n));
      }
  }
}

TEST(PolyMul, ConstantEmbeddingIsFull) {
  for (auto s : {krasner(), signs(), hp(3), kaleidoscope(2)})
    for (Elem a = 0; a < s->size(); ++a)
      for (Elem b = 0; b < s->size(); ++b) {
        auto sum = padd(Poly::constant(s, a), Poly::constant(s, b));
        auto prod = pmul(Poly::constant(s, a), Poly::constant(s, b));
        std::set<std::vector<int>> es, ep;
        for (Elem c : s->sum(a, b))
          es.insert(c == s->zero() ? std::vector<int>{} : std::vector<int>{static_cast<int>(c)});
        for (Elem c : s->prod(a, b))
          ep.insert(c == s->zero() ? std::vector<int>{} : std::vector<int>{static_cast<int>(c)});
        EXPECT_EQ(as_vectors(sum), es);
        EXPECT_EQ(as_vectors(prod), ep);
      }
}

TEST(PolyMul, LinearFactorSplits) {
  // (b + cX) f = b f + cX f, setwise, deg f <= 2
  for (auto s : {hp(3), signs()}) {
    for_each_coeffs(s->size(), 3, [&](const std::vector<Elem>& fc) {
      const Poly f(s, fc);
      for (Elem b = 0; b < s->size(); ++b)
        for (Elem c = 0; c < s->size(); ++c) {
          const auto lhs = pmul(Poly(s, {b, c}), f);
          std::set<std::vector<int>> rhs;
          for (const auto& u : pmul(Poly::constant(s, b), f))
            for (const auto& v : pmul(Poly::monomial(s, c, 1), f))
              for (const auto& w : padd(u, v)) rhs.insert({w.coeffs().begin(), w.coeffs().end()});
          EXPECT_EQ(as_vectors(lhs), rhs) << s->name() << " f=" << f.str();
        }
      return false;
    });
  }
}

TEST(PolyMul, ZeroDivisorsMatchBase) {
  for (auto s : {krasner(), hp(3), prime_field(3), residue_ring(4)}) {
    bool base = false;
    for (Elem a = 1; a < s->size(); ++a)
      for (Elem b = 1; b < s->size(); ++b) base = base || s->prod(a, b).contains(s->zero());
    bool poly = false;
    std::vector<Poly> nonzero;
    for_each_coeffs(s->size(), 3, [&](const std::vector<Elem>& c) {
      Poly p(s, c);
      if (!p.is_zero()) nonzero.push_back(p);
      return false;
    });
    for (const auto& f : nonzero) {
      for (const auto& g : nonzero)
        if (pmul(f, g).contains(Poly::zero(s))) {
          poly = true;
          break;
        }
      if (poly) break;
    }
    EXPECT_EQ(base, poly) << s->name();
  }
}

TEST(PolyDegree, Laws) {
  auto h = pdeg_laws_check(hp(3), 2);
  EXPECT_EQ(h.verdict, Verdict::pass);
  auto f = pdeg_laws_check(prime_field(3), 2);
  EXPECT_EQ(f.verdict, Verdict::pass);
  // equal degrees can cancel even classically
  EXPECT_FALSE(f.literal_lower_bound.empty());
  EXPECT_FALSE(Poly::zero(hp(3)).degree().has_value());
}

TEST(PolyDegree, SignsSkipsOppositePair) {
  auto q = signs();
  auto s = padd(P(q, "1"), P(q, "-1"));
  EXPECT_TRUE(s.contains(Poly::zero(q)));
  EXPECT_EQ(pdeg_laws_check(q, 2).verdict, Verdict::pass);
}

TEST(PolyDivision, Examples) {
  auto h = hp(3);
  const Poly f = P(h, "1,0,1");
  auto by_one = pdivmod(f, P(h, "1"), true);
  bool found = false;
  for (const auto& qr : by_one) found = found || (qr.q == f && qr.r.is_zero());
  EXPECT_TRUE(found);

  auto self = pdivmod(f, f, true);
  found = false;
  for (const auto& qr : self) found = found || (qr.q == P(h, "1") && qr.r.is_zero());
  EXPECT_TRUE(found);

  auto one = pdivmod(f, P(h, "1,1"));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_TRUE(divmod_holds(f, P(h, "1,1"), one[0]));
  // exhaustive oracle: the first pair in the search order
  bool any = false;
  for_each_coeffs(h->size(), 2, [&](const std::vector<Elem>& qc) {
    for (Elem r = 0; r < h->size(); ++r) {
      DivMod cand{Poly(h, qc), Poly::constant(h, r)};
      any = any || divmod_holds(f, P(h, "1,1"), cand);
    }
    return false;
  });
  EXPECT_TRUE(any);
}

TEST(PolyDivision, NonUnique) {
  auto h = hp(3);
  auto all = pdivmod(P(h, "1,0,1"), P(h, "1,1"), true);
  EXPECT_GE(all.size(), 2u);
  for (const auto& qr : all) EXPECT_TRUE(divmod_holds(P(h, "1,0,1"), P(h, "1,1"), qr));
}

TEST(PolyEval, Examples) {
  auto k = krasner();
  EXPECT_EQ(evaluate(P(k, "1,1,1"), k->one()), k->all());
  auto h = hp(5);
  for (Elem a = 0; a < h->size(); ++a) {
    EXPECT_EQ(evaluate(Poly::constant(h, h->elem("3")), a), ElemSet::single(h->elem("3")));
    EXPECT_TRUE(evaluate(Poly::x_minus(h, a), a).contains(h->zero()));
    EXPECT_TRUE(is_root(Poly::x_minus(h, a), a));
  }
}

TEST(PolyEval, KrasnerIsAlgebraicallyClosed) {
  auto k = krasner();
  for (std::size_t len = 2; len <= 4; ++len)
    for_each_coeffs(k->size(), len, [&](const std::vector<Elem>& c) {
      if (c.back() == k->zero()) return false;
      const Poly f(k, c);
      EXPECT_TRUE(is_root(f, k->zero()) || is_root(f, k->one())) << f.str();
      return false;
    });
}

TEST(PolyEval, EffectiveRootsRecheck) {
  auto h = hp(3);
  std::size_t found = 0;
  for_each_coeffs(h->size(), 3, [&](const std::vector<Elem>& c) {
    if (c.back() == h->zero()) return false;
    const Poly f(h, c);
    for (Elem a = 0; a < h->size(); ++a) {
      auto g = effective_root_cofactor(f, a);
      if (!g) continue;
      ++found;
      EXPECT_TRUE(pmul(Poly::x_minus(h, a), *g).contains(f));
      EXPECT_TRUE(is_root(f, a));
    }
    return false;
  });
  EXPECT_GT(found, 0u);
}

TEST(PolyIrreducible, StrictExamples) {
  auto f2 = prime_field(2);
  auto sq = is_irreducible(P(f2, "0,0,1"));
  EXPECT_FALSE(sq.irreducible);
  ASSERT_TRUE(sq.witness);
  EXPECT_EQ(*sq.witness, P(f2, "0,1"));
  EXPECT_TRUE(is_irreducible(P(f2, "1,1,1")).irreducible);
}

TEST(PolyIrreducible, HyperfieldQuadratics) {
  auto h = hp(3);
  std::vector<Poly> irreducible;
  for_each_coeffs(h->size(), 3, [&](const std::vector<Elem>& c) {
    if (c.back() == h->zero()) return false;
    const Poly f(h, c);
    if (is_irreducible(f).irreducible) irreducible.push_back(f);
    return false;
  });
  ASSERT_FALSE(irreducible.empty());
  // divisor scan: no product of two linear polynomials contains f
  for (const auto& f : irreducible) {
    for_each_coeffs(h->size(), 2, [&](const std::vector<Elem>& u) {
      if (u.back() == h->zero()) return false;
      for_each_coeffs(h->size(), 2, [&](const std::vector<Elem>& v) {
        if (v.back() == h->zero()) return false;
        EXPECT_FALSE(pmul(Poly(h, u), Poly(h, v)).contains(f)) << f.str();
        return false;
      });
      return false;
    });
  }
  // frozen from the scan above
  std::vector<Poly> expect{P(h, "2,0,1"), P(h, "1,0,2")};
  std::sort(irreducible.begin(), irreducible.end());
  std::sort(expect.begin(), expect.end());
  EXPECT_EQ(irreducible, expect);
}

TEST(PolyStrict, ClassicalRegression) {
  auto f3 = prime_field(3);
  const oracle::Zp z{3};
  gen::Gen g(3);
  for (int i = 0; i < 50; ++i) {
    const Poly a = g.poly(f3, g.below(4));
    const Poly b = g.poly(f3, g.below(3));
    auto sum = padd(a, b);
    auto prod = pmul(a, b);
    ASSERT_EQ(sum.size(), 1u);
    ASSERT_EQ(prod.size(), 1u);
    EXPECT_EQ(to_z(sum.members[0]), oracle::padd(z, to_z(a), to_z(b)));
    EXPECT_EQ(to_z(prod.members[0]), oracle::pmul(z, to_z(a), to_z(b)));
    auto qr = pdivmod(a, b, true);
    ASSERT_EQ(qr.size(), 1u);
    auto [q, r] = oracle::pdivmod(z, to_z(a), to_z(b));
    EXPECT_EQ(to_z(qr[0].q), q);
    EXPECT_EQ(to_z(qr[0].r), r);
    const Elem x = g.elem(*f3);
    EXPECT_EQ(evaluate(a, x), ElemSet::single(static_cast<Elem>(oracle::peval(z, to_z(a), x))));
    EXPECT_EQ(is_irreducible(a).irreducible, oracle::irreducible(z, to_z(a))) << a.str();
  }
}
