#include <gtest/gtest.h>

#include "gen.hpp"
#include "mvla/builtins.hpp"
#include "mvla/linsys.hpp"
#include "oracle/naive.hpp"
#include "testutil.hpp"

using namespace mvla;

namespace {

Matrix column(const StructurePtr& s, std::vector<Elem> d) {
  const std::size_t n = d.size();
  return Matrix(s, n, 1, std::move(d));
}

// Every vector of F^n, first coordinate most significant.
std::vector<std::vector<int>> all_vectors(int q, int n) {
  std::vector<std::vector<int>> out{{}};
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<int>> next;
    for (const auto& v : out)
      for (int x = 0; x < q; ++x) {
        auto w = v;
        w.push_back(x);
        next.push_back(w);
      }
    out = std::move(next);
  }
  return out;
}

std::vector<int> ints(const Matrix& m) { return {m.entries().begin(), m.entries().end()}; }

bool oracle_weak(const oracle::Table& t, const LinearSystem& sys, const std::vector<int>& d) {
  auto cells = oracle::matmul_cells(t, int(sys.rows()), int(sys.unknowns()), 1, ints(sys.a), d);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    bool hit = false;
    for (int x : cells[i]) hit = hit || sys.b[i].contains(static_cast<Elem>(x));
    if (!hit) return false;
  }
  return true;
}

bool oracle_weakly_solvable(const oracle::Table& t, const LinearSystem& sys) {
  for (const auto& d : all_vectors(t.n, int(sys.unknowns())))
    if (oracle_weak(t, sys, d)) return true;
  return false;
}

LinearSystem random_system(gen::Gen& g, const StructurePtr& s, std::size_t m, std::size_t n,
                           std::size_t max_rhs) {
  LinearSystem sys{g.matrix(s, m, n), {}};
  for (std::size_t i = 0; i < m; ++i) sys.b.push_back(g.subset(*s, max_rhs));
  return sys;
}

bool upper_triangular(const Matrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < i && j < a.cols(); ++j)
      if (a.at(i, j) != a.base()->zero()) return false;
  return true;
}

}  // namespace

TEST(Solutions, ZeroVectorNeedsZeroInEveryRow) {
  gen::Gen g(1);
  for (auto s : {hp(3), signs(), kaleidoscope(2)})
    for (int i = 0; i < 100; ++i) {
      auto sys = random_system(g, s, 1 + g.below(3), 1 + g.below(3), 2);
      const Matrix zero = Matrix::zero(s, sys.unknowns(), 1);
      bool all = true;
      for (const auto& b : sys.b) all = all && b.contains(s->zero());
      EXPECT_EQ(is_solution(sys, zero), all);
      EXPECT_EQ(is_weak_solution(sys, zero), all);
    }
}

TEST(Solutions, StrongImpliesWeakAndMatchesOracle) {
  gen::Gen g(2);
  auto h = hp(3);
  const auto t = oracle::Table::from(*h);
  for (int i = 0; i < 200; ++i) {
    auto sys = random_system(g, h, 2, 2, 3);
    const Matrix d = g.matrix(h, 2, 1);
    if (is_solution(sys, d)) EXPECT_TRUE(is_weak_solution(sys, d));
    EXPECT_EQ(is_weak_solution(sys, d), oracle_weak(t, sys, ints(d)));
  }
}

TEST(Solutions, TriangularRecipeGivesWeakSolution) {
  // y0 in c^-1 D2 meeting D2 after scaling back, then x0 by the recursive
  // back-substitution rule.
  for (auto s : {hp(3), hp(5), signs(), krasner()}) {
    gen::Gen g(3);
    for (int i = 0; i < 200; ++i) {
      const Elem a = g.nonzero(*s), b = g.elem(*s), c = g.nonzero(*s);
      const ElemSet d1 = g.subset(*s, 3), d2 = g.subset(*s, 3);
      const Elem ai = *inverse(*s, a), ci = *inverse(*s, c);
      std::optional<Elem> y0;
      for (Elem z : s->prod(ElemSet::single(ci), d2))
        if (!y0 && s->prod(c, z).intersects(d2)) y0 = z;
      ASSERT_TRUE(y0.has_value());
      // x0 in a^-1 D1 - a^-1 b y0; see PrintedRecipeNeedsUnitPivot for the
      // variant without the second a^-1.
      const ElemSet xs = s->sum(s->prod(ElemSet::single(ai), d1),
                                s->neg(s->prod(ElemSet::single(ai), s->prod(b, *y0))));
      LinearSystem sys{Matrix(s, 2, 2, {a, b, s->zero(), c}), {d1, d2}};
      bool found = false;
      for (Elem x0 : xs) found = found || is_weak_solution(sys, column(s, {x0, *y0}));
      EXPECT_TRUE(found) << s->name() << " " << sys.str();
      auto d = back_substitute(sys);
      ASSERT_TRUE(d.has_value());
      EXPECT_TRUE(is_weak_solution(sys, *d));
    }
  }
}

TEST(Solutions, PrintedRecipeNeedsUnitPivot) {
  // x0 in a^-1 D1 - b y0 over Hp(3) with a = 2, b = c = 1, D1 = {0}, D2 = {2}:
  // y0 = 2, the only candidate is x0 = 2, and 2*2 + 1*2 = {1 2} misses D1.
  auto h = hp(3);
  LinearSystem sys = parse_system(h, "2 2\n2 1\n0 1\nrhs {0}\nrhs {2}");
  const Elem y0 = h->elem("2");
  const ElemSet printed = h->sum(h->prod(ElemSet::single(h->elem("2")), sys.b[0]),
                                 h->neg(ElemSet(h->prod(h->one(), y0))));
  EXPECT_EQ(printed, ElemSet::single(h->elem("2")));
  EXPECT_FALSE(is_weak_solution(sys, column(h, {h->elem("2"), y0})));
  EXPECT_TRUE(is_weak_solution(sys, column(h, {h->elem("1"), y0})));
}

TEST(Elementary, SwapTwiceAndAddRows) {
  gen::Gen g(4);
  auto h = hp(3);
  auto sys = random_system(g, h, 2, 2, 2);
  bool back = false;
  for (const auto& once : apply_elementary(sys, ElementaryOp::swap_rows(0, 1)))
    for (const auto& twice : apply_elementary(once, ElementaryOp::swap_rows(0, 1)))
      back = back || twice == sys;
  EXPECT_TRUE(back);

  auto q = signs();
  LinearSystem qs = parse_system(q, "2 2\n1 -1\n1 1\nrhs {1}\nrhs {-1 0}");
  auto out = apply_elementary(qs, ElementaryOp::add_row(0, 1));
  ASSERT_FALSE(out.empty());
  for (const auto& r : out) {
    EXPECT_EQ(r.b[0], q->sum(qs.b[0], qs.b[1]));
    EXPECT_EQ(r.b[1], qs.b[1]);
    EXPECT_TRUE(madd(Matrix(q, 1, 2, {qs.a.at(0, 0), qs.a.at(0, 1)}),
                     Matrix(q, 1, 2, {qs.a.at(1, 0), qs.a.at(1, 1)}))
                    .contains(Matrix(q, 1, 2, {r.a.at(0, 0), r.a.at(0, 1)})));
  }
}

TEST(Elementary, SolutionsSurviveSomeOutput) {
  gen::Gen g(5);
  auto h = hp(3);
  for (int i = 0; i < 150; ++i) {
    auto sys = random_system(g, h, 2, 2, 2);
    const std::vector<ElementaryOp> ops = {ElementaryOp::swap_rows(0, 1),
                                           ElementaryOp::scale_row(g.below(2), g.nonzero(*h)),
                                           ElementaryOp::add_row(0, 1), ElementaryOp::add_row(1, 0)};
    for (std::size_t idx = 0; idx < 9; ++idx) {
      const Matrix d = matrix_at(h, 2, 1, idx);
      const bool strong = is_solution(sys, d), weak = is_weak_solution(sys, d);
      if (!weak) continue;
      for (const auto& op : ops) {
        bool kept_strong = false, kept_weak = false;
        for (const auto& r : apply_elementary(sys, op)) {
          kept_strong = kept_strong || is_solution(r, d);
          kept_weak = kept_weak || is_weak_solution(r, d);
        }
        if (strong) EXPECT_TRUE(kept_strong);
        EXPECT_TRUE(kept_weak) << sys.str() << " d=" << d.str();
      }
    }
  }
}

TEST(Scaling, TriangularInputIsAFixedPoint) {
  auto h = hp(3);
  LinearSystem sys = parse_system(h, "2 2\n1 2\n0 1\nrhs {1}\nrhs {2}");
  auto out = scale_system(sys);
  EXPECT_NE(std::find(out.begin(), out.end(), sys), out.end());
}

TEST(Scaling, OutputsAreUpperTriangular) {
  gen::Gen g(6);
  for (auto s : {hp(3), signs(), prime_field(3)})
    for (int i = 0; i < 60; ++i) {
      auto sys = random_system(g, s, 2, 2, 2);
      for (const auto& r : scale_system(sys)) EXPECT_TRUE(upper_triangular(r.a)) << r.str();
    }
}

TEST(Scaling, ClassifiesImpossibleRows) {
  auto h = hp(3);
  auto bad = parse_system(h, "2 2\n1 2\n0 0\nrhs {1}\nrhs {1 2}");
  EXPECT_EQ(classify(bad), SystemType::impossible);
  EXPECT_THROW(back_substitute(bad), Error);
  EXPECT_EQ(classify(parse_system(h, "2 2\n1 2\n0 1\nrhs {1}\nrhs {2}")), SystemType::determined);
  EXPECT_EQ(classify(parse_system(h, "1 2\n1 2\nrhs {0}")), SystemType::free);
  auto ok = parse_system(h, "2 2\n1 2\n0 0\nrhs {1}\nrhs {0 2}");
  EXPECT_NE(classify(ok), SystemType::impossible);
}

TEST(BackSubstitution, DiagonalStrictSystemIsClassical) {
  auto f = prime_field(5);
  const oracle::Zp z{5};
  for (Elem a = 1; a < 5; ++a)
    for (Elem c = 1; c < 5; ++c)
      for (Elem b1 = 0; b1 < 5; ++b1) {
        const Elem b2 = static_cast<Elem>((b1 + 2) % 5);
        LinearSystem sys{Matrix(f, 2, 2, {a, 0, 0, c}), {ElemSet::single(b1), ElemSet::single(b2)}};
        auto d = back_substitute(sys);
        ASSERT_TRUE(d.has_value());
        EXPECT_EQ(d->at(0, 0), z.mul(b1, z.inv(a)));
        EXPECT_EQ(d->at(1, 0), z.mul(b2, z.inv(c)));
      }
}

TEST(SolveWeak, FullRightHandSideAdmitsZero) {
  gen::Gen g(7);
  auto h = hp(5);
  for (int i = 0; i < 20; ++i) {
    LinearSystem sys{g.matrix(h, 2, 3), {h->all(), h->all()}};
    EXPECT_TRUE(is_solution(sys, Matrix::zero(h, 3, 1)));
    auto r = solve_weak(sys);
    ASSERT_EQ(r.status, SolveResult::solved);
    EXPECT_TRUE(is_weak_solution(sys, *r.solution));
  }
}

TEST(SolveWeak, MatchesExhaustiveOracle) {
  gen::Gen g(8);
  for (auto s : {hp(3), signs(), krasner(), hp(5)}) {
    const auto t = oracle::Table::from(*s);
    for (int i = 0; i < 120; ++i) {
      auto sys = random_system(g, s, 1 + g.below(2), 2, 2);
      auto r = solve_weak(sys);
      ASSERT_NE(r.status, SolveResult::inconclusive);
      EXPECT_EQ(r.status == SolveResult::solved, oracle_weakly_solvable(t, sys)) << sys.str();
      if (r.solution) EXPECT_TRUE(oracle_weak(t, sys, ints(*r.solution)));
    }
  }
}

TEST(SolveWeak, StrictFieldsMatchGaussianElimination) {
  for (int p : {2, 3, 5}) {
    auto f = prime_field(p);
    const oracle::Zp z{p};
    gen::Gen g(100 + p);
    for (std::size_t m = 1; m <= 3; ++m)
      for (std::size_t n = 1; n <= 3; ++n)
        for (int i = 0; i < 50; ++i) {
          auto sys = random_system(g, f, m, n, 1);
          std::vector<int> b;
          for (const auto& x : sys.b) b.push_back(*x.begin());
          const auto expect = oracle::solve(z, int(m), int(n), ints(sys.a), b);
          auto r = solve_weak(sys);
          ASSERT_EQ(r.status == SolveResult::solved, expect.has_value()) << sys.str();
          if (r.solution) {
            EXPECT_TRUE(is_solution(sys, *r.solution));
            EXPECT_EQ(oracle::matmul(z, int(m), int(n), 1, ints(sys.a), ints(*r.solution)), b);
          }
        }
  }
}

TEST(Kernel, EqualPairCancels) {
  for (auto s : {krasner(), signs(), hp(3), hp(5), hp(7)})
    for (Elem a = 0; a < s->size(); ++a) {
      const Matrix m(s, 1, 2, {a, a});
      EXPECT_TRUE(is_nontrivial_kernel(m, column(s, {s->one(), s->neg(s->one())})));
      auto r = find_nontrivial_kernel(m);
      ASSERT_EQ(r.status, SolveResult::solved);
      EXPECT_TRUE(is_nontrivial_kernel(m, *r.solution));
    }
}

TEST(Kernel, EveryWideHp3MatrixHasOne) {
  auto h = hp(3);
  const auto t = oracle::Table::from(*h);
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{1, 2}, {2, 3}}) {
    std::size_t total = 1;
    for (std::size_t k = 0; k < m * n; ++k) total *= 3;
    for (std::size_t idx = 0; idx < total; ++idx) {
      const Matrix a = matrix_at(h, m, n, idx);
      ASSERT_TRUE(oracle::has_nontrivial_kernel(t, int(m), int(n), ints(a)));
      auto r = find_nontrivial_kernel(a);
      ASSERT_EQ(r.status, SolveResult::solved) << a.str();
      EXPECT_TRUE(is_nontrivial_kernel(a, *r.solution));
    }
  }
}

TEST(Kernel, ConstructiveResultsCheckAgainstNaiveProducts) {
  gen::Gen g(9);
  auto h = hp(5);
  const auto t = oracle::Table::from(*h);
  std::size_t constructive = 0;
  for (int i = 0; i < 300; ++i) {
    const Matrix a = g.matrix(h, 2, 3);
    auto r = find_nontrivial_kernel(a);
    ASSERT_EQ(r.status, SolveResult::solved);
    if (r.method == "constructive") ++constructive;
    const auto d = ints(*r.solution);
    EXPECT_NE(d, std::vector<int>(3, 0));
    for (const auto& cell : oracle::matmul_cells(t, 2, 3, 1, ints(a), d))
      EXPECT_TRUE(cell.count(h->zero()));
  }
  EXPECT_EQ(constructive, 300u);
}

TEST(Kernel, NoneOverAFieldWithFullRank) {
  auto f = prime_field(3);
  auto r = find_nontrivial_kernel(Matrix::identity(f, 2));
  EXPECT_EQ(r.status, SolveResult::none);
}

TEST(Closedness, FieldsAndHyperfieldsPass) {
  for (auto s : {prime_field(3), hp(3), krasner()}) {
    auto rep = is_linearly_closed(s, {{1, 2}, {2, 3}});
    EXPECT_EQ(rep.verdict, Verdict::pass) << s->name();
    EXPECT_GT(rep.instances, 0u);
  }
  EXPECT_EQ(is_linearly_closed(hp(3), 2, 3).verdict, Verdict::pass);
  EXPECT_EQ(is_linearly_closed_sampled(hp(7), 2, 3, 200, 11).verdict, Verdict::pass);
}

TEST(Closedness, MutatedSumLosesCancellation) {
  auto h = hp(3);
  const Elem one = h->elem("1"), two = h->elem("2");
  // Every element is its own negative, so cancellation lives in x + x.
  auto m = testutil::mutate(*h, true, one, one, ElemSet::single(one));
  m = testutil::mutate(*m, true, two, two, ElemSet::single(two));
  auto rep = is_linearly_closed(m, {{1, 2}});
  ASSERT_EQ(rep.verdict, Verdict::fail);
  ASSERT_FALSE(rep.counterexamples.empty());
  EXPECT_EQ(rep.counterexamples[0].tuple, (std::vector<Elem>{one, one}));
  const Matrix a(m, 1, 2, rep.counterexamples[0].tuple);
  const auto t = oracle::Table::from(*m);
  EXPECT_FALSE(oracle::has_nontrivial_kernel(t, 1, 2, ints(a)));
}

TEST(SystemText, RoundTrip) {
  gen::Gen g(12);
  auto h = hp(5);
  for (int i = 0; i < 20; ++i) {
    auto sys = random_system(g, h, 2, 3, 3);
    EXPECT_EQ(parse_system(h, format_system(sys)), sys);
  }
  EXPECT_THROW(parse_system(h, "1 2\n1 2\n"), Error);
  EXPECT_THROW(parse_system(h, "1 2\n1 2\nrhs {}\n"), Error);
}
