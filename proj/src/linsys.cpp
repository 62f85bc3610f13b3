#include "mvla/linsys.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace mvla {

LinearSystem LinearSystem::homogeneous(const Matrix& a) {
  return {a, std::vector<ElemSet>(a.rows(), ElemSet::single(a.base()->zero()))};
}

std::string LinearSystem::str() const {
  std::string out = a.str() + " x in [";
  for (std::size_t i = 0; i < b.size(); ++i) out += (i ? "," : "") + base()->describe(b[i]);
  return out + "]";
}

namespace {

void require_system(const LinearSystem& sys, const Matrix& d) {
  if (sys.b.size() != sys.rows()) throw Error("right-hand side has the wrong number of rows");
  if (d.rows() != sys.unknowns() || d.cols() != 1)
    throw Error("solution vector has the wrong shape");
  require_same_base(*sys.base(), *d.base());
}

// (Ad)_i for a column vector d.
std::vector<ElemSet> row_values(const Matrix& a, const std::vector<Elem>& d) {
  const Structure& s = *a.base();
  std::vector<ElemSet> out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    ElemSet acc = ElemSet::single(s.zero());
    for (std::size_t k = 0; k < a.cols(); ++k) acc = s.sum(acc, s.prod(a.at(i, k), d[k]));
    out.push_back(acc);
  }
  return out;
}

}  // namespace

bool is_solution(const LinearSystem& sys, const Matrix& d) {
  require_system(sys, d);
  auto v = row_values(sys.a, d.entries());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].subset_of(sys.b[i])) return false;
  return true;
}

bool is_weak_solution(const LinearSystem& sys, const Matrix& d) {
  require_system(sys, d);
  auto v = row_values(sys.a, d.entries());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].intersects(sys.b[i])) return false;
  return true;
}

std::vector<LinearSystem> apply_elementary(const LinearSystem& sys, const ElementaryOp& op,
                                           const Budget& budget) {
  const Structure& s = *sys.base();
  std::vector<ElemSet> b = sys.b;
  switch (op.kind) {
    case ElementaryOp::swap:
      std::swap(b.at(op.i), b.at(op.j));
      break;
    case ElementaryOp::scale:
      b.at(op.i) = s.prod(ElemSet::single(op.lambda), b.at(op.i));
      break;
    case ElementaryOp::add:
      b.at(op.i) = s.sum(b.at(op.i), b.at(op.j));
      break;
  }
  std::vector<LinearSystem> out;
  for (auto& m : elementary(sys.a, op).members(budget)) out.push_back({std::move(m), b});
  return out;
}

// ---- scaling ----------------------------------------------------------------

namespace {

// Applies op and keeps the members whose entry (row, col) equals want.
void step(const LinearSystem& sys, const ElementaryOp& op, std::size_t row, std::size_t col,
          Elem want, std::vector<LinearSystem>& out, const Budget& budget) {
  for (auto& t : apply_elementary(sys, op, budget))
    if (t.a.at(row, col) == want) {
      out.push_back(std::move(t));
      if (out.size() > budget.node_cap)
        throw BlowupError("scaling produced more than " + std::to_string(budget.node_cap) +
                          " systems");
    }
}

}  // namespace

std::vector<LinearSystem> scale_system(const LinearSystem& sys, const Budget& budget) {
  const Structure& s = *sys.base();
  if (sys.b.size() != sys.rows()) throw Error("right-hand side has the wrong number of rows");
  const std::size_t m = sys.rows(), n = sys.unknowns();

  // Branches can have different zero patterns, so each keeps its own
  // position.
  struct Branch {
    LinearSystem sys;
    std::size_t row = 0, col = 0;
  };
  std::vector<Branch> work{{sys, 0, 0}};
  std::set<LinearSystem> done;

  while (!work.empty()) {
    Branch br = std::move(work.back());
    work.pop_back();
    if (br.row >= m || br.col >= n) {
      done.insert(std::move(br.sys));
      if (done.size() > budget.node_cap) throw BlowupError("too many scaled systems");
      continue;
    }
    const Matrix& a = br.sys.a;
    std::size_t p = br.row;
    while (p < m && a.at(p, br.col) == s.zero()) ++p;
    if (p == m) {
      work.push_back({std::move(br.sys), br.row, br.col + 1});
      continue;
    }
    const std::size_t r = br.row, c = br.col;
    std::vector<LinearSystem> cur{br.sys};
    if (p != r) {
      std::vector<LinearSystem> next;
      for (auto& t : cur) step(t, ElementaryOp::swap_rows(r, p), r, c, a.at(p, c), next, budget);
      cur = std::move(next);
    }
    {
      const Elem piv = cur.front().a.at(r, c);
      auto inv = inverse(s, piv);
      if (!inv) throw Error("pivot " + s.token(piv) + " has no inverse");
      std::vector<LinearSystem> next;
      for (auto& t : cur) step(t, ElementaryOp::scale_row(r, *inv), r, c, s.one(), next, budget);
      cur = std::move(next);
    }
    for (std::size_t k = r + 1; k < m; ++k) {
      std::vector<LinearSystem> next;
      for (auto& t : cur) {
        const Elem akc = t.a.at(k, c);
        if (akc == s.zero()) {
          next.push_back(std::move(t));
          continue;
        }
        auto inv = inverse(s, akc);
        if (!inv) throw Error("entry " + s.token(akc) + " has no inverse");
        std::vector<LinearSystem> scaled;
        step(t, ElementaryOp::scale_row(k, s.neg(*inv)), k, c, s.neg(s.one()), scaled, budget);
        for (auto& u : scaled) step(u, ElementaryOp::add_row(k, r), k, c, s.zero(), next, budget);
      }
      cur = std::move(next);
    }
    for (auto& t : cur) work.push_back({std::move(t), r + 1, c + 1});
  }
  return {done.begin(), done.end()};
}

std::string to_string(SystemType t) {
  switch (t) {
    case SystemType::impossible: return "impossible";
    case SystemType::determined: return "determined";
    case SystemType::free: return "free";
  }
  return "?";
}

namespace {

// First nonzero column per row, or cols for a zero row.
std::vector<std::size_t> pivots(const Matrix& a) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::size_t j = 0;
    while (j < a.cols() && a.at(i, j) == a.base()->zero()) ++j;
    out.push_back(j);
  }
  return out;
}

void require_echelon(const Matrix& a) {
  auto p = pivots(a);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < a.cols() && p[i] < i) throw Error("system is not scaled");
    if (i > 0 && p[i] < a.cols() && p[i] <= p[i - 1]) throw Error("system is not scaled");
  }
}

}  // namespace

SystemType classify(const LinearSystem& scaled) {
  require_echelon(scaled.a);
  const Structure& s = *scaled.base();
  auto p = pivots(scaled.a);
  std::size_t count = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == scaled.unknowns()) {
      if (!scaled.b[i].contains(s.zero())) return SystemType::impossible;
    } else {
      ++count;
    }
  }
  return count == scaled.unknowns() ? SystemType::determined : SystemType::free;
}

namespace {

struct BackSub {
  const LinearSystem& sys;
  const Structure& s;
  std::vector<std::size_t> piv;       // per row
  std::vector<std::size_t> row_of;    // per column, rows() when free
  std::vector<Elem> x;
  bool enumerate_free;
  std::size_t nodes = 0;
  std::size_t cap;

  // Fixes unknowns from the last column down.
  bool solve(std::size_t col) {
    if (col == 0) return true;
    if (++nodes > cap) throw BlowupError("back substitution exceeded the node cap");
    const std::size_t j = col - 1;
    const std::size_t i = row_of[j];
    if (i == sys.rows()) {
      if (!enumerate_free) {
        x[j] = s.zero();
        return solve(j);
      }
      for (Elem v = 0; v < s.size(); ++v) {
        x[j] = v;
        if (solve(j)) return true;
      }
      return false;
    }
    // a^{-1} B_i - a^{-1} a_i(j+1) x_(j+1) - ...
    const Elem inv = *inverse(s, sys.a.at(i, j));
    ElemSet cand = s.prod(ElemSet::single(inv), sys.b[i]);
    for (std::size_t l = j + 1; l < sys.unknowns(); ++l) {
      ElemSet t = s.prod(s.prod(ElemSet::single(inv), ElemSet::single(sys.a.at(i, l))),
                         ElemSet::single(x[l]));
      cand = s.sum(cand, s.neg(t));
    }
    for (Elem v : cand) {
      x[j] = v;
      ElemSet row = ElemSet::single(s.zero());
      for (std::size_t l = j; l < sys.unknowns(); ++l)
        row = s.sum(row, s.prod(sys.a.at(i, l), x[l]));
      if (row.intersects(sys.b[i]) && solve(j)) return true;
    }
    return false;
  }
};

}  // namespace

std::optional<Matrix> back_substitute(const LinearSystem& scaled, const SolveOptions& opt,
                                      const Budget& budget) {
  if (classify(scaled) == SystemType::impossible) throw Error("system is impossible");
  const Structure& s = *scaled.base();
  BackSub bs{scaled, s, pivots(scaled.a), {}, {}, opt.enumerate_free, 0, budget.node_cap};
  bs.row_of.assign(scaled.unknowns(), scaled.rows());
  for (std::size_t i = 0; i < bs.piv.size(); ++i)
    if (bs.piv[i] < scaled.unknowns()) bs.row_of[bs.piv[i]] = i;
  bs.x.assign(scaled.unknowns(), s.zero());
  if (!bs.solve(scaled.unknowns())) return std::nullopt;
  Matrix d = Matrix::column(scaled.base(), bs.x);
  if (!is_weak_solution(scaled, d)) return std::nullopt;
  return d;
}

std::string to_string(SolveResult::Status s) {
  switch (s) {
    case SolveResult::solved: return "solved";
    case SolveResult::none: return "none";
    case SolveResult::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

double power(std::size_t base, std::size_t exp) {
  double v = 1;
  for (std::size_t k = 0; k < exp; ++k) v *= static_cast<double>(base);
  return v;
}

// Calls fn on every vector of the given length in lexicographic order
// (first coordinate most significant) until it returns true.
template <class Fn>
bool scan_vectors(std::size_t n_elems, std::size_t length, Fn&& fn) {
  std::vector<Elem> v(length, 0);
  for (;;) {
    if (fn(v)) return true;
    std::size_t k = length;
    while (k > 0 && ++v[k - 1] == n_elems) v[--k] = 0;
    if (k == 0) return false;
  }
}

}  // namespace

SolveResult solve_weak(const LinearSystem& sys, const SolveOptions& opt, const Budget& budget) {
  const Structure& s = *sys.base();
  SolveResult res;
  try {
    for (const auto& t : scale_system(sys, budget)) {
      if (classify(t) == SystemType::impossible) continue;
      auto d = back_substitute(t, opt, budget);
      if (d && is_weak_solution(sys, *d)) {
        res.status = SolveResult::solved;
        res.solution = d;
        res.method = "scaled";
        return res;
      }
    }
  } catch (const BlowupError&) {
  }

  res.method = "exhaustive";
  if (power(s.size(), sys.unknowns()) > static_cast<double>(budget.set_cap)) return res;
  std::optional<Matrix> found;
  scan_vectors(s.size(), sys.unknowns(), [&](const std::vector<Elem>& v) {
    Matrix d = Matrix::column(sys.base(), v);
    if (!is_weak_solution(sys, d)) return false;
    found = d;
    return true;
  });
  res.status = found ? SolveResult::solved : SolveResult::none;
  res.solution = found;
  return res;
}

// ---- kernels ----------------------------------------------------------------

bool is_nontrivial_kernel(const Matrix& a, const Matrix& d) {
  if (d.is_zero()) return false;
  return is_weak_solution(LinearSystem::homogeneous(a), d);
}

namespace {

using Rows = std::vector<std::vector<Elem>>;

bool singleton_products(const Structure& s) {
  for (Elem a = 0; a < s.size(); ++a)
    for (Elem b = 0; b < s.size(); ++b)
      if (!s.prod(a, b).is_single()) return false;
  return true;
}

ElemSet dot(const Structure& s, const std::vector<Elem>& row, std::size_t from,
            const std::vector<Elem>& d) {
  ElemSet acc = ElemSet::single(s.zero());
  for (std::size_t j = from; j < row.size(); ++j) acc = s.sum(acc, s.prod(row[j], d[j - from]));
  return acc;
}

// Recursive elimination. Rows that are nonzero in the first column are
// normalised to start with 1; differences against the first of them (one
// representative per entry) and the rows starting with 0 form a smaller
// system in the remaining unknowns. A kernel vector d' of that system is
// completed by x_1 = -z for some z common to every normalised row's d'-sum.
struct KernelBuilder {
  const Structure& s;
  std::size_t nodes = 0;
  std::size_t cap;

  std::optional<std::vector<Elem>> build(const Rows& rows, std::size_t m) {
    if (++nodes > cap) return std::nullopt;
    if (m == 0) return std::nullopt;
    std::vector<Elem> unit(m, s.zero());
    if (rows.empty()) {
      unit[0] = s.one();
      return unit;
    }
    for (std::size_t j = 0; j < m; ++j) {
      bool zero_col = true;
      for (const auto& r : rows) zero_col = zero_col && r[j] == s.zero();
      if (zero_col) {
        unit[j] = s.one();
        return unit;
      }
    }
    if (m <= rows.size()) return std::nullopt;

    Rows norm, rest;
    for (const auto& r : rows) {
      if (r[0] == s.zero()) {
        rest.emplace_back(r.begin() + 1, r.end());
        continue;
      }
      const Elem inv = *inverse(s, r[0]);
      std::vector<Elem> t;
      for (Elem e : r) t.push_back(s.prod(inv, e).first());
      norm.push_back(std::move(t));
    }
    // Difference entries as choice sets.
    std::vector<std::vector<ElemSet>> diffs;
    for (std::size_t i = 1; i < norm.size(); ++i) {
      std::vector<ElemSet> row;
      for (std::size_t j = 1; j < m; ++j) row.push_back(s.sum(norm[i][j], s.neg(norm[0][j])));
      diffs.push_back(std::move(row));
    }
    Rows reduced(diffs.size(), std::vector<Elem>(m - 1));
    reduced.insert(reduced.end(), rest.begin(), rest.end());
    return choose(norm, diffs, reduced, 0, m);
  }

  std::optional<std::vector<Elem>> choose(const Rows& norm,
                                          const std::vector<std::vector<ElemSet>>& diffs,
                                          Rows& reduced, std::size_t pos, std::size_t m) {
    const std::size_t width = m - 1;
    if (pos == diffs.size() * width) {
      auto sub = build(reduced, width);
      if (!sub) return std::nullopt;
      ElemSet common = s.all();
      for (const auto& r : norm) common &= dot(s, r, 1, *sub);
      if (common.empty()) return std::nullopt;
      std::vector<Elem> x{s.neg(common.first())};
      x.insert(x.end(), sub->begin(), sub->end());
      return x;
    }
    const std::size_t i = pos / width, j = pos % width;
    for (Elem e : diffs[i][j]) {
      reduced[i][j] = e;
      if (auto r = choose(norm, diffs, reduced, pos + 1, m)) return r;
      if (nodes > cap) return std::nullopt;
    }
    return std::nullopt;
  }
};

}  // namespace

SolveResult find_nontrivial_kernel(const Matrix& a, const Budget& budget) {
  const Structure& s = *a.base();
  SolveResult res;
  if (a.rows() < a.cols() && singleton_products(s)) {
    Rows rows;
    for (std::size_t i = 0; i < a.rows(); ++i)
      rows.emplace_back(a.entries().begin() + i * a.cols(),
                        a.entries().begin() + (i + 1) * a.cols());
    KernelBuilder kb{s, 0, budget.node_cap};
    if (auto v = kb.build(rows, a.cols())) {
      Matrix d = Matrix::column(a.base(), *v);
      if (is_nontrivial_kernel(a, d)) {
        res.status = SolveResult::solved;
        res.solution = d;
        res.method = "constructive";
        return res;
      }
    }
  }

  res.method = "exhaustive";
  if (power(s.size(), a.cols()) > static_cast<double>(budget.set_cap)) return res;
  const LinearSystem sys = LinearSystem::homogeneous(a);
  std::optional<Matrix> found;
  scan_vectors(s.size(), a.cols(), [&](const std::vector<Elem>& v) {
    if (std::all_of(v.begin(), v.end(), [&](Elem e) { return e == s.zero(); })) return false;
    Matrix d = Matrix::column(a.base(), v);
    if (!is_weak_solution(sys, d)) return false;
    found = d;
    return true;
  });
  res.status = found ? SolveResult::solved : SolveResult::none;
  res.solution = found;
  return res;
}

namespace {

void check_kernel(const Matrix& a, AxiomReport& rep, const Budget& budget) {
  ++rep.instances;
  auto r = find_nontrivial_kernel(a, budget);
  if (r.status == SolveResult::solved) return;
  if (r.status == SolveResult::inconclusive) {
    ++rep.skipped;
    if (rep.verdict == Verdict::pass) rep.verdict = Verdict::inconclusive;
    return;
  }
  rep.verdict = Verdict::fail;
  if (rep.counterexamples.empty())
    rep.counterexamples.push_back({"kernel(" + std::to_string(a.rows()) + "," +
                                       std::to_string(a.cols()) + ")",
                                   a.entries(), a.str()});
}

}  // namespace

AxiomReport is_linearly_closed(const StructurePtr& f,
                               const std::vector<std::pair<std::size_t, std::size_t>>& shapes,
                               const Budget& budget) {
  AxiomReport rep;
  rep.subject = f->name() + " linearly closed";
  for (auto [n, m] : shapes) {
    if (n >= m) throw Error("linear closedness needs more unknowns than equations");
    if (power(f->size(), n * m) > static_cast<double>(budget.set_cap))
      throw BlowupError("too many " + std::to_string(n) + "x" + std::to_string(m) + " matrices");
    scan_vectors(f->size(), n * m, [&](const std::vector<Elem>& e) {
      check_kernel(Matrix(f, n, m, e), rep, budget);
      return false;
    });
  }
  return rep;
}

AxiomReport is_linearly_closed(const StructurePtr& f, std::size_t max_rows, std::size_t max_cols,
                               const Budget& budget) {
  std::vector<std::pair<std::size_t, std::size_t>> shapes;
  for (std::size_t n = 1; n <= max_rows; ++n)
    for (std::size_t m = n + 1; m <= max_cols; ++m) shapes.emplace_back(n, m);
  return is_linearly_closed(f, shapes, budget);
}

AxiomReport is_linearly_closed_sampled(const StructurePtr& f, std::size_t rows, std::size_t cols,
                                       std::size_t count, std::uint64_t seed,
                                       const Budget& budget) {
  if (rows >= cols) throw Error("linear closedness needs more unknowns than equations");
  AxiomReport rep;
  rep.subject = f->name() + " linearly closed (sampled)";
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(f->size()) - 1);
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<Elem> e(rows * cols);
    for (auto& x : e) x = static_cast<Elem>(pick(rng));
    check_kernel(Matrix(f, rows, cols, e), rep, budget);
  }
  return rep;
}

// ---- text format ------------------------------------------------------------

LinearSystem parse_system(StructurePtr base, std::string_view text) {
  std::string matrix_part, rhs_part;
  std::istringstream in{std::string(text)};
  std::string line;
  bool in_rhs = false;
  while (std::getline(in, line)) {
    std::string_view v = line;
    auto start = v.find_first_not_of(" \t\r");
    if (start != std::string_view::npos && v.substr(start, 3) == "rhs") in_rhs = true;
    (in_rhs ? rhs_part : matrix_part) += line + "\n";
  }
  Matrix a = parse_matrix(base, matrix_part);
  std::vector<ElemSet> b;
  std::istringstream rin(rhs_part);
  while (std::getline(rin, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string w;
    if (!(words >> w)) continue;
    if (w != "rhs") throw Error("expected 'rhs', got '" + w + "'");
    std::string rest;
    std::getline(words, rest);
    for (char& ch : rest)
      if (ch == '{' || ch == '}') ch = ' ';
    std::istringstream toks(rest);
    ElemSet set;
    while (toks >> w) set.insert(base->elem(w));
    if (set.empty()) throw Error("empty right-hand side");
    b.push_back(set);
  }
  if (b.size() != a.rows())
    throw Error("system has " + std::to_string(b.size()) + " rhs lines, expected " +
                std::to_string(a.rows()));
  return {std::move(a), std::move(b)};
}

std::string format_system(const LinearSystem& sys) {
  std::string out = format_matrix(sys.a);
  for (const auto& set : sys.b) {
    out += "rhs {";
    bool first = true;
    for (Elem e : set) {
      out += (first ? "" : " ") + sys.base()->token(e);
      first = false;
    }
    out += "}\n";
  }
  return out;
}

}  // namespace mvla
