#include "mvla/matrix.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <sstream>

namespace mvla {

Matrix::Matrix(StructurePtr base, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
    : base_(std::move(base)), rows_(rows), cols_(cols), e_(std::move(entries)) {
  if (e_.size() != rows_ * cols_) throw Error("matrix entry count does not match its shape");
}

Matrix Matrix::zero(StructurePtr base, std::size_t rows, std::size_t cols) {
  Elem z = base->zero();
  return Matrix(std::move(base), rows, cols, std::vector<Elem>(rows * cols, z));
}

Matrix Matrix::identity(StructurePtr base, std::size_t n) {
  Matrix m = zero(base, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = base->one();
  return m;
}

Matrix Matrix::column(StructurePtr base, std::vector<Elem> entries) {
  const std::size_t n = entries.size();
  return Matrix(std::move(base), n, 1, std::move(entries));
}

bool Matrix::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [&](Elem x) { return x == base_->zero(); });
}

bool Matrix::upper_triangular() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < std::min(i, cols_); ++j)
      if (at(i, j) != base_->zero()) return false;
  return true;
}

std::string Matrix::str() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out += i ? ",[" : "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out += ',';
      out += base_->token(at(i, j));
    }
    out += ']';
  }
  return out + ']';
}

// ---- MatrixSet ---------------------------------------------------------------

MatrixSet MatrixSet::box(StructurePtr base, std::size_t rows, std::size_t cols,
                         std::vector<ElemSet> cells) {
  if (cells.size() != rows * cols) throw Error("matrix box has the wrong number of cells");
  MatrixSet s;
  s.base_ = std::move(base);
  s.rows_ = rows;
  s.cols_ = cols;
  if (std::any_of(cells.begin(), cells.end(), [](const ElemSet& c) { return c.empty(); })) {
    s.boxed_ = false;
    return s;
  }
  s.cells_ = std::move(cells);
  return s;
}

MatrixSet MatrixSet::single(const Matrix& m) {
  std::vector<ElemSet> cells;
  for (Elem e : m.entries()) cells.push_back(ElemSet::single(e));
  return box(m.base(), m.rows(), m.cols(), std::move(cells));
}

MatrixSet MatrixSet::of(StructurePtr base, std::size_t rows, std::size_t cols,
                        std::vector<Matrix> members) {
  MatrixSet s;
  s.base_ = std::move(base);
  s.rows_ = rows;
  s.cols_ = cols;
  s.boxed_ = false;
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (const auto& m : members)
    if (m.rows() != rows || m.cols() != cols) throw Error("matrix set mixes shapes");
  s.members_ = std::move(members);
  return s;
}

std::size_t MatrixSet::size() const {
  if (!boxed_) return members_.size();
  std::size_t n = 1;
  for (const auto& c : cells_) {
    if (n > std::numeric_limits<std::size_t>::max() / c.size())
      return std::numeric_limits<std::size_t>::max();
    n *= c.size();
  }
  return n;
}

bool MatrixSet::contains(const Matrix& m) const {
  if (m.rows() != rows_ || m.cols() != cols_) return false;
  if (!boxed_) return std::binary_search(members_.begin(), members_.end(), m);
  for (std::size_t k = 0; k < cells_.size(); ++k)
    if (!cells_[k].contains(m.entries()[k])) return false;
  return true;
}

std::vector<Matrix> MatrixSet::members(const Budget& budget) const {
  if (!boxed_) return members_;
  const std::size_t total = size();
  if (total > budget.set_cap)
    throw BlowupError("matrix set has more than " + std::to_string(budget.set_cap) + " members");
  std::vector<std::vector<Elem>> opts;
  for (const auto& c : cells_) opts.push_back(c.to_vector());
  std::vector<std::size_t> idx(cells_.size(), 0);
  std::vector<Matrix> out;
  out.reserve(total);
  for (;;) {
    std::vector<Elem> e(cells_.size());
    for (std::size_t k = 0; k < e.size(); ++k) e[k] = opts[k][idx[k]];
    out.emplace_back(base_, rows_, cols_, std::move(e));
    // Last entry varies fastest, so members come out sorted.
    std::size_t k = idx.size();
    while (k > 0 && ++idx[k - 1] == opts[k - 1].size()) idx[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

ElemSet MatrixSet::entry_values(std::size_t i, std::size_t j) const {
  if (boxed_) return cells_[i * cols_ + j];
  ElemSet out;
  for (const auto& m : members_) out.insert(m.at(i, j));
  return out;
}

std::string MatrixSet::str(const Budget& budget) const {
  std::string out = "{";
  bool first = true;
  for (const auto& m : members(budget)) {
    if (!first) out += "; ";
    first = false;
    out += m.str();
  }
  return out + "}";
}

bool operator==(const MatrixSet& a, const MatrixSet& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  if (a.boxed_ && b.boxed_) return a.cells_ == b.cells_;
  if (a.size() != b.size()) return false;
  return a.members() == b.members();
}

MatrixSet unite(const MatrixSet& a, const MatrixSet& b, const Budget& budget) {
  auto ma = a.members(budget);
  auto mb = b.members(budget);
  ma.insert(ma.end(), mb.begin(), mb.end());
  return MatrixSet::of(a.base(), a.rows(), a.cols(), std::move(ma));
}

// ---- arithmetic --------------------------------------------------------------

namespace {

void require_shape(bool ok, const char* what) {
  if (!ok) throw Error(std::string("shape mismatch in ") + what);
}

template <class F>
MatrixSet union_over(const MatrixSet& a, const MatrixSet& b, const Budget& budget, F&& f) {
  std::vector<Matrix> out;
  std::size_t rows = 0, cols = 0;
  for (const auto& x : a.members(budget))
    for (const auto& y : b.members(budget)) {
      MatrixSet r = f(x, y);
      rows = r.rows();
      cols = r.cols();
      auto m = r.members(budget);
      out.insert(out.end(), m.begin(), m.end());
      if (out.size() > budget.set_cap) throw BlowupError("matrix set union exceeds cap");
    }
  return MatrixSet::of(a.base(), rows, cols, std::move(out));
}

}  // namespace

MatrixSet madd(const Matrix& a, const Matrix& b) {
  require_same_base(*a.base(), *b.base());
  require_shape(a.rows() == b.rows() && a.cols() == b.cols(), "madd");
  std::vector<ElemSet> cells;
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    cells.push_back(a.base()->sum(a.entries()[k], b.entries()[k]));
  return MatrixSet::box(a.base(), a.rows(), a.cols(), std::move(cells));
}

MatrixSet madd(const MatrixSet& a, const MatrixSet& b, const Budget& budget) {
  require_same_base(*a.base(), *b.base());
  require_shape(a.rows() == b.rows() && a.cols() == b.cols(), "madd");
  if (a.is_box() && b.is_box()) {
    std::vector<ElemSet> cells;
    for (std::size_t k = 0; k < a.cells().size(); ++k)
      cells.push_back(a.base()->sum(a.cells()[k], b.cells()[k]));
    return MatrixSet::box(a.base(), a.rows(), a.cols(), std::move(cells));
  }
  return union_over(a, b, budget, [](const Matrix& x, const Matrix& y) { return madd(x, y); });
}

MatrixSet mscale(Elem lambda, const Matrix& a) {
  std::vector<ElemSet> cells;
  for (Elem e : a.entries()) cells.push_back(a.base()->prod(lambda, e));
  return MatrixSet::box(a.base(), a.rows(), a.cols(), std::move(cells));
}

MatrixSet mscale(Elem lambda, const MatrixSet& a, const Budget& budget) {
  if (a.is_box()) {
    std::vector<ElemSet> cells;
    for (const auto& c : a.cells()) cells.push_back(a.base()->prod(ElemSet::single(lambda), c));
    return MatrixSet::box(a.base(), a.rows(), a.cols(), std::move(cells));
  }
  std::vector<Matrix> out;
  for (const auto& m : a.members(budget)) {
    auto r = mscale(lambda, m).members(budget);
    out.insert(out.end(), r.begin(), r.end());
  }
  return MatrixSet::of(a.base(), a.rows(), a.cols(), std::move(out));
}

MatrixSet mneg(const MatrixSet& a, const Budget& budget) {
  const Structure& s = *a.base();
  if (a.is_box()) {
    std::vector<ElemSet> cells;
    for (const auto& c : a.cells()) cells.push_back(s.neg(c));
    return MatrixSet::box(a.base(), a.rows(), a.cols(), std::move(cells));
  }
  std::vector<Matrix> out;
  for (auto m : a.members(budget)) {
    std::vector<Elem> e;
    for (Elem x : m.entries()) e.push_back(s.neg(x));
    out.emplace_back(a.base(), a.rows(), a.cols(), std::move(e));
  }
  return MatrixSet::of(a.base(), a.rows(), a.cols(), std::move(out));
}

MatrixSet mmul(const Matrix& a, const Matrix& b) {
  require_same_base(*a.base(), *b.base());
  require_shape(a.cols() == b.rows(), "mmul");
  const Structure& s = *a.base();
  std::vector<ElemSet> cells;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      ElemSet acc = ElemSet::single(s.zero());
      for (std::size_t k = 0; k < a.cols(); ++k) acc = s.sum(acc, s.prod(a.at(i, k), b.at(k, j)));
      cells.push_back(acc);
    }
  return MatrixSet::box(a.base(), a.rows(), b.cols(), std::move(cells));
}

MatrixSet mmul(const MatrixSet& a, const MatrixSet& b, const Budget& budget) {
  require_shape(a.cols() == b.rows(), "mmul");
  require_same_base(*a.base(), *b.base());
  if (a.is_box() && b.is_box()) {
    // Entries range independently: cell (i,j) is the set sum over k of A_ik B_kj.
    const Structure& s = *a.base();
    std::vector<ElemSet> cells;
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) {
        ElemSet acc = ElemSet::single(s.zero());
        for (std::size_t k = 0; k < a.cols(); ++k)
          acc = s.sum(acc, s.prod(a.cells()[i * a.cols() + k], b.cells()[k * b.cols() + j]));
        cells.push_back(acc);
      }
    return MatrixSet::box(a.base(), a.rows(), b.cols(), std::move(cells));
  }
  return union_over(a, b, budget, [](const Matrix& x, const Matrix& y) { return mmul(x, y); });
}

namespace {

bool odd_permutation(const std::vector<std::size_t>& p) {
  std::size_t inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 == 1;
}

}  // namespace

ElemSet det(const Matrix& a, const Budget& budget) {
  if (!a.square()) throw Error("det of a non-square matrix");
  if (a.rows() > budget.det_cap)
    throw BlowupError("det expansion capped at n = " + std::to_string(budget.det_cap));
  const Structure& s = *a.base();
  std::vector<std::size_t> perm(a.rows());
  std::iota(perm.begin(), perm.end(), 0);
  ElemSet acc = ElemSet::single(s.zero());
  do {
    ElemSet term = ElemSet::single(s.one());
    for (std::size_t j = 0; j < perm.size(); ++j)
      term = s.prod(term, ElemSet::single(a.at(j, perm[j])));
    if (odd_permutation(perm)) term = s.neg(term);
    acc = s.sum(acc, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

ElemSet det(const MatrixSet& a, const Budget& budget) {
  ElemSet out;
  for (const auto& m : a.members(budget)) out |= det(m, budget);
  return out;
}

MatrixSet elementary(const Matrix& a, const ElementaryOp& op) {
  const Structure& s = *a.base();
  if (op.i >= a.rows() || (op.kind != ElementaryOp::scale && op.j >= a.rows()))
    throw Error("elementary operation row out of range");
  std::vector<ElemSet> cells;
  for (Elem e : a.entries()) cells.push_back(ElemSet::single(e));
  auto cell = [&](std::size_t i, std::size_t j) -> ElemSet& { return cells[i * a.cols() + j]; };
  switch (op.kind) {
    case ElementaryOp::swap:
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(cell(op.i, j), cell(op.j, j));
      break;
    case ElementaryOp::scale:
      if (op.lambda == s.zero()) throw Error("scaling a row by zero");
      for (std::size_t j = 0; j < a.cols(); ++j) cell(op.i, j) = s.prod(op.lambda, a.at(op.i, j));
      break;
    case ElementaryOp::add:
      if (op.i == op.j) throw Error("adding a row to itself");
      for (std::size_t j = 0; j < a.cols(); ++j)
        cell(op.i, j) = s.sum(a.at(op.i, j), a.at(op.j, j));
      break;
  }
  return MatrixSet::box(a.base(), a.rows(), a.cols(), std::move(cells));
}

MatrixSet elementary(const MatrixSet& a, const ElementaryOp& op, const Budget& budget) {
  std::vector<Matrix> out;
  for (const auto& m : a.members(budget)) {
    auto r = elementary(m, op).members(budget);
    out.insert(out.end(), r.begin(), r.end());
  }
  return MatrixSet::of(a.base(), a.rows(), a.cols(), std::move(out));
}

bool is_inverse(const Matrix& a, const Matrix& b) {
  if (!a.square() || !b.square() || a.rows() != b.rows()) return false;
  const Matrix id = Matrix::identity(a.base(), a.rows());
  return mmul(a, b).contains(id) && mmul(b, a).contains(id);
}

namespace {

// Fills the strict upper part of b row by row from the bottom, keeping
// 0 in (AB)_ij and in (BA)_ij.
bool triangular_fill(const Matrix& a, Matrix& b, std::size_t pos,
                     const std::vector<std::pair<std::size_t, std::size_t>>& cells,
                     std::size_t& nodes, std::size_t cap) {
  if (pos == cells.size()) return is_inverse(a, b);
  if (++nodes > cap) return false;
  const Structure& s = *a.base();
  const auto [i, j] = cells[pos];
  const std::size_t n = a.rows();
  for (Elem x = 0; x < s.size(); ++x) {
    b.at(i, j) = x;
    ElemSet p = ElemSet::single(s.zero()), q = p;
    for (std::size_t k = 0; k < n; ++k) {
      p = s.sum(p, s.prod(a.at(i, k), b.at(k, j)));
      q = s.sum(q, s.prod(b.at(i, k), a.at(k, j)));
    }
    if (p.contains(s.zero()) && q.contains(s.zero()) &&
        triangular_fill(a, b, pos + 1, cells, nodes, cap))
      return true;
  }
  b.at(i, j) = s.zero();
  return false;
}

}  // namespace

InverseResult find_inverse(const Matrix& a, const Budget& budget) {
  if (!a.square()) throw Error("inverse of a non-square matrix");
  const StructurePtr& base = a.base();
  const Structure& s = *base;
  const std::size_t n = a.rows();
  InverseResult res;

  if (a.upper_triangular() && n <= budget.det_cap && !det(a, budget).contains(s.zero())) {
    Matrix b = Matrix::zero(base, n, n);
    bool diag_ok = true;
    for (std::size_t i = 0; i < n && diag_ok; ++i) {
      auto inv = inverse(s, a.at(i, i));
      if (inv)
        b.at(i, i) = *inv;
      else
        diag_ok = false;
    }
    if (diag_ok) {
      std::vector<std::pair<std::size_t, std::size_t>> cells;
      for (std::size_t i = n; i-- > 0;)
        for (std::size_t j = i + 1; j < n; ++j) cells.emplace_back(i, j);
      std::size_t nodes = 0;
      if (triangular_fill(a, b, 0, cells, nodes, budget.node_cap)) {
        res.status = InverseResult::found;
        res.inverse = b;
        res.method = "triangular";
        return res;
      }
    }
  }

  res.method = "exhaustive";
  double space = 1;
  for (std::size_t k = 0; k < n * n; ++k) space *= static_cast<double>(s.size());
  if (space > static_cast<double>(budget.set_cap)) {
    res.status = InverseResult::inconclusive;
    return res;
  }
  std::vector<Elem> e(n * n, 0);
  for (;;) {
    Matrix b(base, n, n, e);
    if (is_inverse(a, b)) {
      res.status = InverseResult::found;
      res.inverse = b;
      return res;
    }
    std::size_t k = e.size();
    while (k > 0 && ++e[k - 1] == s.size()) e[--k] = 0;
    if (k == 0) break;
  }
  res.status = InverseResult::none;
  return res;
}

// ---- text format -------------------------------------------------------------

namespace {

std::vector<std::string> matrix_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  bool comment = false;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  };
  for (char ch : text) {
    if (comment) {
      if (ch == '\n') comment = false;
      continue;
    }
    if (ch == '#') {
      flush();
      comment = true;
    } else if (ch == '{' || ch == '}') {
      flush();
      out.emplace_back(1, ch);
    } else if (std::isspace(static_cast<unsigned char>(ch))) {
      flush();
    } else {
      cur += ch;
    }
  }
  flush();
  return out;
}

std::size_t parse_count(const std::string& t) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(t, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != t.size() || t.empty()) throw Error("expected a dimension, got '" + t + "'");
  return v;
}

}  // namespace

MatrixSet parse_matrix_set(StructurePtr base, std::string_view text) {
  auto toks = matrix_tokens(text);
  if (toks.size() < 2) throw Error("matrix text must start with 'rows cols'");
  const std::size_t rows = parse_count(toks[0]);
  const std::size_t cols = parse_count(toks[1]);
  std::vector<ElemSet> cells;
  std::size_t k = 2;
  while (k < toks.size()) {
    if (toks[k] == "{") {
      ElemSet c;
      ++k;
      while (k < toks.size() && toks[k] != "}") c.insert(base->elem(toks[k++]));
      if (k == toks.size()) throw Error("unclosed '{' in matrix text");
      if (c.empty()) throw Error("empty set in matrix text");
      ++k;
      cells.push_back(c);
    } else if (toks[k] == "}") {
      throw Error("unexpected '}' in matrix text");
    } else {
      cells.push_back(ElemSet::single(base->elem(toks[k++])));
    }
  }
  if (cells.size() != rows * cols)
    throw Error("matrix text has " + std::to_string(cells.size()) + " entries, expected " +
                std::to_string(rows * cols));
  return MatrixSet::box(std::move(base), rows, cols, std::move(cells));
}

Matrix parse_matrix(StructurePtr base, std::string_view text) {
  auto set = parse_matrix_set(std::move(base), text);
  if (set.size() != 1) throw Error("expected a single matrix, got a set-valued entry");
  return set.members()[0];
}

std::string format_matrix(const Matrix& m) {
  std::ostringstream os;
  os << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m.base()->token(m.at(i, j));
    os << '\n';
  }
  return os.str();
}

// ---- matrix carriers ---------------------------------------------------------

Matrix matrix_at(const StructurePtr& base, std::size_t rows, std::size_t cols, std::size_t index) {
  std::vector<Elem> e(rows * cols);
  for (std::size_t k = e.size(); k-- > 0;) {
    e[k] = static_cast<Elem>(index % base->size());
    index /= base->size();
  }
  return Matrix(base, rows, cols, std::move(e));
}

std::size_t matrix_index(const Matrix& m) {
  std::size_t idx = 0;
  for (Elem e : m.entries()) idx = idx * m.base()->size() + e;
  return idx;
}

namespace {

std::size_t carrier_count(const StructurePtr& base, std::size_t cells) {
  std::size_t total = 1;
  for (std::size_t k = 0; k < cells; ++k) {
    total *= base->size();
    if (total > kMaxCarrier) throw Error("matrix carrier exceeds the element limit");
  }
  return total;
}

ElemSet indices_of(const MatrixSet& s) {
  ElemSet out;
  for (const auto& m : s.members()) out.insert(static_cast<Elem>(matrix_index(m)));
  return out;
}

}  // namespace

MultiGroupTable matrix_group(const StructurePtr& base, std::size_t rows, std::size_t cols) {
  const std::size_t total = carrier_count(base, rows * cols);
  MultiGroupTable g;
  g.sum = MultiOp(total);
  std::vector<Matrix> ms;
  for (std::size_t k = 0; k < total; ++k) {
    ms.push_back(matrix_at(base, rows, cols, k));
    g.tokens.push_back(ms.back().str());
  }
  for (std::size_t a = 0; a < total; ++a) {
    std::vector<Elem> ne;
    for (Elem x : ms[a].entries()) ne.push_back(base->neg(x));
    g.neg.push_back(static_cast<Elem>(matrix_index(Matrix(base, rows, cols, ne))));
    for (std::size_t b = 0; b < total; ++b)
      g.sum.set(static_cast<Elem>(a), static_cast<Elem>(b), indices_of(madd(ms[a], ms[b])));
  }
  g.zero = static_cast<Elem>(matrix_index(Matrix::zero(base, rows, cols)));
  return g;
}

StructurePtr matrix_ring(const StructurePtr& base, std::size_t n) {
  MultiGroupTable g = matrix_group(base, n, n);
  const std::size_t total = g.size();
  MultiOp prod(total);
  for (std::size_t a = 0; a < total; ++a) {
    Matrix ma = matrix_at(base, n, n, a);
    for (std::size_t b = 0; b < total; ++b)
      prod.set(static_cast<Elem>(a), static_cast<Elem>(b),
               indices_of(mmul(ma, matrix_at(base, n, n, b))));
  }
  const Elem one = static_cast<Elem>(matrix_index(Matrix::identity(base, n)));
  return make_structure("M" + std::to_string(n) + "(" + base->name() + ")", std::move(g.tokens),
                        std::move(g.sum), std::move(prod), std::move(g.neg), g.zero, one);
}

}  // namespace mvla
