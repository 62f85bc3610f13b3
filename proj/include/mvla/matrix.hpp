#pragma once

// Matrices over a finite multivalued structure.
//
// Entrywise operations give a box (an element set per entry); sets of
// matrices stay boxes while they can and are materialised otherwise.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mvla/structure.hpp"

namespace mvla {

class Matrix {
 public:
  Matrix() = default;
  Matrix(StructurePtr base, std::size_t rows, std::size_t cols, std::vector<Elem> entries);

  static Matrix zero(StructurePtr base, std::size_t rows, std::size_t cols);
  static Matrix identity(StructurePtr base, std::size_t n);
  // Column vector.
  static Matrix column(StructurePtr base, std::vector<Elem> entries);

  const StructurePtr& base() const { return base_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Elem at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
  Elem& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const std::vector<Elem>& entries() const { return e_; }
  bool square() const { return rows_ == cols_; }
  bool is_zero() const;
  bool upper_triangular() const;

  std::string str() const;  // "[[a,b],[c,d]]"

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }
  // Row-major lexicographic in carrier order.
  friend bool operator<(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    return a.e_ < b.e_;
  }

 private:
  StructurePtr base_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> e_;
};

class MatrixSet {
 public:
  MatrixSet() = default;
  static MatrixSet box(StructurePtr base, std::size_t rows, std::size_t cols,
                       std::vector<ElemSet> cells);
  static MatrixSet single(const Matrix& m);
  static MatrixSet of(StructurePtr base, std::size_t rows, std::size_t cols,
                      std::vector<Matrix> members);

  const StructurePtr& base() const { return base_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_box() const { return boxed_; }
  const std::vector<ElemSet>& cells() const { return cells_; }

  std::size_t size() const;  // saturates at SIZE_MAX
  bool empty() const { return size() == 0; }
  bool contains(const Matrix& m) const;
  // Sorted members; throws BlowupError past the cap.
  std::vector<Matrix> members(const Budget& budget = {}) const;

  // Entry (i,j) over all members.
  ElemSet entry_values(std::size_t i, std::size_t j) const;

  std::string str(const Budget& budget = {}) const;  // "{M1; M2; ...}"

  friend bool operator==(const MatrixSet& a, const MatrixSet& b);

 private:
  StructurePtr base_;
  std::size_t rows_ = 0, cols_ = 0;
  bool boxed_ = true;
  std::vector<ElemSet> cells_;
  std::vector<Matrix> members_;
};

MatrixSet unite(const MatrixSet& a, const MatrixSet& b, const Budget& budget = {});

MatrixSet madd(const Matrix& a, const Matrix& b);
MatrixSet madd(const MatrixSet& a, const MatrixSet& b, const Budget& budget = {});
MatrixSet mscale(Elem lambda, const Matrix& a);
MatrixSet mscale(Elem lambda, const MatrixSet& a, const Budget& budget = {});
MatrixSet mneg(const MatrixSet& a, const Budget& budget = {});
// d_ij in a_i1 b_1j + ... + a_ik b_kj.
MatrixSet mmul(const Matrix& a, const Matrix& b);
// Two boxes multiply cellwise with set-valued entries; other sets by union
// over member pairs.
MatrixSet mmul(const MatrixSet& a, const MatrixSet& b, const Budget& budget = {});

// Union over permutations of sgn(s) a_1s(1)...a_ns(n), terms taken with the
// identity first and then in lexicographic order, sign applied by negation.
ElemSet det(const Matrix& a, const Budget& budget = {});
ElemSet det(const MatrixSet& a, const Budget& budget = {});

struct ElementaryOp {
  enum Kind { swap, scale, add } kind;
  std::size_t i = 0;
  std::size_t j = 0;   // swap partner, or the row added to row i
  Elem lambda = 0;     // scale factor, nonzero

  static ElementaryOp swap_rows(std::size_t i, std::size_t j) { return {swap, i, j, 0}; }
  static ElementaryOp scale_row(std::size_t i, Elem l) { return {scale, i, 0, l}; }
  static ElementaryOp add_row(std::size_t i, std::size_t j) { return {add, i, j, 0}; }
};

MatrixSet elementary(const Matrix& a, const ElementaryOp& op);
MatrixSet elementary(const MatrixSet& a, const ElementaryOp& op, const Budget& budget = {});

// 1 in AB and 1 in BA.
bool is_inverse(const Matrix& a, const Matrix& b);

struct InverseResult {
  enum Status { found, none, inconclusive } status = inconclusive;
  std::optional<Matrix> inverse;
  std::string method;  // "triangular" or "exhaustive"
};

// Upper triangular with 0 not in det: diagonal inverses and back
// substitution, least admissible entry first. Otherwise an exhaustive
// search over all matrices, capped by budget.set_cap.
InverseResult find_inverse(const Matrix& a, const Budget& budget = {});

// Matrix text: "rows cols" then row-major entries; a set-valued entry is
// written {a b c}. '#' starts a comment.
MatrixSet parse_matrix_set(StructurePtr base, std::string_view text);
Matrix parse_matrix(StructurePtr base, std::string_view text);
std::string format_matrix(const Matrix& m);  // the text format

// All rows x cols matrices as a carrier, in lexicographic order, with
// entrywise sum and negation.
MultiGroupTable matrix_group(const StructurePtr& base, std::size_t rows, std::size_t cols);
// n x n matrices with sum and product; identity is the one.
StructurePtr matrix_ring(const StructurePtr& base, std::size_t n);
// Matrix with the given index in matrix_group / matrix_ring order.
Matrix matrix_at(const StructurePtr& base, std::size_t rows, std::size_t cols, std::size_t index);
std::size_t matrix_index(const Matrix& m);

}  // namespace mvla
