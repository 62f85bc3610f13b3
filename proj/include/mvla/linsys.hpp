#pragma once

// Linear systems Ax ⊆ B over superfields: solution predicates, elementary
// rewriting, scaling, back substitution, kernels and linear closedness.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mvla/axioms.hpp"
#include "mvla/matrix.hpp"

namespace mvla {

struct LinearSystem {
  Matrix a;
  std::vector<ElemSet> b;  // one nonempty set per row

  const StructurePtr& base() const { return a.base(); }
  std::size_t rows() const { return a.rows(); }
  std::size_t unknowns() const { return a.cols(); }

  // Ax ⊆ {0}, read as 0 in (Ad)_i for weak solutions.
  static LinearSystem homogeneous(const Matrix& a);

  std::string str() const;

  friend bool operator==(const LinearSystem& x, const LinearSystem& y) {
    return x.a == y.a && x.b == y.b;
  }
  friend bool operator<(const LinearSystem& x, const LinearSystem& y) {
    if (!(x.a == y.a)) return x.a < y.a;
    return x.b < y.b;
  }
};

// Ad ⊆ B rowwise.
bool is_solution(const LinearSystem& sys, const Matrix& d);
// Ad ∩ B nonempty rowwise.
bool is_weak_solution(const LinearSystem& sys, const Matrix& d);

// Every system obtained by applying `op` to A and B. Swap permutes B,
// scale multiplies B_i by lambda, add replaces B_i with B_i + B_j.
std::vector<LinearSystem> apply_elementary(const LinearSystem& sys, const ElementaryOp& op,
                                           const Budget& budget = {});

// Gaussian elimination into row echelon form. Each pivot row is scaled by
// the pivot's inverse and every lower row k with a nonzero in the pivot
// column gets L_k <- -a_kc^{-1} L_k, then L_k <- L_k + L_pivot. Every member
// with 1 at the pivot and 0 below it is kept, so the result is the set of
// reachable scaled systems, sorted. Throws BlowupError past budget.node_cap.
std::vector<LinearSystem> scale_system(const LinearSystem& sys, const Budget& budget = {});

enum class SystemType {
  impossible,  // a zero row whose right-hand side misses 0
  determined,  // every unknown has a pivot
  free,        // some unknown has no pivot
};

std::string to_string(SystemType t);

// Requires an upper triangular (echelon) coefficient matrix.
SystemType classify(const LinearSystem& scaled);

struct SolveOptions {
  // Enumerate all values of pivot-free unknowns instead of fixing them at 0.
  bool enumerate_free = false;
};

// Depth-first search over x_k in a_kk^{-1} B_k - a_kk^{-1} a_k(k+1) x_(k+1) - ...
// from the last pivot up, candidates in carrier order. Returns the first
// weak solution found. Throws Error on an impossible system.
std::optional<Matrix> back_substitute(const LinearSystem& scaled, const SolveOptions& opt = {},
                                      const Budget& budget = {});

struct SolveResult {
  enum Status { solved, none, inconclusive } status = inconclusive;
  std::optional<Matrix> solution;
  std::string method;  // "scaled" or "exhaustive"
};

std::string to_string(SolveResult::Status s);

// Scales, back-substitutes per branch and re-checks the candidate against
// the original system. Falls back to scanning every vector when that fails;
// only the scan can prove that no weak solution exists.
SolveResult solve_weak(const LinearSystem& sys, const SolveOptions& opt = {},
                       const Budget& budget = {});

// Nonzero d with 0 in (Ad)_i for every row. Over structures with singleton
// products a recursive elimination is tried first; anything it returns is
// re-checked, and a scan over all vectors backs it up.
SolveResult find_nontrivial_kernel(const Matrix& a, const Budget& budget = {});
bool is_nontrivial_kernel(const Matrix& a, const Matrix& d);

// Every A with the given shapes (rows, cols), rows < cols, has a nontrivial
// kernel vector. The witness tuple of a failure is the row-major A.
AxiomReport is_linearly_closed(const StructurePtr& f,
                               const std::vector<std::pair<std::size_t, std::size_t>>& shapes,
                               const Budget& budget = {});
// All shapes with rows <= max_rows and rows < cols <= max_cols.
AxiomReport is_linearly_closed(const StructurePtr& f, std::size_t max_rows, std::size_t max_cols,
                               const Budget& budget = {});
// `count` uniformly random matrices of one shape.
AxiomReport is_linearly_closed_sampled(const StructurePtr& f, std::size_t rows, std::size_t cols,
                                       std::size_t count, std::uint64_t seed,
                                       const Budget& budget = {});

// System text: a matrix block, then one `rhs` line per row holding a token
// or a {..} set.
LinearSystem parse_system(StructurePtr base, std::string_view text);
std::string format_system(const LinearSystem& sys);

}  // namespace mvla
