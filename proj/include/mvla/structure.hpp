#pragma once

// Finite multivalued algebraic structures stored as operation tables.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mvla/elemset.hpp"
#include "mvla/error.hpp"

namespace mvla {

// An n x n table of element sets. A cell may be flagged as escaping when it
// comes from a finite window onto an infinite carrier and the true result
// has members outside the window.
class MultiOp {
 public:
  MultiOp() = default;
  explicit MultiOp(std::size_t n) : n_(n), cells_(n * n) {}

  std::size_t size() const { return n_; }
  const ElemSet& operator()(Elem a, Elem b) const {
    if (!escape_.empty() && escape_[a * n_ + b]) ++escape_hits_;
    return cells_[a * n_ + b];
  }
  void set(Elem a, Elem b, const ElemSet& s) { cells_[a * n_ + b] = s; }

  bool escapes(Elem a, Elem b) const {
    return !escape_.empty() && escape_[a * n_ + b];
  }
  void mark_escape(Elem a, Elem b) {
    if (escape_.empty()) escape_.assign(n_ * n_, 0);
    escape_[a * n_ + b] = 1;
  }
  bool has_escapes() const { return !escape_.empty(); }
  // Number of reads of escaping cells so far; lets a checker tell whether
  // an instance depended on truncated results.
  std::size_t escape_hits() const { return escape_hits_; }

  // Union of a*b over a in xs, b in ys.
  ElemSet lift(const ElemSet& xs, const ElemSet& ys) const {
    ElemSet out;
    for (Elem a : xs)
      for (Elem b : ys) out |= (*this)(a, b);
    return out;
  }

  friend bool operator==(const MultiOp& a, const MultiOp& b) {
    return a.n_ == b.n_ && a.cells_ == b.cells_ && a.escape_ == b.escape_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<ElemSet> cells_;
  std::vector<std::uint8_t> escape_;
  mutable std::size_t escape_hits_ = 0;
};

// Carrier with tokens, a multivalued sum, a negation and a zero.
struct MultiGroupTable {
  std::vector<std::string> tokens;
  MultiOp sum;
  std::vector<Elem> neg;
  Elem zero = 0;

  std::size_t size() const { return tokens.size(); }
  ElemSet all() const { return ElemSet::range(size()); }
  ElemSet add(const ElemSet& a, const ElemSet& b) const { return sum.lift(a, b); }
  ElemSet negate(const ElemSet& a) const {
    ElemSet out;
    for (Elem e : a) out.insert(neg[e]);
    return out;
  }
};

class Structure;

// Rule-defined structure over an infinite carrier. Only finite windows can
// be materialised; callers work on the windowed tables.
class LazyRule {
 public:
  virtual ~LazyRule() = default;
  virtual std::string name() const = 0;
  virtual Structure window(long lo, long hi) const = 0;
};

class Structure {
 public:
  Structure(std::string name, std::vector<std::string> tokens, MultiOp sum,
            MultiOp prod, std::vector<Elem> neg, Elem zero, Elem one);

  static Structure lazy(std::shared_ptr<const LazyRule> rule);

  const std::string& name() const { return name_; }
  std::size_t size() const { return add_.size(); }
  ElemSet all() const { return add_.all(); }

  const std::string& token(Elem e) const { return add_.tokens[e]; }
  const std::vector<std::string>& tokens() const { return add_.tokens; }
  std::optional<Elem> find(const std::string& tok) const;
  Elem elem(const std::string& tok) const;  // throws on unknown token

  Elem zero() const { return add_.zero; }
  Elem one() const { return one_; }
  Elem neg(Elem a) const { return add_.neg[a]; }
  const ElemSet& sum(Elem a, Elem b) const { return add_.sum(a, b); }
  const ElemSet& prod(Elem a, Elem b) const { return prod_(a, b); }

  ElemSet sum(const ElemSet& a, const ElemSet& b) const { return add_.sum.lift(a, b); }
  ElemSet prod(const ElemSet& a, const ElemSet& b) const { return prod_.lift(a, b); }
  ElemSet neg(const ElemSet& a) const { return add_.negate(a); }

  const MultiGroupTable& additive() const { return add_; }
  const MultiOp& sum_table() const { return add_.sum; }
  const MultiOp& prod_table() const { return prod_; }

  bool is_lazy() const { return rule_ != nullptr; }
  const LazyRule* rule() const { return rule_.get(); }
  // Materialised from a window of an infinite carrier.
  bool partial() const { return add_.sum.has_escapes() || prod_.has_escapes() || partial_; }
  void set_partial(bool p) { partial_ = p; }

  bool same_tables(const Structure& o) const;

  std::string describe(const ElemSet& s) const;  // "{a b c}"

 private:
  Structure() = default;
  void require_finite() const;

  std::string name_;
  MultiGroupTable add_;
  MultiOp prod_;
  Elem one_ = 0;
  bool partial_ = false;
  std::shared_ptr<const LazyRule> rule_;
  std::unordered_map<std::string, Elem> index_;
};

using StructurePtr = std::shared_ptr<const Structure>;

template <class... Args>
StructurePtr make_structure(Args&&... args) {
  return std::make_shared<const Structure>(std::forward<Args>(args)...);
}

// Left-folded finite sum; the empty sum is {0}.
ElemSet msum(const Structure& s, std::span<const Elem> xs);
ElemSet msum(const Structure& s, std::span<const ElemSet> xs);
// Left-folded finite product; the empty product is {1}.
ElemSet mprod(const Structure& s, std::span<const Elem> xs);
ElemSet mprod(const Structure& s, std::span<const ElemSet> xs);

// Some b with 1 in a*b, least in carrier order.
std::optional<Elem> inverse(const Structure& s, Elem a);

bool same_base(const Structure& a, const Structure& b);
void require_same_base(const Structure& a, const Structure& b);

}  // namespace mvla
