#include "mvla/structure.hpp"

#include <sstream>

namespace mvla {

Structure::Structure(std::string name, std::vector<std::string> tokens, MultiOp sum,
                     MultiOp prod, std::vector<Elem> neg, Elem zero, Elem one)
    : name_(std::move(name)), one_(one) {
  const std::size_t n = tokens.size();
  if (n == 0) throw Error("structure '" + name_ + "' has an empty carrier");
  if (n > kMaxCarrier)
    throw Error("structure '" + name_ + "' has " + std::to_string(n) +
                " elements; at most " + std::to_string(kMaxCarrier) + " supported");
  if (sum.size() != n || prod.size() != n || neg.size() != n)
    throw Error("structure '" + name_ + "': table sizes do not match the carrier");
  for (std::size_t i = 0; i < n; ++i) {
    const auto& t = tokens[i];
    if (t.empty() || t.find_first_of(" \t\r\n#") != std::string::npos)
      throw Error("structure '" + name_ + "': bad token '" + t + "'");
    if (!index_.emplace(t, static_cast<Elem>(i)).second)
      throw Error("structure '" + name_ + "': duplicate token '" + t + "'");
    if (neg[i] >= n) throw Error("structure '" + name_ + "': negation out of range");
  }
  if (zero >= n || one >= n) throw Error("structure '" + name_ + "': zero/one out of range");
  const ElemSet carrier = ElemSet::range(n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (!sum(a, b).subset_of(carrier) || !prod(a, b).subset_of(carrier))
        throw Error("structure '" + name_ + "': table entry outside the carrier");
  add_.tokens = std::move(tokens);
  add_.sum = std::move(sum);
  add_.neg = std::move(neg);
  add_.zero = zero;
  prod_ = std::move(prod);
}

Structure Structure::lazy(std::shared_ptr<const LazyRule> rule) {
  Structure s;
  s.name_ = rule->name();
  s.rule_ = std::move(rule);
  return s;
}

std::optional<Elem> Structure::find(const std::string& tok) const {
  auto it = index_.find(tok);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Elem Structure::elem(const std::string& tok) const {
  require_finite();
  if (auto e = find(tok)) return *e;
  throw Error("unknown element '" + tok + "' in " + name_);
}

void Structure::require_finite() const {
  if (is_lazy())
    throw Error(name_ + " has an infinite carrier; materialise a window first");
}

bool Structure::same_tables(const Structure& o) const {
  return add_.tokens == o.add_.tokens && add_.sum == o.add_.sum && prod_ == o.prod_ &&
         add_.neg == o.add_.neg && add_.zero == o.add_.zero && one_ == o.one_;
}

std::string Structure::describe(const ElemSet& s) const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (Elem e : s) {
    if (!first) os << ' ';
    first = false;
    os << token(e);
  }
  os << '}';
  return os.str();
}

ElemSet msum(const Structure& s, std::span<const Elem> xs) {
  ElemSet acc = ElemSet::single(s.zero());
  for (Elem x : xs) acc = s.sum(acc, ElemSet::single(x));
  return acc;
}

ElemSet msum(const Structure& s, std::span<const ElemSet> xs) {
  ElemSet acc = ElemSet::single(s.zero());
  for (const auto& x : xs) acc = s.sum(acc, x);
  return acc;
}

ElemSet mprod(const Structure& s, std::span<const Elem> xs) {
  ElemSet acc = ElemSet::single(s.one());
  for (Elem x : xs) acc = s.prod(acc, ElemSet::single(x));
  return acc;
}

ElemSet mprod(const Structure& s, std::span<const ElemSet> xs) {
  ElemSet acc = ElemSet::single(s.one());
  for (const auto& x : xs) acc = s.prod(acc, x);
  return acc;
}

std::optional<Elem> inverse(const Structure& s, Elem a) {
  for (Elem b = 0; b < s.size(); ++b)
    if (s.prod(a, b).contains(s.one())) return b;
  return std::nullopt;
}

bool same_base(const Structure& a, const Structure& b) {
  return &a == &b || (a.name() == b.name() && a.same_tables(b));
}

void require_same_base(const Structure& a, const Structure& b) {
  if (!same_base(a, b))
    throw Error("base mismatch: " + a.name() + " vs " + b.name());
}

}  // namespace mvla
