#include "mvla/builtins.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <functional>

namespace mvla {

namespace {

// Builds a structure over integer labels; ops return label sets.
StructurePtr from_rules(std::string name, const std::vector<long>& labels,
                        std::function<std::vector<long>(long, long)> add,
                        std::function<std::vector<long>(long, long)> mul,
                        std::function<long(long)> negate, long zero, long one) {
  const std::size_t n = labels.size();
  auto index = [&](long v) -> Elem {
    auto it = std::find(labels.begin(), labels.end(), v);
    if (it == labels.end()) throw Error("builtin rule left the carrier");
    return static_cast<Elem>(it - labels.begin());
  };
  std::vector<std::string> tokens;
  for (long v : labels) tokens.push_back(std::to_string(v));
  MultiOp sum(n), prod(n);
  std::vector<Elem> neg(n);
  for (Elem a = 0; a < n; ++a) {
    neg[a] = index(negate(labels[a]));
    for (Elem b = 0; b < n; ++b) {
      ElemSet s, p;
      for (long v : add(labels[a], labels[b])) s.insert(index(v));
      for (long v : mul(labels[a], labels[b])) p.insert(index(v));
      sum.set(a, b, s);
      prod.set(a, b, p);
    }
  }
  return make_structure(std::move(name), std::move(tokens), std::move(sum), std::move(prod),
                        std::move(neg), index(zero), index(one));
}

std::vector<long> iota(long lo, long hi) {
  std::vector<long> v;
  for (long i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

long sgn(long x) { return (x > 0) - (x < 0); }

class TropicalRule : public LazyRule {
 public:
  std::string name() const override { return "Trop"; }

  // Tokens lo..hi then "inf". Out-of-window results are dropped and the
  // cell is flagged as escaping.
  Structure window(long lo, long hi) const override {
    if (lo > 0 || hi < 0 || hi - lo + 2 > static_cast<long>(kMaxCarrier))
      throw Error("tropical window must contain 0 and fit the carrier limit");
    const std::size_t n = static_cast<std::size_t>(hi - lo + 2);
    const Elem inf = static_cast<Elem>(n - 1);
    auto value = [&](Elem e) { return lo + static_cast<long>(e); };
    std::vector<std::string> tokens;
    for (long v = lo; v <= hi; ++v) tokens.push_back(std::to_string(v));
    tokens.push_back("inf");
    MultiOp sum(n), prod(n);
    std::vector<Elem> neg(n);
    for (Elem a = 0; a < n; ++a) {
      neg[a] = a;
      for (Elem b = 0; b < n; ++b) {
        if (a != b) {
          sum.set(a, b, ElemSet::single(std::min(a, b)));
        } else if (a == inf) {
          sum.set(a, b, ElemSet::single(inf));
        } else {
          ElemSet up;
          for (Elem c = a; c < n; ++c) up.insert(c);
          sum.set(a, b, up);
          sum.mark_escape(a, b);
        }
        if (a == inf || b == inf) {
          prod.set(a, b, ElemSet::single(inf));
        } else {
          long v = value(a) + value(b);
          if (v >= lo && v <= hi) {
            prod.set(a, b, ElemSet::single(static_cast<Elem>(v - lo)));
          } else {
            prod.set(a, b, ElemSet{});
            prod.mark_escape(a, b);
          }
        }
      }
    }
    Structure s("Trop[" + std::to_string(lo) + "," + std::to_string(hi) + "]",
                std::move(tokens), std::move(sum), std::move(prod), std::move(neg), inf,
                static_cast<Elem>(-lo));
    s.set_partial(true);
    return s;
  }
};

}  // namespace

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

StructurePtr krasner() {
  return from_rules(
      "K", {0, 1},
      [](long a, long b) -> std::vector<long> {
        if (a == 1 && b == 1) return {0, 1};
        return {a + b};
      },
      [](long a, long b) -> std::vector<long> { return {a * b}; },
      [](long a) { return a; }, 0, 1);
}

StructurePtr signs() {
  return from_rules(
      "Q2", {-1, 0, 1},
      [](long a, long b) -> std::vector<long> {
        if (a == 0) return {b};
        if (b == 0) return {a};
        if (a == b) return {a};
        return {-1, 0, 1};
      },
      [](long a, long b) -> std::vector<long> { return {a * b}; },
      [](long a) { return -a; }, 0, 1);
}

StructurePtr hp(int p) {
  if (!is_prime(p)) throw Error("Hp(" + std::to_string(p) + "): p must be prime");
  if (p > static_cast<int>(kMaxCarrier)) throw Error("Hp: carrier too large");
  return from_rules(
      "Hp(" + std::to_string(p) + ")", iota(0, p - 1),
      [p](long a, long b) -> std::vector<long> {
        if (a == 0) return {b};
        if (b == 0) return {a};
        if (a == b) return iota(0, p - 1);
        return {a, b};
      },
      [p](long a, long b) -> std::vector<long> { return {(a * b) % p}; },
      [](long a) { return a; }, 0, 1);
}

StructurePtr kaleidoscope(int n) {
  if (n < 0 || 2 * n + 1 > static_cast<int>(kMaxCarrier))
    throw Error("Xn(" + std::to_string(n) + "): n out of range");
  return from_rules(
      "Xn(" + std::to_string(n) + ")", iota(-n, n),
      [](long a, long b) -> std::vector<long> {
        if (b == -a) return iota(-std::labs(a), std::labs(a));
        return {std::labs(a) >= std::labs(b) ? a : b};
      },
      [](long a, long b) -> std::vector<long> {
        if (a == 0 || b == 0) return {0};
        return {sgn(a * b) * std::max(std::labs(a), std::labs(b))};
      },
      [](long a) { return -a; }, 0, n == 0 ? 0 : 1);
}

StructurePtr residue_ring(int n) {
  if (n < 1 || n > static_cast<int>(kMaxCarrier))
    throw Error("Zn(" + std::to_string(n) + "): n out of range");
  return from_rules(
      "Zn(" + std::to_string(n) + ")", iota(0, n - 1),
      [n](long a, long b) -> std::vector<long> { return {(a + b) % n}; },
      [n](long a, long b) -> std::vector<long> { return {(a * b) % n}; },
      [n](long a) { return (n - a) % n; }, 0, 1 % n);
}

StructurePtr prime_field(int p) {
  if (!is_prime(p)) throw Error("Fp(" + std::to_string(p) + "): p must be prime");
  auto z = residue_ring(p);
  return make_structure("Fp(" + std::to_string(p) + ")", z->tokens(), z->sum_table(),
                        z->prod_table(), z->additive().neg, z->zero(), z->one());
}

StructurePtr tropical() {
  return std::make_shared<const Structure>(
      Structure::lazy(std::make_shared<const TropicalRule>()));
}

StructurePtr builtin(std::string_view name) {
  if (name == "K" || name == "H2") return krasner();
  if (name == "Q2") return signs();
  if (name == "Trop") return tropical();
  std::string_view families[] = {"Hp", "Xn", "Fp", "Zn"};
  for (auto fam : families) {
    if (!name.starts_with(fam)) continue;
    std::string_view arg = name.substr(fam.size());
    if (arg.size() >= 2 && arg.front() == '(' && arg.back() == ')')
      arg = arg.substr(1, arg.size() - 2);
    int k = 0;
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), k);
    if (ec != std::errc{} || ptr != arg.data() + arg.size() || arg.empty()) return nullptr;
    if (fam == "Hp") return hp(k);
    if (fam == "Xn") return kaleidoscope(k);
    if (fam == "Fp") return prime_field(k);
    return residue_ring(k);
  }
  return nullptr;
}

}  // namespace mvla
