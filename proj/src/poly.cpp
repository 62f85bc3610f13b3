#include "mvla/poly.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace mvla {

Poly::Poly(StructurePtr base, std::vector<Elem> coeffs) : base_(std::move(base)), c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back() == base_->zero()) c_.pop_back();
}

Poly Poly::monomial(StructurePtr base, Elem a, std::size_t k) {
  std::vector<Elem> c(k + 1, base->zero());
  c[k] = a;
  return Poly(std::move(base), std::move(c));
}

Poly Poly::x_minus(StructurePtr base, Elem a) {
  Elem na = base->neg(a);
  Elem one = base->one();
  return Poly(std::move(base), {na, one});
}

std::string Poly::str() const {
  if (c_.empty()) return base_->token(base_->zero());
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ',';
    out += base_->token(c_[i]);
  }
  return out;
}

std::string Poly::pretty() const {
  if (c_.empty()) return base_->token(base_->zero());
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == base_->zero()) continue;
    if (!first) os << " + ";
    first = false;
    const bool unit = c_[i] == base_->one();
    if (i == 0 || !unit) os << base_->token(c_[i]);
    if (i >= 1) os << "X";
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

bool operator<(const Poly& a, const Poly& b) {
  if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
  return std::lexicographical_compare(a.c_.rbegin(), a.c_.rend(), b.c_.rbegin(), b.c_.rend());
}

bool PolySet::contains(const Poly& p) const {
  return std::binary_search(members.begin(), members.end(), p);
}

Poly parse_poly(StructurePtr base, std::string_view text) {
  std::vector<Elem> c;
  std::size_t pos = 0;
  for (;;) {
    auto comma = text.find(',', pos);
    std::string tok(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                     : comma - pos));
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (tok.empty()) throw Error("empty coefficient in polynomial '" + std::string(text) + "'");
    c.push_back(base->elem(tok));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Poly(std::move(base), std::move(c));
}

namespace {

void require_same(const Poly& f, const Poly& g) { require_same_base(*f.base(), *g.base()); }

}  // namespace

PolyBox padd_box(const Poly& f, const Poly& g) {
  require_same(f, g);
  const Structure& s = *f.base();
  PolyBox box(std::max(f.length(), g.length()));
  for (std::size_t i = 0; i < box.size(); ++i) box[i] = s.sum(f.coeff(i), g.coeff(i));
  return box;
}

PolyBox pmul_box(const Poly& f, const Poly& g) {
  require_same(f, g);
  if (f.is_zero() || g.is_zero()) return {};
  const Structure& s = *f.base();
  PolyBox box(f.length() + g.length() - 1);
  for (std::size_t n = 0; n < box.size(); ++n) {
    ElemSet acc = ElemSet::single(s.zero());
    for (std::size_t k = 0; k <= n; ++k) acc = s.sum(acc, s.prod(f.coeff(k), g.coeff(n - k)));
    box[n] = acc;
  }
  return box;
}

bool box_contains(const Structure& s, const PolyBox& box, const Poly& p) {
  if (p.length() > box.size()) return false;
  for (std::size_t i = 0; i < box.size(); ++i)
    if (!box[i].contains(p.coeff(i))) return false;
  (void)s;
  return true;
}

std::size_t box_size(const PolyBox& box) {
  std::size_t n = 1;
  for (const auto& c : box) {
    const std::size_t k = c.size();
    if (k == 0) return 0;
    if (n > std::numeric_limits<std::size_t>::max() / k) return std::numeric_limits<std::size_t>::max();
    n *= k;
  }
  return n;
}

PolySet box_members(StructurePtr base, const PolyBox& box, const Budget& budget) {
  const std::size_t total = box_size(box);
  if (total > budget.set_cap)
    throw BlowupError("polynomial set has " +
                      (total == std::numeric_limits<std::size_t>::max() ? std::string("too many")
                                                                        : std::to_string(total)) +
                      " members, cap is " + std::to_string(budget.set_cap));
  PolySet out{base, {}};
  if (total == 0) return out;
  std::vector<std::vector<Elem>> opts;
  for (const auto& c : box) opts.push_back(c.to_vector());
  std::vector<std::size_t> idx(box.size(), 0);
  out.members.reserve(total);
  for (;;) {
    std::vector<Elem> c(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) c[i] = opts[i][idx[i]];
    out.members.emplace_back(base, std::move(c));
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == opts[i].size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  std::sort(out.members.begin(), out.members.end());
  out.members.erase(std::unique(out.members.begin(), out.members.end()), out.members.end());
  return out;
}

PolySet padd(const Poly& f, const Poly& g, const Budget& budget) {
  return box_members(f.base(), padd_box(f, g), budget);
}

PolySet pmul(const Poly& f, const Poly& g, const Budget& budget) {
  return box_members(f.base(), pmul_box(f, g), budget);
}

std::vector<DivMod> pdivmod(const Poly& f, const Poly& g, bool all, const Budget& budget) {
  require_same(f, g);
  if (g.is_zero()) throw Error("division by the zero polynomial");
  const StructurePtr& base = f.base();
  const Structure& s = *base;
  const std::size_t n = s.size();
  const std::size_t dg = *g.degree();
  const std::size_t qlen = f.length() > dg ? f.length() - dg : 0;
  double candidates = 1;
  for (std::size_t i = 0; i < qlen; ++i) candidates *= static_cast<double>(n);
  if (candidates > static_cast<double>(budget.set_cap))
    throw BlowupError("quotient search space exceeds cap " + std::to_string(budget.set_cap));

  std::vector<DivMod> out;
  for_each_coeffs(n, qlen, [&](const std::vector<Elem>& qc) {
    Poly q(base, qc);
    const PolyBox qg = pmul_box(q, g);
    const std::size_t len = std::max({qg.size(), f.length(), dg});
    std::vector<ElemSet> rchoices(dg);
    for (std::size_t i = 0; i < len; ++i) {
      const ElemSet term = i < qg.size() ? qg[i] : ElemSet::single(s.zero());
      if (i >= dg) {
        if (!s.sum(term, ElemSet::single(s.zero())).contains(f.coeff(i))) return false;
        continue;
      }
      ElemSet ok;
      for (Elem r = 0; r < n; ++r)
        if (s.sum(term, ElemSet::single(r)).contains(f.coeff(i))) ok.insert(r);
      if (ok.empty()) return false;
      rchoices[i] = ok;
    }
    // r in canonical order: leading coefficient slowest.
    std::vector<std::vector<Elem>> opts;
    for (const auto& c : rchoices) opts.push_back(c.to_vector());
    std::vector<std::size_t> idx(dg, 0);
    for (;;) {
      std::vector<Elem> rc(dg);
      for (std::size_t i = 0; i < dg; ++i) rc[i] = opts[i][idx[i]];
      out.push_back({q, Poly(base, std::move(rc))});
      if (!all) return true;
      if (out.size() > budget.set_cap)
        throw BlowupError("more than " + std::to_string(budget.set_cap) + " division pairs");
      std::size_t i = 0;
      while (i < dg && ++idx[i] == opts[i].size()) idx[i++] = 0;
      if (i == dg) break;
    }
    return false;
  });
  if (all) {
    std::sort(out.begin(), out.end(), [](const DivMod& a, const DivMod& b) {
      if (!(a.q == b.q)) return a.q < b.q;
      return a.r < b.r;
    });
  }
  return out;
}

bool divmod_holds(const Poly& f, const Poly& g, const DivMod& qr, const Budget& budget) {
  if (!g.degree()) return false;
  if (qr.r.degree() && *qr.r.degree() >= *g.degree()) return false;
  for (const Poly& h : pmul(qr.q, g, budget))
    if (padd(h, qr.r, budget).contains(f)) return true;
  return false;
}

ElemSet evaluate(const Poly& f, Elem alpha, const StructurePtr& ambient,
                 const std::optional<Morphism>& via) {
  const Structure& t = *ambient;
  std::optional<Morphism> map = via;
  if (!map && !same_base(*f.base(), t)) {
    map = inclusion_by_tokens(f.base(), ambient);
    auto rep = check_morphism(*map);
    if (!rep.ok())
      throw Error("inclusion " + f.base()->name() + " -> " + t.name() + " is not a morphism");
  }
  if (map && (map->source->size() != f.base()->size() || map->target->size() != t.size()))
    throw Error("evaluation map does not match the bases");
  ElemSet acc = ElemSet::single(t.zero());
  ElemSet power = ElemSet::single(t.one());
  for (std::size_t k = 0; k < f.length(); ++k) {
    if (k) power = t.prod(power, ElemSet::single(alpha));
    const Elem a = map ? (*map)(f.coeff(k)) : f.coeff(k);
    acc = t.sum(acc, t.prod(ElemSet::single(a), power));
  }
  return acc;
}

ElemSet evaluate(const Poly& f, Elem alpha) { return evaluate(f, alpha, f.base()); }

bool is_root(const Poly& f, Elem alpha) {
  return evaluate(f, alpha).contains(f.base()->zero());
}

std::optional<Poly> effective_root_cofactor(const Poly& f, Elem alpha, const Budget& budget) {
  if (!f.degree() || *f.degree() == 0) return std::nullopt;
  const StructurePtr& base = f.base();
  const std::size_t n = base->size();
  const std::size_t len = *f.degree();
  double candidates = 1;
  for (std::size_t i = 0; i < len; ++i) candidates *= static_cast<double>(n);
  if (candidates > static_cast<double>(budget.set_cap))
    throw BlowupError("cofactor search space exceeds cap");
  const Poly lin = Poly::x_minus(base, alpha);
  std::optional<Poly> found;
  for_each_coeffs(n, len, [&](const std::vector<Elem>& c) {
    if (c.back() == base->zero()) return false;
    Poly g(base, c);
    if (box_contains(*base, pmul_box(lin, g), f)) {
      found = g;
      return true;
    }
    return false;
  });
  return found;
}

bool is_effective_root(const Poly& f, Elem alpha, const Budget& budget) {
  return effective_root_cofactor(f, alpha, budget).has_value();
}

namespace {

// Polynomials of length <= len encoded as base-|S| integers.
struct PolyCodec {
  std::size_t n;
  std::size_t len;
  std::size_t total;

  PolyCodec(std::size_t n_, std::size_t len_, const Budget& budget) : n(n_), len(len_), total(1) {
    for (std::size_t i = 0; i < len; ++i) {
      if (total > budget.set_cap / n) throw BlowupError("bounded ideal universe exceeds cap");
      total *= n;
    }
  }
  std::size_t encode(const std::vector<Elem>& c) const {
    std::size_t code = 0;
    for (std::size_t i = c.size(); i-- > 0;) code = code * n + c[i];
    return code;
  }
  std::vector<Elem> decode(std::size_t code) const {
    std::vector<Elem> c(len);
    for (std::size_t i = 0; i < len; ++i) {
      c[i] = static_cast<Elem>(code % n);
      code /= n;
    }
    return c;
  }
};

// Adds every member of the coefficientwise sum of a and b to out.
void add_sums(const Structure& s, const PolyCodec& codec, const std::vector<Elem>& a,
              const std::vector<Elem>& b, std::vector<char>& out) {
  std::vector<std::vector<Elem>> opts(codec.len);
  for (std::size_t i = 0; i < codec.len; ++i) opts[i] = s.sum(a[i], b[i]).to_vector();
  std::vector<std::size_t> idx(codec.len, 0);
  for (;;) {
    std::size_t code = 0;
    for (std::size_t i = codec.len; i-- > 0;) code = code * codec.n + opts[i][idx[i]];
    out[code] = 1;
    std::size_t i = 0;
    while (i < codec.len && ++idx[i] == opts[i].size()) idx[i++] = 0;
    if (i == codec.len) break;
  }
}

}  // namespace

std::vector<Poly> bounded_ideal(const Poly& u, std::size_t bound, const Budget& budget) {
  const StructurePtr& base = u.base();
  const Structure& s = *base;
  if (u.is_zero()) return {Poly::zero(base)};
  const std::size_t hlen = bound + 1;
  const std::size_t len = hlen + u.length() - 1;
  PolyCodec codec(s.size(), len, budget);

  // Single products h*u.
  std::vector<char> terms(codec.total, 0);
  for_each_coeffs(s.size(), hlen, [&](const std::vector<Elem>& hc) {
    Poly h(base, hc);
    PolyBox box = pmul_box(h, u);
    box.resize(len, ElemSet::single(s.zero()));
    for (const Poly& p : box_members(base, box, budget)) {
      std::vector<Elem> c = p.coeffs();
      c.resize(len, s.zero());
      terms[codec.encode(c)] = 1;
    }
    return false;
  });
  std::vector<std::size_t> term_list;
  for (std::size_t i = 0; i < codec.total; ++i)
    if (terms[i]) term_list.push_back(i);

  // Sums of two and three terms.
  std::vector<char> reach = terms;
  std::vector<char> layer = terms;
  for (int round = 0; round < 2; ++round) {
    std::vector<char> next(codec.total, 0);
    for (std::size_t a = 0; a < codec.total; ++a) {
      if (!layer[a]) continue;
      const auto ac = codec.decode(a);
      for (std::size_t b : term_list) add_sums(s, codec, ac, codec.decode(b), next);
    }
    for (std::size_t i = 0; i < codec.total; ++i) reach[i] |= next[i];
    layer = std::move(next);
  }
  std::vector<Poly> out;
  for (std::size_t i = 0; i < codec.total; ++i) {
    if (!reach[i]) continue;
    Poly p(base, codec.decode(i));
    if (!p.degree() || *p.degree() <= bound) out.push_back(std::move(p));
  }
  out.push_back(Poly::zero(base));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

IrreducibleResult is_irreducible(const Poly& f, const Budget& budget) {
  IrreducibleResult res;
  if (!f.degree() || *f.degree() == 0) {
    res.reason = "zero or constant";
    return res;
  }
  const StructurePtr& base = f.base();
  const std::size_t n = base->size();
  const std::size_t d = *f.degree();

  // Proper factorisations f in u*v.
  for (std::size_t du = 1; du < d; ++du) {
    std::optional<Poly> witness;
    for_each_coeffs(n, du + 1, [&](const std::vector<Elem>& uc) {
      if (uc.back() == base->zero()) return false;
      Poly u(base, uc);
      for_each_coeffs(n, d - du + 1, [&](const std::vector<Elem>& vc) {
        if (vc.back() == base->zero()) return false;
        if (box_contains(*base, pmul_box(u, Poly(base, vc)), f)) witness = u;
        return witness.has_value();
      });
      return witness.has_value();
    });
    if (witness) {
      res.witness = witness;
      res.reason = "factor";
      return res;
    }
  }

  // Ideal criterion over non-constant u of degree <= deg f.
  const auto fideal = bounded_ideal(f, d, budget);
  for (std::size_t du = 1; du <= d; ++du) {
    std::optional<Poly> witness;
    for_each_coeffs(n, du + 1, [&](const std::vector<Elem>& uc) {
      if (uc.back() == base->zero()) return false;
      Poly u(base, uc);
      const auto uideal = bounded_ideal(u, d, budget);
      if (std::binary_search(uideal.begin(), uideal.end(), f) && uideal != fideal) witness = u;
      return witness.has_value();
    });
    if (witness) {
      res.witness = witness;
      res.reason = "ideal";
      return res;
    }
  }
  res.irreducible = true;
  return res;
}

bool DegreeLawReport::part_ok(const std::string& part) const {
  for (const auto& [p, w] : failures)
    if (p == part) return false;
  return true;
}

DegreeLawReport pdeg_laws_check(const StructurePtr& s, std::size_t bound) {
  DegreeLawReport rep;
  const std::size_t n = s->size();
  std::vector<Poly> polys;
  for_each_coeffs(n, bound + 1, [&](const std::vector<Elem>& c) {
    Poly p(s, c);
    if (!p.is_zero()) polys.push_back(std::move(p));
    return false;
  });
  std::sort(polys.begin(), polys.end());
  auto note = [&](const char* part, std::string w) {
    if (rep.part_ok(part)) rep.failures.emplace_back(part, std::move(w));
  };
  for (const Poly& f : polys)
    for (const Poly& g : polys) {
      const std::size_t df = *f.degree(), dg = *g.degree();
      std::vector<Elem> negg;
      for (Elem c : g.coeffs()) negg.push_back(s->neg(c));
      if (rep.part_ok("sum") && !(f == Poly(s, negg))) {
        for (const Poly& t : padd(f, g)) {
          const bool lower = t.degree() && std::min(df, dg) <= *t.degree();
          if (!lower && rep.literal_lower_bound.empty())
            rep.literal_lower_bound = "f=" + f.str() + " g=" + g.str() + " t=" + t.str();
          // Equal degrees may cancel, as in any commutative ring.
          const bool ok = t.degree() && *t.degree() <= std::max(df, dg) && (df == dg || lower);
          if (!ok) {
            note("sum", "f=" + f.str() + " g=" + g.str() + " t=" + t.str());
            break;
          }
        }
      }
      if (rep.part_ok("product")) {
        for (const Poly& t : pmul(f, g))
          if (!t.degree() || *t.degree() != df + dg) {
            note("product", "f=" + f.str() + " g=" + g.str() + " t=" + t.str());
            break;
          }
      }
    }
  for (std::size_t p = 1; p <= bound && rep.part_ok("factor"); ++p) {
    for_each_coeffs(n, p, [&](const std::vector<Elem>& roots) {
      PolySet acc{s, {Poly::constant(s, s->one())}};
      for (Elem a : roots) {
        PolySet next{s, {}};
        for (const Poly& h : acc) {
          auto m = pmul(h, Poly::x_minus(s, a));
          next.members.insert(next.members.end(), m.begin(), m.end());
        }
        std::sort(next.members.begin(), next.members.end());
        next.members.erase(std::unique(next.members.begin(), next.members.end()),
                           next.members.end());
        acc = std::move(next);
      }
      for (const Poly& t : acc)
        if (!t.degree() || *t.degree() != p) {
          std::string w = "roots=";
          for (Elem a : roots) w += s->token(a) + ",";
          note("factor", w + " t=" + t.str());
          return true;
        }
      return false;
    });
  }
  rep.verdict = rep.failures.empty() ? Verdict::pass : Verdict::fail;
  return rep;
}

}  // namespace mvla
