#include "mvla/axioms.hpp"

#include <array>
#include <sstream>

namespace mvla {

namespace {

using Detail = std::optional<std::vector<Elem>>;
const Detail kHolds = std::nullopt;

Detail fail_with(ElemSet offenders) {
  if (offenders.empty()) return std::vector<Elem>{};
  return std::vector<Elem>{offenders.first()};
}

// ---- additive axioms -------------------------------------------------------

Detail sum_nonempty(const MultiGroupTable& g, const Elem* q) {
  if (g.sum(q[0], q[1]).empty()) return std::vector<Elem>{};
  return kHolds;
}

// c in a+b implies a in c+(-b) and b in (-a)+c.
Detail m1(const MultiGroupTable& g, const Elem* q) {
  const Elem a = q[0], b = q[1];
  for (Elem c : g.sum(a, b))
    if (!g.sum(c, g.neg[b]).contains(a) || !g.sum(g.neg[a], c).contains(b))
      return std::vector<Elem>{c};
  return kHolds;
}

// b in a+0 iff a = b.
Detail m2(const MultiGroupTable& g, const Elem* q) {
  const ElemSet& s = g.sum(q[0], g.zero);
  if (s == ElemSet::single(q[0])) return kHolds;
  return fail_with(s - ElemSet::single(q[0]));
}

// (a+b)+c contained in a+(b+c).
Detail m3(const MultiGroupTable& g, const Elem* q) {
  const ElemSet lhs = g.add(g.sum(q[0], q[1]), ElemSet::single(q[2]));
  const ElemSet rhs = g.add(ElemSet::single(q[0]), g.sum(q[1], q[2]));
  if (lhs.subset_of(rhs)) return kHolds;
  return fail_with(lhs - rhs);
}

Detail m4(const MultiGroupTable& g, const Elem* q) {
  const ElemSet& x = g.sum(q[0], q[1]);
  const ElemSet& y = g.sum(q[1], q[0]);
  if (x == y) return kHolds;
  return fail_with((x - y) | (y - x));
}

struct GroupAxiom {
  const char* name;
  int arity;
  Detail (*check)(const MultiGroupTable&, const Elem*);
};

constexpr std::array<GroupAxiom, 5> kGroupAxioms{{
    {"sum-nonempty", 2, sum_nonempty},
    {"M1", 2, m1},
    {"M2", 1, m2},
    {"M3", 3, m3},
    {"M4", 2, m4},
}};

// ---- multiplicative and mixed axioms ---------------------------------------

ElemSet one_of(Elem e) { return ElemSet::single(e); }

Detail mul_nonempty(const Structure& s, const Elem* q) {
  if (s.prod(q[0], q[1]).empty()) return std::vector<Elem>{};
  return kHolds;
}

Detail mul_single(const Structure& s, const Elem* q) {
  if (s.prod(q[0], q[1]).size() == 1) return kHolds;
  return std::vector<Elem>{};
}

Detail mul_m3(const Structure& s, const Elem* q) {
  const ElemSet lhs = s.prod(s.prod(q[0], q[1]), one_of(q[2]));
  const ElemSet rhs = s.prod(one_of(q[0]), s.prod(q[1], q[2]));
  if (lhs.subset_of(rhs)) return kHolds;
  return fail_with(lhs - rhs);
}

Detail mul_m4(const Structure& s, const Elem* q) {
  const ElemSet& x = s.prod(q[0], q[1]);
  const ElemSet& y = s.prod(q[1], q[0]);
  if (x == y) return kHolds;
  return fail_with((x - y) | (y - x));
}

Detail mul_unit(const Structure& s, const Elem* q) {
  if (s.prod(s.one(), q[0]).contains(q[0]) && s.prod(q[0], s.one()).contains(q[0]))
    return kHolds;
  return std::vector<Elem>{};
}

Detail zero_absorb(const Structure& s, const Elem* q) {
  const ElemSet z = one_of(s.zero());
  if (s.prod(q[0], s.zero()) == z && s.prod(s.zero(), q[0]) == z) return kHolds;
  return std::vector<Elem>{};
}

// c(a+b) in ca+cb and (a+b)c in ac+bc. Quantified as (a, b, c).
Detail weak_dist(const Structure& s, const Elem* q) {
  const Elem a = q[0], b = q[1], c = q[2];
  const ElemSet ab = s.sum(a, b);
  const ElemSet l1 = s.prod(one_of(c), ab);
  const ElemSet r1 = s.sum(s.prod(c, a), s.prod(c, b));
  if (!l1.subset_of(r1)) return fail_with(l1 - r1);
  const ElemSet l2 = s.prod(ab, one_of(c));
  const ElemSet r2 = s.sum(s.prod(a, c), s.prod(b, c));
  if (!l2.subset_of(r2)) return fail_with(l2 - r2);
  return kHolds;
}

Detail full_dist(const Structure& s, const Elem* q) {
  const Elem a = q[0], b = q[1], c = q[2];
  const ElemSet ab = s.sum(a, b);
  const ElemSet l1 = s.prod(one_of(c), ab);
  const ElemSet r1 = s.sum(s.prod(c, a), s.prod(c, b));
  if (l1 != r1) return fail_with((l1 - r1) | (r1 - l1));
  const ElemSet l2 = s.prod(ab, one_of(c));
  const ElemSet r2 = s.sum(s.prod(a, c), s.prod(b, c));
  if (l2 != r2) return fail_with((l2 - r2) | (r2 - l2));
  return kHolds;
}

// -(ab) = (-a)b = a(-b).
Detail signs(const Structure& s, const Elem* q) {
  const ElemSet x = s.neg(s.prod(q[0], q[1]));
  const ElemSet& y = s.prod(s.neg(q[0]), q[1]);
  const ElemSet& z = s.prod(q[0], s.neg(q[1]));
  if (x == y && x == z) return kHolds;
  return fail_with((x - y) | (y - x) | (x - z) | (z - x));
}

Detail nontrivial(const Structure& s, const Elem*) {
  if (s.zero() != s.one()) return kHolds;
  return std::vector<Elem>{};
}

// 0 in ab iff a = 0 or b = 0.
Detail no_zero_div(const Structure& s, const Elem* q) {
  const bool has_zero = s.prod(q[0], q[1]).contains(s.zero());
  const bool factor_zero = q[0] == s.zero() || q[1] == s.zero();
  if (has_zero == factor_zero) return kHolds;
  return std::vector<Elem>{};
}

Detail has_inverse(const Structure& s, const Elem* q) {
  if (q[0] == s.zero() || inverse(s, q[0])) return kHolds;
  return std::vector<Elem>{};
}

// (ab+ac)d meets a(bd+cd).
Detail proto_full(const Structure& s, const Elem* q) {
  const Elem a = q[0], b = q[1], c = q[2], d = q[3];
  const ElemSet lhs = s.prod(s.sum(s.prod(a, b), s.prod(a, c)), one_of(d));
  const ElemSet rhs = s.prod(one_of(a), s.sum(s.prod(b, d), s.prod(c, d)));
  if (lhs.intersects(rhs)) return kHolds;
  return std::vector<Elem>{};
}

struct RingAxiom {
  const char* name;
  int arity;
  Detail (*check)(const Structure&, const Elem*);
};

constexpr std::array<RingAxiom, 14> kRingAxioms{{
    {"mul-nonempty", 2, mul_nonempty},
    {"mul-single", 2, mul_single},
    {"mul-M3", 3, mul_m3},
    {"mul-M4", 2, mul_m4},
    {"mul-unit", 1, mul_unit},
    {"zero-absorb", 1, zero_absorb},
    {"weak-dist", 3, weak_dist},
    {"hyper-dist", 3, full_dist},
    {"signs", 2, signs},
    {"nontrivial", 0, nontrivial},
    {"no-zero-div", 2, no_zero_div},
    {"inverse", 1, has_inverse},
    {"full", 3, full_dist},
    {"proto-full", 4, proto_full},
}};

const GroupAxiom* find_group_axiom(const std::string& name) {
  for (const auto& ax : kGroupAxioms)
    if (name == ax.name) return &ax;
  return nullptr;
}

const RingAxiom* find_ring_axiom(const std::string& name) {
  for (const auto& ax : kRingAxioms)
    if (name == ax.name) return &ax;
  return nullptr;
}

// Calls f(tuple) for every tuple of the given arity in lexicographic order
// until f returns true.
template <class F>
void for_each_tuple(std::size_t n, int arity, F&& f) {
  std::array<Elem, 4> t{};
  if (arity == 0) {
    f(t.data());
    return;
  }
  for (;;) {
    if (f(t.data())) return;
    int i = arity - 1;
    while (i >= 0 && ++t[i] == n) t[i--] = 0;
    if (i < 0) return;
  }
}

std::size_t escape_hits(const MultiGroupTable& g) { return g.sum.escape_hits(); }
std::size_t escape_hits(const Structure& s) {
  return s.sum_table().escape_hits() + s.prod_table().escape_hits();
}

template <class Table, class Axiom>
void run_axiom(const Table& t, const Axiom& ax, AxiomReport& rep) {
  for_each_tuple(t.size(), ax.arity, [&](const Elem* q) {
    ++rep.instances;
    const std::size_t before = escape_hits(t);
    Detail d = ax.check(t, q);
    if (!d) return false;
    if (escape_hits(t) != before) {
      ++rep.skipped;
      return false;
    }
    Witness w{ax.name, std::vector<Elem>(q, q + ax.arity), {}};
    w.tuple.insert(w.tuple.end(), d->begin(), d->end());
    rep.counterexamples.push_back(std::move(w));
    return true;
  });
}

void finish(AxiomReport& rep, bool partial) {
  if (!rep.counterexamples.empty())
    rep.verdict = Verdict::fail;
  else
    rep.verdict = partial ? Verdict::pass_on_window : Verdict::pass;
}

AxiomReport run_named(const Structure& s, const std::vector<std::string>& names,
                      std::string subject) {
  AxiomReport rep;
  rep.subject = std::move(subject);
  for (const auto& name : names) {
    if (const auto* g = find_group_axiom(name))
      run_axiom(s.additive(), *g, rep);
    else
      run_axiom(s, *find_ring_axiom(name), rep);
  }
  finish(rep, s.partial());
  return rep;
}

std::string tokens_of(const std::vector<std::string>& toks, const Witness& w) {
  std::ostringstream os;
  os << w.axiom;
  for (Elem e : w.tuple) os << ' ' << (e < toks.size() ? toks[e] : "?");
  if (!w.note.empty()) os << " (" << w.note << ')';
  return os.str();
}

}  // namespace

std::string to_string(Kind k) {
  switch (k) {
    case Kind::multigroup: return "multigroup";
    case Kind::multimonoid: return "multimonoid";
    case Kind::multiring: return "multiring";
    case Kind::hyperring: return "hyperring";
    case Kind::multifield: return "multifield";
    case Kind::hyperfield: return "hyperfield";
    case Kind::superring: return "superring";
    case Kind::superdomain: return "superdomain";
    case Kind::quasi_superfield: return "quasi-superfield";
    case Kind::superfield: return "superfield";
  }
  return "?";
}

std::optional<Kind> parse_kind(std::string_view s) {
  for (int k = 0; k <= static_cast<int>(Kind::superfield); ++k)
    if (to_string(static_cast<Kind>(k)) == s) return static_cast<Kind>(k);
  return std::nullopt;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::pass_on_window: return "pass-on-window";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::vector<std::string> axioms_of(Kind kind) {
  const std::vector<std::string> group{"sum-nonempty", "M1", "M2", "M3", "M4"};
  auto cat = [](std::vector<std::string> a, std::initializer_list<const char*> b) {
    for (const char* x : b) a.emplace_back(x);
    return a;
  };
  const auto multiring = cat(group, {"mul-nonempty", "mul-single", "mul-M3", "mul-M4",
                                     "mul-unit", "zero-absorb", "weak-dist"});
  const auto superring = cat(group, {"mul-nonempty", "mul-M3", "mul-M4", "mul-unit",
                                     "zero-absorb", "weak-dist", "signs"});
  switch (kind) {
    case Kind::multigroup: return group;
    case Kind::multimonoid:
      return {"mul-nonempty", "mul-M3", "mul-M4", "mul-unit"};
    case Kind::multiring: return multiring;
    case Kind::hyperring: return cat(multiring, {"hyper-dist"});
    case Kind::multifield: return cat(multiring, {"nontrivial", "inverse"});
    case Kind::hyperfield: return cat(multiring, {"hyper-dist", "nontrivial", "inverse"});
    case Kind::superring: return superring;
    case Kind::superdomain: return cat(superring, {"nontrivial", "no-zero-div"});
    case Kind::quasi_superfield: return cat(superring, {"nontrivial", "inverse"});
    case Kind::superfield:
      return cat(superring, {"nontrivial", "no-zero-div", "inverse"});
  }
  return {};
}

AxiomReport verify_axioms(const Structure& s, Kind kind) {
  if (s.is_lazy())
    throw Error(s.name() + " has an infinite carrier; pass a window to verify it");
  return run_named(s, axioms_of(kind), s.name() + " as " + to_string(kind));
}

AxiomReport verify_axioms(const Structure& s, Kind kind, Window w) {
  if (!s.is_lazy()) return verify_axioms(s, kind);
  const Structure win = s.rule()->window(w.lo, w.hi);
  auto rep = run_named(win, axioms_of(kind), win.name() + " as " + to_string(kind));
  if (rep.verdict == Verdict::pass) rep.verdict = Verdict::pass_on_window;
  return rep;
}

AxiomReport verify_multigroup(const MultiGroupTable& g) {
  AxiomReport rep;
  rep.subject = "multigroup";
  for (const auto& ax : kGroupAxioms) run_axiom(g, ax, rep);
  finish(rep, g.sum.has_escapes());
  return rep;
}

bool recheck(const MultiGroupTable& g, const Witness& w) {
  const auto* ax = find_group_axiom(w.axiom);
  if (!ax || w.tuple.size() < static_cast<std::size_t>(ax->arity)) return false;
  for (int i = 0; i < ax->arity; ++i)
    if (w.tuple[i] >= g.size()) return false;
  return ax->check(g, w.tuple.data()).has_value();
}

bool recheck(const Structure& s, const Witness& w) {
  if (find_group_axiom(w.axiom)) return recheck(s.additive(), w);
  const auto* ax = find_ring_axiom(w.axiom);
  if (!ax || w.tuple.size() < static_cast<std::size_t>(ax->arity)) return false;
  for (int i = 0; i < ax->arity; ++i)
    if (w.tuple[i] >= s.size()) return false;
  return ax->check(s, w.tuple.data()).has_value();
}

AxiomReport is_full(const Structure& s) {
  return run_named(s, {"full"}, s.name() + " full");
}

AxiomReport is_proto_full(const Structure& s) {
  return run_named(s, {"proto-full"}, s.name() + " proto-full");
}

std::string format_witness(const Structure& s, const Witness& w) {
  return tokens_of(s.tokens(), w);
}

std::string format_witness(const MultiGroupTable& g, const Witness& w) {
  return tokens_of(g.tokens, w);
}

}  // namespace mvla
