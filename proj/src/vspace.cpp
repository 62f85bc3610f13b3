#include "mvla/vspace.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace mvla {

ElemSet VectorSpace::act(const ElemSet& ls, Elem v) const {
  ElemSet out;
  for (Elem l : ls) out |= act(l, v);
  return out;
}

ElemSet VectorSpace::act(Elem l, const ElemSet& vs) const {
  ElemSet out;
  for (Elem v : vs) out |= act(l, v);
  return out;
}

std::string VectorSpace::describe(const ElemSet& vs) const {
  std::string out = "{";
  bool first = true;
  for (Elem v : vs) {
    out += (first ? "" : " ") + token(v);
    first = false;
  }
  return out + "}";
}

// ---- constructions ------------------------------------------------------------

namespace {

std::size_t checked_count(const StructurePtr& f, std::size_t n) {
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) {
    total *= f->size();
    if (total > kMaxCarrier) throw BlowupError("vector space exceeds the element limit");
  }
  return total;
}

std::vector<Elem> decode(std::size_t base, std::size_t n, std::size_t idx) {
  std::vector<Elem> c(n);
  for (std::size_t k = n; k-- > 0;) {
    c[k] = static_cast<Elem>(idx % base);
    idx /= base;
  }
  return c;
}

Elem encode(std::size_t base, const std::vector<Elem>& c) {
  std::size_t idx = 0;
  for (Elem e : c) idx = idx * base + e;
  return static_cast<Elem>(idx);
}

// Every encoded vector in a box of coordinate sets.
ElemSet box_indices(std::size_t base, const std::vector<ElemSet>& box) {
  std::vector<std::size_t> acc{0};
  for (const auto& cell : box) {
    std::vector<std::size_t> next;
    for (std::size_t a : acc)
      for (Elem e : cell) next.push_back(a * base + e);
    acc = std::move(next);
  }
  ElemSet out;
  for (std::size_t a : acc) out.insert(static_cast<Elem>(a));
  return out;
}

// F^n with componentwise operations and the given token per vector.
VectorSpace coordinatewise(const StructurePtr& f, std::size_t n, std::string name,
                           const std::function<std::string(const std::vector<Elem>&)>& tok) {
  const std::size_t total = checked_count(f, n);
  const std::size_t q = f->size();
  VectorSpace v;
  v.name = std::move(name);
  v.scalars = f;
  v.vectors.sum = MultiOp(total);
  for (std::size_t a = 0; a < total; ++a) {
    auto ca = decode(q, n, a);
    v.vectors.tokens.push_back(tok(ca));
    std::vector<Elem> na;
    for (Elem x : ca) na.push_back(f->neg(x));
    v.vectors.neg.push_back(encode(q, na));
    for (std::size_t b = 0; b < total; ++b) {
      auto cb = decode(q, n, b);
      std::vector<ElemSet> box;
      for (std::size_t i = 0; i < n; ++i) box.push_back(f->sum(ca[i], cb[i]));
      v.vectors.sum.set(static_cast<Elem>(a), static_cast<Elem>(b), box_indices(q, box));
    }
  }
  v.vectors.zero = encode(q, std::vector<Elem>(n, f->zero()));
  v.action.resize(q * total);
  for (Elem l = 0; l < q; ++l)
    for (std::size_t a = 0; a < total; ++a) {
      auto ca = decode(q, n, a);
      std::vector<ElemSet> box;
      for (Elem x : ca) box.push_back(f->prod(l, x));
      v.action[l * total + a] = box_indices(q, box);
    }
  return v;
}

std::string join(const Structure& f, const std::vector<Elem>& c) {
  std::string t;
  for (std::size_t i = 0; i < c.size(); ++i) t += (i ? "," : "") + f.token(c[i]);
  return t;
}

}  // namespace

VectorSpace coordinate_space(const StructurePtr& f, std::size_t n) {
  return coordinatewise(f, n, f->name() + "^" + std::to_string(n),
                        [&](const std::vector<Elem>& c) { return "(" + join(*f, c) + ")"; });
}

std::vector<Elem> coordinates(const VectorSpace& v, Elem e) {
  std::size_t n = 0;
  for (std::size_t t = 1; t < v.size(); t *= v.scalars->size()) ++n;
  return decode(v.scalars->size(), n, e);
}

Elem coordinate_vector(const StructurePtr& f, const std::vector<Elem>& coords) {
  return encode(f->size(), coords);
}

VectorSpace matrix_space(const StructurePtr& f, std::size_t rows, std::size_t cols) {
  VectorSpace v = coordinatewise(
      f, rows * cols,
      "M" + std::to_string(rows) + "x" + std::to_string(cols) + "(" + f->name() + ")",
      [&](const std::vector<Elem>& c) { return Matrix(f, rows, cols, c).str(); });
  return v;
}

VectorSpace poly_space(const StructurePtr& f, std::size_t max_degree) {
  return coordinatewise(f, max_degree + 1,
                        f->name() + "[X]_deg<=" + std::to_string(max_degree),
                        [&](const std::vector<Elem>& c) { return join(*f, c); });
}

VectorSpace extension_space(const ExtensionPair& pair) {
  const Structure& k = *pair.big;
  VectorSpace v;
  v.name = k.name() + " over " + pair.small->name();
  v.scalars = pair.small;
  v.vectors = k.additive();
  v.action.resize(pair.small->size() * k.size());
  for (Elem l = 0; l < pair.small->size(); ++l)
    for (Elem a = 0; a < k.size(); ++a) v.action[l * k.size() + a] = k.prod(pair.embedding(l), a);
  return v;
}

// ---- axioms -------------------------------------------------------------------

namespace {

// Note for a failing instance, empty when it holds.
std::string check_mv(const VectorSpace& v, const std::string& axiom, const std::vector<Elem>& t,
                     bool full) {
  const Structure& f = *v.scalars;
  if (axiom == "action-nonempty") {
    return v.act(t[0], t[1]).empty() ? "empty" : "";
  }
  if (axiom == "MV0") {
    if (!(v.act(f.one(), t[0]) == ElemSet::single(t[0]))) return "1v = " + v.describe(v.act(f.one(), t[0]));
    if (!(v.act(f.zero(), t[0]) == ElemSet::single(v.zero())))
      return "0v = " + v.describe(v.act(f.zero(), t[0]));
    return "";
  }
  if (axiom == "MV1") {
    const ElemSet lhs = v.act(f.prod(t[0], t[1]), t[2]);
    const ElemSet rhs = v.act(t[0], v.act(t[1], t[2]));
    return lhs == rhs ? "" : v.describe(lhs) + " vs " + v.describe(rhs);
  }
  if (axiom == "MV2") {
    const ElemSet lhs = v.act(t[0], v.vectors.sum(t[1], t[2]));
    const ElemSet rhs = v.add(v.act(t[0], t[1]), v.act(t[0], t[2]));
    const bool ok = full ? lhs == rhs : lhs.subset_of(rhs);
    return ok ? "" : v.describe(lhs) + " vs " + v.describe(rhs);
  }
  if (axiom == "MV3") {
    const ElemSet lhs = v.act(f.sum(t[0], t[1]), t[2]);
    const ElemSet rhs = v.add(v.act(t[0], t[2]), v.act(t[1], t[2]));
    const bool ok = full ? lhs == rhs : lhs.subset_of(rhs);
    return ok ? "" : v.describe(lhs) + " vs " + v.describe(rhs);
  }
  return "unknown axiom";
}

struct MvAxiom {
  const char* name;
  // 's' scalar, 'v' vector per position
  const char* shape;
};

constexpr MvAxiom kMvAxioms[] = {
    {"action-nonempty", "sv"}, {"MV0", "v"}, {"MV1", "ssv"}, {"MV2", "svv"}, {"MV3", "ssv"},
};

}  // namespace

AxiomReport verify_vspace(const VectorSpace& v, bool full) {
  AxiomReport rep = verify_multigroup(v.vectors);
  rep.subject = v.name + (full ? " full vector space" : " vector space");
  for (auto& w : rep.counterexamples) w.axiom = "vectors " + w.axiom;

  for (const auto& ax : kMvAxioms) {
    const std::string shape = ax.shape;
    std::vector<Elem> t(shape.size(), 0);
    auto limit = [&](std::size_t i) { return shape[i] == 's' ? v.scalars->size() : v.size(); };
    bool failed = false;
    for (;;) {
      ++rep.instances;
      if (!failed) {
        auto note = check_mv(v, ax.name, t, full);
        if (!note.empty()) {
          failed = true;
          rep.verdict = Verdict::fail;
          rep.counterexamples.push_back({ax.name, t, note});
        }
      }
      if (failed) break;
      std::size_t k = t.size();
      while (k > 0 && ++t[k - 1] == limit(k - 1)) t[--k] = 0;
      if (k == 0) break;
    }
  }
  return rep;
}

bool recheck(const VectorSpace& v, const Witness& w, bool full) {
  if (w.axiom.rfind("vectors ", 0) == 0) {
    Witness inner = w;
    inner.axiom = w.axiom.substr(8);
    return recheck(v.vectors, inner);
  }
  for (const auto& ax : kMvAxioms) {
    if (w.axiom != ax.name) continue;
    const std::string shape = ax.shape;
    if (w.tuple.size() < shape.size()) return false;
    for (std::size_t i = 0; i < shape.size(); ++i)
      if (w.tuple[i] >= (shape[i] == 's' ? v.scalars->size() : v.size())) return false;
    return !check_mv(v, ax.name, w.tuple, full).empty();
  }
  return false;
}

// ---- spans ----------------------------------------------------------------------

std::vector<ElemSet> bundle_sums(const Structure& f, int bound) {
  std::vector<ElemSet> out;
  std::vector<ElemSet> layer;
  for (Elem a = 0; a < f.size(); ++a) layer.push_back(ElemSet::single(a));
  for (int r = 1; r <= bound; ++r) {
    for (const auto& s : layer)
      if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    if (r == bound) break;
    std::vector<ElemSet> next;
    for (const auto& s : layer)
      for (Elem a = 0; a < f.size(); ++a) {
        ElemSet t = f.sum(s, ElemSet::single(a));
        if (std::find(next.begin(), next.end(), t) == next.end()) next.push_back(t);
      }
    layer = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ElemSet linear_combinations(const VectorSpace& v, const ElemSet& a, int bound) {
  ElemSet coeffs;
  for (const auto& s : bundle_sums(*v.scalars, bound)) coeffs |= s;
  // Vectors of A may repeat, so keep adding terms until nothing new appears.
  ElemSet reach = ElemSet::single(v.zero());
  for (;;) {
    ElemSet next = reach;
    for (Elem x : a) next |= v.add(reach, v.act(coeffs, x));
    if (next == reach) return reach;
    reach = next;
  }
}

ElemSet generated_subspace(const VectorSpace& v, const ElemSet& a) {
  ElemSet w = a;
  w.insert(v.zero());
  for (;;) {
    ElemSet next = w;
    for (Elem x : w) {
      for (Elem l = 0; l < v.scalars->size(); ++l) next |= v.act(l, x);
      for (Elem y : w) next |= v.vectors.sum(x, y);
    }
    if (next == w) return w;
    w = next;
  }
}

bool is_subspace(const VectorSpace& v, const ElemSet& w) {
  if (!w.contains(v.zero())) return false;
  for (Elem x : w) {
    for (Elem l = 0; l < v.scalars->size(); ++l)
      if (!v.act(l, x).subset_of(w)) return false;
    for (Elem y : w)
      if (!v.vectors.sum(x, y).subset_of(w)) return false;
  }
  return true;
}

SpanResult span(const VectorSpace& v, const ElemSet& a, int bound) {
  SpanResult r;
  r.members = linear_combinations(v, a, bound);
  r.subspace = is_subspace(v, r.members);
  r.least = r.members == generated_subspace(v, a);
  return r;
}

// ---- independence ---------------------------------------------------------------

namespace {

// A scalar sequence of length <= bound summing (left fold) to each bundle
// sum, shortest and least first.
std::map<ElemSet, std::vector<Elem>> bundle_sequences(const Structure& f, int bound) {
  std::map<ElemSet, std::vector<Elem>> out;
  std::vector<std::pair<ElemSet, std::vector<Elem>>> layer;
  for (Elem a = 0; a < f.size(); ++a) layer.push_back({ElemSet::single(a), {a}});
  for (int r = 1; r <= bound; ++r) {
    for (const auto& [s, seq] : layer) out.emplace(s, seq);
    if (r == bound) break;
    std::vector<std::pair<ElemSet, std::vector<Elem>>> next;
    for (const auto& [s, seq] : layer)
      for (Elem a = 0; a < f.size(); ++a) {
        ElemSet t = f.sum(s, ElemSet::single(a));
        if (out.count(t)) continue;
        auto longer = seq;
        longer.push_back(a);
        next.push_back({t, std::move(longer)});
      }
    layer = std::move(next);
  }
  return out;
}

}  // namespace

IndependenceResult is_linearly_independent(const VectorSpace& v, const std::vector<Elem>& vs,
                                           int bound) {
  {
    auto sorted = vs;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error("independence needs distinct vectors");
  }
  const Structure& f = *v.scalars;
  IndependenceResult res;
  res.bound = bound;
  const auto seqs = bundle_sequences(f, bound);
  std::vector<std::pair<ElemSet, std::vector<Elem>>> options(seqs.begin(), seqs.end());

  // States: (vector, some coefficient sum missed 0). Back-pointers give the
  // witness: previous state and the option used.
  const std::size_t nv = v.size();
  auto id = [&](Elem x, bool bad) { return static_cast<std::size_t>(x) * 2 + (bad ? 1 : 0); };
  struct Back {
    std::size_t prev;
    std::size_t option;
  };
  std::vector<std::vector<std::optional<Back>>> back(vs.size() + 1,
                                                     std::vector<std::optional<Back>>(nv * 2));
  std::vector<bool> cur(nv * 2, false);
  cur[id(v.zero(), false)] = true;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    std::vector<bool> next(nv * 2, false);
    for (std::size_t o = 0; o < options.size(); ++o) {
      const ElemSet& sigma = options[o].first;
      const bool bad_here = !sigma.contains(f.zero());
      const ElemSet term = v.act(sigma, vs[i]);
      for (std::size_t st = 0; st < nv * 2; ++st) {
        if (!cur[st]) continue;
        const Elem x = static_cast<Elem>(st / 2);
        const bool bad = (st % 2) || bad_here;
        for (Elem y : v.add(ElemSet::single(x), term)) {
          const std::size_t to = id(y, bad);
          if (next[to]) continue;
          next[to] = true;
          back[i + 1][to] = Back{st, o};
        }
      }
    }
    cur = std::move(next);
  }
  const std::size_t target = id(v.zero(), true);
  if (!cur[target]) return res;
  res.independent = false;
  res.witness.assign(vs.size(), {});
  std::size_t st = target;
  for (std::size_t i = vs.size(); i > 0; --i) {
    const Back b = *back[i][st];
    res.witness[i - 1] = options[b.option].second;
    st = b.prev;
  }
  return res;
}

bool recheck_dependence(const VectorSpace& v, const std::vector<Elem>& vs,
                        const std::vector<std::vector<Elem>>& witness) {
  if (witness.size() != vs.size()) return false;
  const Structure& f = *v.scalars;
  ElemSet total = ElemSet::single(v.zero());
  bool some_bad = false;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (witness[i].empty()) return false;
    const ElemSet sigma = msum(f, std::span<const Elem>(witness[i]));
    some_bad = some_bad || !sigma.contains(f.zero());
    total = v.add(total, v.act(sigma, vs[i]));
  }
  return some_bad && total.contains(v.zero());
}

// ---- bases and dimension --------------------------------------------------------

namespace {

ElemSet as_set(const std::vector<Elem>& xs) {
  ElemSet s;
  for (Elem x : xs) s.insert(x);
  return s;
}

}  // namespace

BasisResult find_basis(const VectorSpace& v, const std::vector<Elem>& generators, int bound) {
  std::vector<Elem> gens;
  for (Elem g : generators)
    if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
  if (!(generated_subspace(v, as_set(gens)) == v.all()))
    throw Error("generators do not span " + v.name);

  BasisResult res;
  for (;;) {
    if (is_linearly_independent(v, gens, bound).independent) {
      res.basis = gens;
      res.independent = true;
      return res;
    }
    bool dropped = false;
    for (std::size_t i = 0; i < gens.size() && !dropped; ++i) {
      auto others = gens;
      others.erase(others.begin() + static_cast<std::ptrdiff_t>(i));
      if (linear_combinations(v, as_set(others), bound).contains(gens[i])) {
        gens = std::move(others);
        dropped = true;
      }
    }
    if (!dropped) {
      res.basis = gens;
      return res;
    }
  }
}

DimensionResult dimension(const VectorSpace& v, const Budget& budget) {
  std::vector<Elem> all;
  for (Elem x = 0; x < v.size(); ++x) all.push_back(x);
  DimensionResult res;
  auto basis = find_basis(v, all, budget.bundle_bound);
  if (!basis.independent) throw Error("no independent generating set found for " + v.name);
  res.basis = basis.basis;
  res.dimension = basis.basis.size();

  // Shape by shape, so an unclosed base is refused at its smallest failure.
  res.closed.subject = v.scalars->name() + " linearly closed";
  for (std::size_t k = 1; k <= res.dimension; ++k) {
    AxiomReport step;
    try {
      step = is_linearly_closed(v.scalars, {{k, k + 1}}, budget);
    } catch (const BlowupError& e) {
      throw Error(std::string("cannot certify that ") + v.scalars->name() +
                  " is linearly closed (" + e.what() + "); dimension is undefined without it");
    }
    res.closed.instances += step.instances;
    if (step.verdict != Verdict::pass)
      throw Error(v.scalars->name() + " is not certified linearly closed at shape " +
                  std::to_string(k) + "x" + std::to_string(k + 1) + "; dimension is undefined");
  }

  // Every (dim+1)-subset must be dependent.
  const std::size_t k = res.dimension + 1;
  double subsets = 1;
  for (std::size_t i = 0; i < k; ++i)
    subsets = subsets * static_cast<double>(v.size() - i) / static_cast<double>(i + 1);
  if (k <= v.size() && subsets <= static_cast<double>(budget.node_cap)) {
    res.bound_checked = true;
    std::vector<Elem> pick(k);
    std::function<void(std::size_t, Elem)> rec = [&](std::size_t pos, Elem from) {
      if (!res.bound_holds) return;
      if (pos == k) {
        if (is_linearly_independent(v, pick, budget.bundle_bound).independent)
          res.bound_holds = false;
        return;
      }
      for (Elem x = from; x < v.size(); ++x) {
        pick[pos] = x;
        rec(pos + 1, static_cast<Elem>(x + 1));
      }
    };
    rec(0, 0);
  }
  return res;
}

KernelSpace solution_subspace(const Matrix& a) {
  const StructurePtr& f = a.base();
  auto full = is_full(*f);
  if (!full.ok()) throw Error(f->name() + " is not full; the kernel need not be a subspace");
  KernelSpace out{coordinate_space(f, a.cols()), {}, false};
  const LinearSystem sys = LinearSystem::homogeneous(a);
  for (Elem x = 0; x < out.space.size(); ++x)
    if (is_weak_solution(sys, Matrix::column(f, coordinates(out.space, x)))) out.members.insert(x);
  out.subspace = is_subspace(out.space, out.members);
  return out;
}

}  // namespace mvla
