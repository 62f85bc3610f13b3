#include "mvla/morphism.hpp"

#include <optional>

namespace mvla {

namespace {

using Detail = std::optional<std::vector<Elem>>;

Detail check_one(const Morphism& f, const std::string& cond, const Elem* q) {
  const Structure& s = *f.source;
  const Structure& t = *f.target;
  if (cond == "zero") {
    if (f(s.zero()) != t.zero()) return std::vector<Elem>{};
  } else if (cond == "one") {
    if (f(s.one()) != t.one()) return std::vector<Elem>{};
  } else if (cond == "neg") {
    if (f(s.neg(q[0])) != t.neg(f(q[0]))) return std::vector<Elem>{};
  } else if (cond == "sum") {
    const ElemSet& target = t.sum(f(q[0]), f(q[1]));
    for (Elem c : s.sum(q[0], q[1]))
      if (!target.contains(f(c))) return std::vector<Elem>{c};
  } else if (cond == "prod") {
    const ElemSet& target = t.prod(f(q[0]), f(q[1]));
    for (Elem c : s.prod(q[0], q[1]))
      if (!target.contains(f(c))) return std::vector<Elem>{c};
  } else if (cond == "sum-full") {
    if (f.image(s.sum(q[0], q[1])) != t.sum(f(q[0]), f(q[1]))) return std::vector<Elem>{};
  } else if (cond == "prod-full") {
    if (f.image(s.prod(q[0], q[1])) != t.prod(f(q[0]), f(q[1]))) return std::vector<Elem>{};
  }
  return std::nullopt;
}

int arity_of(const std::string& cond) {
  if (cond == "zero" || cond == "one") return 0;
  if (cond == "neg") return 1;
  return 2;
}

}  // namespace

ElemSet Morphism::image(const ElemSet& xs) const {
  ElemSet out;
  for (Elem e : xs) out.insert(map[e]);
  return out;
}

Morphism inclusion_by_tokens(StructurePtr source, StructurePtr target) {
  Morphism f{source, target, {}};
  for (const auto& tok : source->tokens()) {
    auto e = target->find(tok);
    if (!e)
      throw Error("no inclusion " + source->name() + " -> " + target->name() +
                  ": token '" + tok + "' missing in target");
    f.map.push_back(*e);
  }
  return f;
}

Morphism morphism_from_pairs(StructurePtr source, StructurePtr target,
                             const std::vector<std::pair<std::string, std::string>>& pairs) {
  Morphism f{source, target, std::vector<Elem>(source->size())};
  std::vector<bool> seen(source->size());
  for (const auto& [a, b] : pairs) {
    Elem x = source->elem(a);
    if (seen[x]) throw Error("map lists '" + a + "' twice");
    seen[x] = true;
    f.map[x] = target->elem(b);
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) throw Error("map does not cover '" + source->token(static_cast<Elem>(i)) + "'");
  return f;
}

AxiomReport check_morphism(const Morphism& f, bool full) {
  if (f.map.size() != f.source->size())
    throw Error("morphism map has the wrong length");
  AxiomReport rep;
  rep.subject = f.source->name() + " -> " + f.target->name() + (full ? " full" : "");
  std::vector<std::string> conds{"zero", "one", "neg", "sum", "prod"};
  if (full) {
    conds.push_back("sum-full");
    conds.push_back("prod-full");
  }
  const std::size_t n = f.source->size();
  for (const auto& cond : conds) {
    const int ar = arity_of(cond);
    Elem q[2] = {0, 0};
    const std::size_t total = ar == 0 ? 1 : ar == 1 ? n : n * n;
    for (std::size_t i = 0; i < total; ++i) {
      q[0] = static_cast<Elem>(ar == 2 ? i / n : i);
      q[1] = static_cast<Elem>(ar == 2 ? i % n : 0);
      ++rep.instances;
      if (auto d = check_one(f, cond, q)) {
        Witness w{cond, std::vector<Elem>(q, q + ar), {}};
        w.tuple.insert(w.tuple.end(), d->begin(), d->end());
        rep.counterexamples.push_back(std::move(w));
        break;
      }
    }
  }
  rep.verdict = rep.counterexamples.empty() ? Verdict::pass : Verdict::fail;
  return rep;
}

bool recheck(const Morphism& f, const Witness& w) {
  const int ar = arity_of(w.axiom);
  if (w.tuple.size() < static_cast<std::size_t>(ar)) return false;
  for (int i = 0; i < ar; ++i)
    if (w.tuple[i] >= f.source->size()) return false;
  return check_one(f, w.axiom, w.tuple.data()).has_value();
}

}  // namespace mvla
