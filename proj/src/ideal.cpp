#include "mvla/ideal.hpp"

#include <algorithm>
#include <set>

namespace mvla {

int characteristic(const Structure& s) {
  std::set<ElemSet> seen;
  ElemSet acc = ElemSet::single(s.one());
  const ElemSet one = acc;
  for (int n = 1;; ++n) {
    if (acc.contains(s.zero())) return n;
    if (!seen.insert(acc).second) return 0;
    acc = s.sum(acc, one);
  }
}

ElemSet generated_ideal(const Structure& s, const ElemSet& gens) {
  ElemSet cur = gens;
  cur.insert(s.zero());
  const ElemSet all = s.all();
  for (;;) {
    ElemSet next = cur | s.sum(cur, cur) | s.prod(all, cur);
    if (next == cur) return cur;
    cur = next;
  }
}

bool is_ideal(const Structure& s, const ElemSet& i) {
  if (i.empty()) return false;
  return s.sum(i, i).subset_of(i) && s.prod(s.all(), i).subset_of(i);
}

IdealClass classify_ideal(const Structure& s, const ElemSet& i) {
  IdealClass c;
  c.ideal = is_ideal(s, i);
  if (!c.ideal) return c;
  const bool proper = !i.contains(s.one());
  c.prime = proper;
  c.strongly_prime = proper;
  const std::size_t n = s.size();
  for (Elem a = 0; a < n && proper; ++a)
    for (Elem b = 0; b < n; ++b) {
      if (i.contains(a) || i.contains(b)) continue;
      const ElemSet& ab = s.prod(a, b);
      if (c.prime && ab.subset_of(i)) {
        c.prime = false;
        c.prime_witness = {a, b};
      }
      if (c.strongly_prime && ab.intersects(i)) {
        c.strongly_prime = false;
        c.strong_witness = {a, b};
      }
    }
  c.maximal = proper;
  for (Elem x = 0; x < n && proper; ++x) {
    if (i.contains(x)) continue;
    ElemSet bigger = i;
    bigger.insert(x);
    if (generated_ideal(s, bigger) != s.all()) {
      c.maximal = false;
      c.maximal_witness = x;
      break;
    }
  }
  return c;
}

std::vector<ElemSet> enumerate_ideals(const Structure& s) {
  std::set<ElemSet> found;
  std::vector<ElemSet> todo{generated_ideal(s, {})};
  found.insert(todo.front());
  while (!todo.empty()) {
    ElemSet j = todo.back();
    todo.pop_back();
    for (Elem x = 0; x < s.size(); ++x) {
      if (j.contains(x)) continue;
      ElemSet k = j;
      k.insert(x);
      k = generated_ideal(s, k);
      if (found.insert(k).second) todo.push_back(k);
    }
  }
  std::vector<ElemSet> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const ElemSet& a, const ElemSet& b) { return a.size() < b.size(); });
  return out;
}

std::vector<Elem> quotient_map(const Structure& s, const ElemSet& i) {
  if (!is_ideal(s, i)) throw Error("quotient: " + s.describe(i) + " is not an ideal");
  const std::size_t n = s.size();
  std::vector<ElemSet> coset(n);
  for (Elem x = 0; x < n; ++x) coset[x] = s.sum(ElemSet::single(x), i);
  std::vector<Elem> cls(n);
  std::vector<ElemSet> reps;
  for (Elem x = 0; x < n; ++x) {
    auto it = std::find(reps.begin(), reps.end(), coset[x]);
    cls[x] = static_cast<Elem>(it - reps.begin());
    if (it == reps.end()) reps.push_back(coset[x]);
  }
  return cls;
}

StructurePtr quotient(const Structure& s, const ElemSet& i) {
  const std::vector<Elem> cls = quotient_map(s, i);
  const std::size_t n = s.size();
  const std::size_t k = *std::max_element(cls.begin(), cls.end()) + 1u;
  auto image = [&](const ElemSet& xs) {
    ElemSet out;
    for (Elem x : xs) out.insert(cls[x]);
    return out;
  };
  std::vector<Elem> rep(k, 0);
  for (Elem x = n; x-- > 0;) rep[cls[x]] = x;

  MultiOp sum(k), prod(k);
  std::vector<Elem> neg(k);
  std::vector<std::string> tokens;
  for (std::size_t c = 0; c < k; ++c) {
    tokens.push_back("[" + s.token(rep[c]) + "]");
    neg[c] = cls[s.neg(rep[c])];
    for (std::size_t d = 0; d < k; ++d) {
      sum.set(static_cast<Elem>(c), static_cast<Elem>(d), image(s.sum(rep[c], rep[d])));
      prod.set(static_cast<Elem>(c), static_cast<Elem>(d), image(s.prod(rep[c], rep[d])));
    }
  }
  // Operations must not depend on representatives.
  for (Elem x = 0; x < n; ++x) {
    if (cls[s.neg(x)] != neg[cls[x]])
      throw Error("quotient: negation not well defined at " + s.token(x));
    for (Elem y = 0; y < n; ++y) {
      if (image(s.sum(x, y)) != sum(cls[x], cls[y]))
        throw Error("quotient: sum not well defined at " + s.token(x) + " + " + s.token(y));
      if (image(s.prod(x, y)) != prod(cls[x], cls[y]))
        throw Error("quotient: product not well defined at " + s.token(x) + " * " +
                    s.token(y));
    }
  }
  std::string iname = s.describe(i);
  std::replace(iname.begin(), iname.end(), ' ', ',');
  return make_structure(s.name() + "/" + iname, std::move(tokens), std::move(sum),
                        std::move(prod), std::move(neg), cls[s.zero()], cls[s.one()]);
}

}  // namespace mvla
