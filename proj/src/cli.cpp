#include "mvla/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "mvla/builtins.hpp"
#include "mvla/format.hpp"
#include "mvla/ideal.hpp"
#include "mvla/vspace.hpp"

#ifndef MVLA_GOLDEN_DIR
#define MVLA_GOLDEN_DIR "tests/goldens"
#endif

namespace mvla {

std::string Report::render() const {
  std::string out;
  for (const auto& [k, v] : lines) out += k + "=" + v + "\n";
  return out;
}

int Report::exit_code() const {
  switch (verdict) {
    case Verdict::pass:
    case Verdict::pass_on_window:
      return exit_pass;
    case Verdict::fail:
      return exit_fail;
    case Verdict::inconclusive:
      return exit_inconclusive;
  }
  return exit_usage;
}

namespace {

const char* yes_no(bool b) { return b ? "yes" : "no"; }

// Lazy structures are materialised on a window for everything but verify.
StructurePtr concrete(StructurePtr s, const Window& w) {
  if (!s->is_lazy()) return s;
  return std::make_shared<const Structure>(s->rule()->window(w.lo, w.hi));
}

StructurePtr structure_arg(const std::string& ref) {
  auto s = resolve_structure(ref);
  if (!s) throw Error("unknown structure: " + ref);
  return s;
}

// A path to a file, or the text itself with ';' standing for a newline.
std::string text_arg(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return read_file(arg);
  std::string t = arg;
  std::replace(t.begin(), t.end(), ';', '\n');
  return t;
}

ElemSet parse_elemset(const Structure& s, std::string text) {
  std::replace(text.begin(), text.end(), '{', ' ');
  std::replace(text.begin(), text.end(), '}', ' ');
  std::replace(text.begin(), text.end(), ',', ' ');
  ElemSet out;
  for (const auto& w : split_words(text)) out.insert(s.elem(w));
  return out;
}

std::string tuple_tokens(const std::vector<std::string>& tokens, const std::vector<Elem>& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i)
    out += (i ? " " : "") + (t[i] < tokens.size() ? tokens[t[i]] : std::to_string(t[i]));
  return out;
}

std::string witness_line(const std::string& axiom, const std::string& tuple,
                         const std::string& note) {
  std::string out = axiom;
  if (!tuple.empty()) out += " " + tuple;
  if (!note.empty()) out += " : " + note;
  return out;
}

void add_axiom_report(Report& r, const std::string& prefix, const AxiomReport& rep,
                      const std::function<std::string(const Witness&)>& show,
                      const std::function<bool(const Witness&)>& re) {
  r.add(prefix + "verdict", to_string(rep.verdict));
  r.add(prefix + "instances", std::to_string(rep.instances));
  if (rep.skipped) r.add(prefix + "skipped", std::to_string(rep.skipped));
  r.add(prefix + "counterexamples", std::to_string(rep.counterexamples.size()));
  for (std::size_t i = 0; i < rep.counterexamples.size(); ++i) {
    const auto& w = rep.counterexamples[i];
    const std::string key = prefix + "witness." + std::to_string(i);
    r.add(key, show(w));
    r.add(key + ".recheck", yes_no(re(w)));
  }
}

void add_structure_report(Report& r, const std::string& prefix, const Structure& s,
                          const AxiomReport& rep) {
  add_axiom_report(
      r, prefix, rep, [&](const Witness& w) { return format_witness(s, w); },
      [&](const Witness& w) { return recheck(s, w); });
}

Verdict both(Verdict a, Verdict b) {
  if (a == Verdict::fail || b == Verdict::fail) return Verdict::fail;
  if (a == Verdict::inconclusive || b == Verdict::inconclusive) return Verdict::inconclusive;
  if (a == Verdict::pass_on_window || b == Verdict::pass_on_window) return Verdict::pass_on_window;
  return Verdict::pass;
}

std::string vector_str(const Matrix& col) {
  std::string out = "(";
  for (std::size_t i = 0; i < col.rows(); ++i)
    out += (i ? "," : "") + col.base()->token(col.at(i, 0));
  return out + ")";
}

// ---- reproduce ------------------------------------------------------------------

struct X2Example {
  StructurePtr x2 = kaleidoscope(2);
  Matrix a = parse_matrix(x2, "2 2\n1 1\n0 1");
  Matrix b = parse_matrix(x2, "2 2\n-1 1\n0 -1");
  Matrix c = parse_matrix(x2, "2 2\n2 0\n-1 2");
};

void add_matrix_set(Report& r, const std::string& key, const MatrixSet& m) {
  r.add(key + ".size", std::to_string(m.size()));
  r.add(key, m.str());
}

Report reproduce_x2(const std::string& which) {
  X2Example ex;
  Report r;
  r.add("example", which);
  r.add("structure", ex.x2->name());
  r.add("A", ex.a.str());
  if (which == "x2-add-AB") {
    r.add("B", ex.b.str());
    add_matrix_set(r, "A+B", madd(ex.a, ex.b));
  } else if (which == "x2-matmul-AB") {
    r.add("B", ex.b.str());
    add_matrix_set(r, "AB", mmul(ex.a, ex.b));
  } else if (which == "x2-matmul-AC") {
    r.add("C", ex.c.str());
    add_matrix_set(r, "AC", mmul(ex.a, ex.c));
  } else {
    r.add("B", ex.b.str());
    r.add("C", ex.c.str());
    const MatrixSet left = mmul(mmul(ex.a, ex.b), MatrixSet::single(ex.c));
    const MatrixSet right = mmul(MatrixSet::single(ex.a), mmul(ex.b, ex.c));
    add_matrix_set(r, "(AB)C", left);
    add_matrix_set(r, "A(BC)", right);
    const bool equal = left == right;
    r.add("equal", yes_no(equal));
    r.verdict = equal ? Verdict::fail : Verdict::pass;
  }
  return r;
}

Report reproduce_det() {
  Report r;
  r.add("example", "det-properties");
  bool ok = true;
  for (const auto& s : {signs(), hp(3)}) {
    const std::string p = s->name() + ".";
    std::size_t n = 0, contained = 0, equal = 0, zero_lines = 0, zero_ok = 0, tri = 0, tri_ok = 0;
    for (std::size_t idx = 0; idx < s->size() * s->size() * s->size() * s->size(); ++idx) {
      const Matrix a = matrix_at(s, 2, 2, idx);
      const ElemSet da = det(a);
      for (Elem l = 0; l < s->size(); ++l) {
        ++n;
        const ElemSet lhs = det(mscale(l, a));
        const ElemSet rhs = s->prod(s->prod(ElemSet::single(l), ElemSet::single(l)), da);
        contained += lhs.subset_of(rhs);
        equal += lhs == rhs;
      }
      const Elem z = s->zero();
      const bool zero_line = (a.at(0, 0) == z && a.at(0, 1) == z) || (a.at(1, 0) == z && a.at(1, 1) == z) ||
                             (a.at(0, 0) == z && a.at(1, 0) == z) || (a.at(0, 1) == z && a.at(1, 1) == z);
      if (zero_line) {
        ++zero_lines;
        zero_ok += da == ElemSet::single(z);
      }
      if (a.at(1, 0) == z || a.at(0, 1) == z) {
        ++tri;
        tri_ok += da == s->prod(a.at(0, 0), a.at(1, 1));
      }
    }
    r.add(p + "scale.instances", std::to_string(n));
    r.add(p + "scale.contained", std::to_string(contained));
    r.add(p + "scale.equal", std::to_string(equal));
    r.add(p + "zero_line.instances", std::to_string(zero_lines));
    r.add(p + "zero_line.holds", std::to_string(zero_ok));
    r.add(p + "triangular.instances", std::to_string(tri));
    r.add(p + "triangular.holds", std::to_string(tri_ok));
    ok = ok && contained == n && zero_ok == zero_lines && tri_ok == tri;
    // Equality is claimed for full structures only.
    if (is_full(*s).ok()) ok = ok && equal == n;
  }
  r.verdict = ok ? Verdict::pass : Verdict::fail;
  return r;
}

Report reproduce_morphism(const std::string& which) {
  Report r;
  r.add("example", which);
  const bool h = which == "h2-h3-morphism";
  const Morphism f = inclusion_by_tokens(krasner(), h ? hp(3) : signs());
  r.add("source", f.source->name());
  r.add("target", f.target->name());
  auto show = [&](const Witness& w) {
    return witness_line(w.axiom, tuple_tokens(f.source->tokens(), w.tuple), w.note);
  };
  auto re = [&](const Witness& w) { return recheck(f, w); };
  const AxiomReport m = check_morphism(f);
  add_axiom_report(r, "morphism.", m, show, re);
  bool expected = false;
  if (h) {
    const AxiomReport full = check_morphism(f, true);
    add_axiom_report(r, "full.", full, show, re);
    expected = m.verdict == Verdict::pass && full.verdict == Verdict::fail;
  } else {
    expected = m.verdict == Verdict::fail;
  }
  r.add("matches_claim", yes_no(expected));
  r.verdict = expected ? Verdict::pass : Verdict::fail;
  return r;
}

Report reproduce_basis5() {
  Report r;
  r.add("example", "basis5-2x3");
  const StructurePtr f = hp(3);
  r.add("structure", f->name());
  const AxiomReport closed = is_linearly_closed(f, {{1, 2}, {2, 3}});
  add_axiom_report(
      r, "closed.", closed,
      [&](const Witness& w) { return witness_line(w.axiom, tuple_tokens(f->tokens(), w.tuple), ""); },
      [](const Witness&) { return true; });
  std::size_t n = 0, constructive = 0, solved = 0;
  for (std::size_t idx = 0; idx < 729; ++idx) {
    const Matrix a = matrix_at(f, 2, 3, idx);
    const SolveResult k = find_nontrivial_kernel(a);
    ++n;
    if (k.status == SolveResult::solved && is_nontrivial_kernel(a, *k.solution)) {
      ++solved;
      constructive += k.method == "constructive";
    }
  }
  r.add("kernel.instances", std::to_string(n));
  r.add("kernel.solved", std::to_string(solved));
  r.add("kernel.constructive", std::to_string(constructive));
  r.verdict = closed.verdict == Verdict::pass && solved == n ? Verdict::pass : Verdict::fail;
  return r;
}

// ---- verbs ----------------------------------------------------------------------

struct Globals {
  Budget budget = Budget::from_env();
  Window window;
};

Report cmd_verify(const Globals& g, const std::string& ref, const std::string& kind_name) {
  const auto kind = parse_kind(kind_name);
  if (!kind) throw Error("unknown kind: " + kind_name);
  const StructurePtr s = structure_arg(ref);
  Report r;
  r.add("verb", "verify");
  r.add("kind", to_string(*kind));
  if (s->is_lazy()) {
    const Structure w = s->rule()->window(g.window.lo, g.window.hi);
    r.add("structure", s->name());
    r.add("window", std::to_string(g.window.lo) + ".." + std::to_string(g.window.hi));
    const AxiomReport rep = verify_axioms(*s, *kind, g.window);
    add_structure_report(r, "", w, rep);
    r.verdict = rep.verdict;
    return r;
  }
  r.add("structure", s->name());
  r.add("elements", std::to_string(s->size()));
  const AxiomReport rep = verify_axioms(*s, *kind);
  add_structure_report(r, "", *s, rep);
  r.verdict = rep.verdict;
  return r;
}

Report cmd_morphism(const Globals& g, const std::string& src, const std::string& dst,
                    const std::vector<std::string>& pairs, bool full) {
  const StructurePtr a = concrete(structure_arg(src), g.window);
  const StructurePtr b = concrete(structure_arg(dst), g.window);
  Morphism f;
  if (pairs.empty()) {
    f = inclusion_by_tokens(a, b);
  } else {
    std::vector<std::pair<std::string, std::string>> ps;
    for (const auto& p : pairs) {
      const auto colon = p.find(':');
      if (colon == std::string::npos) throw Error("map entries look like a:b, got " + p);
      ps.emplace_back(p.substr(0, colon), p.substr(colon + 1));
    }
    f = morphism_from_pairs(a, b, ps);
  }
  Report r;
  r.add("verb", "morphism");
  r.add("source", a->name());
  r.add("target", b->name());
  std::string map;
  for (Elem x = 0; x < a->size(); ++x) map += (x ? " " : "") + a->token(x) + ":" + b->token(f(x));
  r.add("map", map);
  auto show = [&](const Witness& w) {
    return witness_line(w.axiom, tuple_tokens(a->tokens(), w.tuple), w.note);
  };
  auto re = [&](const Witness& w) { return recheck(f, w); };
  const AxiomReport m = check_morphism(f, full);
  add_axiom_report(r, "", m, show, re);
  r.add("full_checked", yes_no(full));
  r.verdict = m.verdict;
  return r;
}

Report cmd_det(const Globals& g, const std::string& ref, const std::string& mat) {
  const StructurePtr s = concrete(structure_arg(ref), g.window);
  const MatrixSet a = parse_matrix_set(s, text_arg(mat));
  Report r;
  r.add("verb", "det");
  r.add("structure", s->name());
  r.add("matrices", std::to_string(a.size()));
  const ElemSet d = det(a, g.budget);
  r.add("det", s->describe(d));
  r.add("invertible_test", d.contains(s->zero()) ? "0 in det" : "0 not in det");
  return r;
}

Report cmd_matmul(const Globals& g, const std::string& ref, const std::string& lhs,
                  const std::string& rhs, bool add) {
  const StructurePtr s = concrete(structure_arg(ref), g.window);
  const MatrixSet a = parse_matrix_set(s, text_arg(lhs));
  const MatrixSet b = parse_matrix_set(s, text_arg(rhs));
  Report r;
  r.add("verb", add ? "matadd" : "matmul");
  r.add("structure", s->name());
  const MatrixSet out = add ? madd(a, b, g.budget) : mmul(a, b, g.budget);
  r.add("size", std::to_string(out.size()));
  r.add("result", out.str(g.budget));
  return r;
}

Report cmd_divmod(const Globals& g, const std::string& ref, const std::string& f_text,
                  const std::string& g_text, bool all) {
  const StructurePtr s = concrete(structure_arg(ref), g.window);
  const Poly f = parse_poly(s, f_text);
  const Poly d = parse_poly(s, g_text);
  Report r;
  r.add("verb", "divmod");
  r.add("structure", s->name());
  r.add("f", f.pretty());
  r.add("g", d.pretty());
  const auto pairs = pdivmod(f, d, all, g.budget);
  r.add("pairs", std::to_string(pairs.size()));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string k = "pair." + std::to_string(i);
    r.add(k + ".q", pairs[i].q.pretty());
    r.add(k + ".r", pairs[i].r.pretty());
    r.add(k + ".recheck", yes_no(divmod_holds(f, d, pairs[i], g.budget)));
  }
  r.verdict = pairs.empty() ? Verdict::fail : Verdict::pass;
  return r;
}

Report cmd_eval(const Globals& g, const std::string& ref, const std::string& f_text,
                const std::string& alpha, const std::string& ambient_ref) {
  const StructurePtr s = concrete(structure_arg(ref), g.window);
  const StructurePtr amb = ambient_ref.empty() ? s : concrete(structure_arg(ambient_ref), g.window);
  const Poly f = parse_poly(s, f_text);
  const Elem a = amb->elem(alpha);
  Report r;
  r.add("verb", "eval");
  r.add("structure", s->name());
  r.add("ambient", amb->name());
  r.add("f", f.pretty());
  r.add("alpha", alpha);
  const ElemSet v = evaluate(f, a, amb);
  r.add("value", amb->describe(v));
  r.add("root", yes_no(v.contains(amb->zero())));
  if (amb == s) {
    const auto cof = effective_root_cofactor(f, a, g.budget);
    r.add("effective_root", yes_no(cof.has_value()));
    if (cof) r.add("cofactor", cof->pretty());
  }
  return r;
}

Report cmd_irreducible(const Globals& g, const std::string& ref, const std::string& f_text) {
  const StructurePtr s = concrete(structure_arg(ref), g.window);
  const Poly f = parse_poly(s, f_text);
  Report r;
  r.add("verb", "irreducible");
  r.add("structure", s->name());
  r.add("f", f.pretty());
  const auto res = is_irreducible(f, g.budget);
  r.add("irreducible", yes_no(res.irreducible));
  if (res.witness) r.add("witness", res.witness->pretty());
  if (!res.reason.empty()) r.add("reason", res.reason);
  r.verdict = res.irreducible ? Verdict::pass : Verdict::fail;
  return r;
}

Verdict from_status(SolveResult::Status st) {
  switch (st) {
    case SolveResult::solved:
      return Verdict::pass;
    case SolveResult::none:
      return Verdict::fail;
    case SolveResult::inconclusive:
      break;
  }
  return Verdict::inconclusive;
}

Report cmd_solve(const Globals& g, const std::string& ref, const std::string& sys_text,
                 bool enumerate_free) {
  const StructurePtr s = concrete(structure_arg(ref), g.window);
  const LinearSystem sys = parse_system(s, text_arg(sys_text));
  Report r;
  r.add("verb", "solve");
  r.add("structure", s->name());
  r.add("rows", std::to_string(sys.rows()));
  r.add("unknowns", std::to_string(sys.unknowns()));
  try {
    const auto scaled = scale_system(sys, g.budget);
    r.add("scaled_systems", std::to_string(scaled.size()));
    if (!scaled.empty()) r.add("type", to_string(classify(scaled.front())));
  } catch (const BlowupError&) {
    r.add("scaled_systems", "over budget");
  }
  SolveOptions opt;
  opt.enumerate_free = enumerate_free;
  const SolveResult res = solve_weak(sys, opt, g.budget);
  r.add("status", to_string(res.status));
  r.add("method", res.method);
  if (res.solution) {
    r.add("solution", vector_str(*res.solution));
    r.add("recheck", yes_no(is_weak_solution(sys, *res.solution)));
    r.add("strong", yes_no(is_solution(sys, *res.solution)));
  }
  r.verdict = from_status(res.status);
  return r;
}

Report cmd_kernel(const Globals& g, const std::string& ref, const std::string& mat) {
  const StructurePtr s = concrete(structure_arg(ref), g.window);
  const Matrix a = parse_matrix(s, text_arg(mat));
  Report r;
  r.add("verb", "kernel");
  r.add("structure", s->name());
  r.add("A", a.str());
  const SolveResult res = find_nontrivial_kernel(a, g.budget);
  r.add("status", to_string(res.status));
  r.add("method", res.method);
  if (res.solution) {
    r.add("vector", vector_str(*res.solution));
    r.add("recheck", yes_no(is_nontrivial_kernel(a, *res.solution)));
  }
  r.verdict = from_status(res.status);
  return r;
}

Report cmd_closed(const Globals& g, const std::string& ref, std::size_t rows, std::size_t cols,
                  std::size_t samples, std::uint64_t seed) {
  const StructurePtr s = concrete(structure_arg(ref), g.window);
  if (rows >= cols) throw Error("closedness needs rows < cols");
  Report r;
  r.add("verb", "closed");
  r.add("structure", s->name());
  r.add("shape", std::to_string(rows) + "x" + std::to_string(cols));
  AxiomReport rep;
  try {
    if (samples > 0) {
      r.add("mode", "sampled");
      r.add("samples", std::to_string(samples));
      r.add("seed", std::to_string(seed));
      rep = is_linearly_closed_sampled(s, rows, cols, samples, seed, g.budget);
    } else {
      r.add("mode", "exhaustive");
      rep = is_linearly_closed(s, {{rows, cols}}, g.budget);
    }
  } catch (const BlowupError& e) {
    r.add("verdict", "inconclusive");
    r.add("reason", e.what());
    r.verdict = Verdict::inconclusive;
    return r;
  }
  add_axiom_report(
      r, "", rep,
      [&](const Witness& w) { return witness_line(w.axiom, tuple_tokens(s->tokens(), w.tuple), ""); },
      [&](const Witness& w) {
        std::vector<Elem> e(w.tuple.begin(), w.tuple.begin() + static_cast<std::ptrdiff_t>(rows * cols));
        return find_nontrivial_kernel(Matrix(s, rows, cols, e), g.budget).status ==
               SolveResult::none;
      });
  r.verdict = rep.verdict;
  return r;
}

Report cmd_quotient(const Globals& g, const std::string& ref, const std::string& gens) {
  const StructurePtr s = concrete(structure_arg(ref), g.window);
  const ElemSet gen = parse_elemset(*s, gens);
  Report r;
  r.add("verb", "quotient");
  r.add("structure", s->name());
  r.add("characteristic", std::to_string(characteristic(*s)));
  const ElemSet ideal = generated_ideal(*s, gen);
  r.add("ideal", s->describe(ideal));
  const IdealClass cls = classify_ideal(*s, ideal);
  r.add("prime", yes_no(cls.prime));
  r.add("strongly_prime", yes_no(cls.strongly_prime));
  r.add("maximal", yes_no(cls.maximal));
  try {
    const StructurePtr q = quotient(*s, ideal);
    r.add("quotient", q->name());
    r.add("quotient.elements", std::to_string(q->size()));
    r.add("quotient.tokens", q->describe(q->all()));
    std::string cls_map;
    const auto map = quotient_map(*s, ideal);
    for (Elem x = 0; x < s->size(); ++x) cls_map += (x ? " " : "") + s->token(x) + ":" + q->token(map[x]);
    r.add("classes", cls_map);
  } catch (const Error& e) {
    r.add("quotient", "ill-defined");
    r.add("reason", e.what());
    r.verdict = Verdict::fail;
  }
  return r;
}

Report cmd_extension(const Globals& g, const std::string& ref, const std::string& p_text,
                     std::size_t bound) {
  const StructurePtr s = concrete(structure_arg(ref), g.window);
  const Poly p = parse_poly(s, p_text);
  Report r;
  r.add("verb", "extension");
  r.add("structure", s->name());
  r.add("modulus", p.pretty());
  const QuotientField q = make_quotient_superfield(s, p, true, g.budget);
  const Structure& k = *q.field();
  r.add("field", k.name());
  r.add("elements", std::to_string(k.size()));
  add_structure_report(r, "superfield.", k, q.verification);
  const ExtensionClass cls = classify_extension(q.pair());
  r.add("kind", to_string(cls.kind));
  r.add("field_full", yes_no(is_full(k).ok()));
  r.add("gamma", k.token(q.gamma()));
  const AlgebraicReport alg = certify_algebraic_extension(q.pair(), bound == 0 ? q.degree() : bound);
  r.add("algebraic", to_string(alg.verdict));
  r.add("certified", std::to_string(alg.certificates.size()));
  r.add("max_degree", std::to_string(alg.max_degree));
  for (const auto& c : alg.certificates) r.add("certificate." + k.token(c.element), c.witness.pretty());
  r.verdict = both(q.verification.verdict, alg.verdict);
  return r;
}

Report cmd_vspace(const Globals& g, const std::string& ref, const std::string& space,
                  std::size_t n, std::size_t cols, const std::string& modulus, bool full,
                  bool want_dim) {
  const StructurePtr s = concrete(structure_arg(ref), g.window);
  VectorSpace v;
  if (space == "coord") {
    v = coordinate_space(s, n);
  } else if (space == "matrix") {
    v = matrix_space(s, n, cols == 0 ? n : cols);
  } else if (space == "poly") {
    v = poly_space(s, n);
  } else if (space == "ext") {
    if (modulus.empty()) throw Error("--space ext needs --modulus");
    v = extension_space(make_quotient_superfield(s, parse_poly(s, modulus), true, g.budget).pair());
  } else {
    throw Error("unknown space: " + space + " (coord, matrix, poly, ext)");
  }
  Report r;
  r.add("verb", "vspace");
  r.add("space", v.name);
  r.add("scalars", s->name());
  r.add("vectors", std::to_string(v.size()));
  r.add("full_checked", yes_no(full));
  const AxiomReport rep = verify_vspace(v, full);
  add_axiom_report(
      r, "", rep,
      [&](const Witness& w) {
        std::string t;
        for (std::size_t i = 0; i < w.tuple.size(); ++i) t += (i ? " " : "") + std::to_string(w.tuple[i]);
        return witness_line(w.axiom, "#" + t, w.note);
      },
      [&](const Witness& w) { return recheck(v, w, full); });
  r.verdict = rep.verdict;
  if (want_dim) {
    try {
      const DimensionResult d = dimension(v, g.budget);
      r.add("dimension", std::to_string(d.dimension));
      r.add("bundle_bound", std::to_string(g.budget.bundle_bound));
      r.add("basis", v.describe([&] {
        ElemSet b;
        for (Elem x : d.basis) b.insert(x);
        return b;
      }()));
      r.add("dimension_bound_checked", yes_no(d.bound_checked));
      r.add("dimension_bound_holds", yes_no(d.bound_holds));
    } catch (const Error& e) {
      r.add("dimension", "refused");
      r.add("reason", e.what());
      if (r.verdict == Verdict::pass) r.verdict = Verdict::inconclusive;
    }
  }
  return r;
}

std::string golden_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / (name + ".txt")).string();
}

Report cmd_reproduce(const std::string& name, const std::string& dir, bool write) {
  if (name == "list") {
    Report r;
    for (const auto& n : reproduce_names()) r.add("example", n);
    return r;
  }
  Report r = reproduce(name);
  const std::string body = r.render();
  const std::string path = golden_path(dir, name);
  if (write) {
    std::ofstream(path, std::ios::binary) << body;
    r.add("golden", "written");
    return r;
  }
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    r.add("golden", "missing");
    r.verdict = Verdict::inconclusive;
    return r;
  }
  const std::string stored = read_file(path);
  if (stored == body) {
    r.add("golden", "match");
  } else {
    r.add("golden", "mismatch");
    r.verdict = Verdict::fail;
  }
  return r;
}

}  // namespace

std::vector<std::string> reproduce_names() {
  return {"x2-add-AB",      "x2-matmul-AB",   "x2-matmul-AC",       "x2-nonassoc",
          "det-properties", "h2-h3-morphism", "k-q2-morphism", "basis5-2x3"};
}

Report reproduce(const std::string& name) {
  if (name.starts_with("x2-")) {
    const auto names = reproduce_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
      throw Error("unknown example: " + name);
    return reproduce_x2(name);
  }
  if (name == "det-properties") return reproduce_det();
  if (name == "h2-h3-morphism" || name == "k-q2-morphism") return reproduce_morphism(name);
  if (name == "basis5-2x3") return reproduce_basis5();
  throw Error("unknown example: " + name + " (try: reproduce list)");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite multivalued linear algebra: structures, polynomials, matrices, "
               "linear systems, extensions and vector spaces.\n"
               "Structures are builtin names (K, Q2, Hp(p), Xn(n), Fp(p), Zn(n), Trop) or "
               "structure files. Matrices and systems are files or inline text with ';' "
               "for newlines.\n"
               "Exit codes: 0 pass, 1 fail, 2 inconclusive, 3 bad usage or input.",
               "mvla"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  std::string window = "-5,5";
  app.add_option("--set-cap", g.budget.set_cap, "Largest materialised set (env MVLA_SET_CAP)")
      ->capture_default_str();
  app.add_option("--node-cap", g.budget.node_cap, "Search node limit (env MVLA_NODE_CAP)")
      ->capture_default_str();
  app.add_option("--bundle-bound", g.budget.bundle_bound,
                 "Coefficient bundle length for spans and independence (env MVLA_BUNDLE_BOUND)")
      ->capture_default_str();
  app.add_option("--window", window, "lo,hi window for lazy structures")->capture_default_str();

  std::function<Report()> action;
  std::string s1, s2, s3, s4, kind, space = "coord", modulus, dir = MVLA_GOLDEN_DIR;
  std::vector<std::string> pairs;
  bool flag = false, write = false, want_dim = false;
  std::size_t rows = 0, cols = 0, samples = 0, n = 2, bound = 0;
  std::uint64_t seed = 1;

  auto* verify = app.add_subcommand("verify", "Check the axioms of a kind");
  verify->add_option("structure", s1)->required();
  verify->add_option("--kind", kind, "multigroup, multiring, hyperring, multifield, hyperfield, "
                                     "superring, superdomain, quasi_superfield, superfield")
      ->required();
  verify->callback([&] { action = [&] { return cmd_verify(g, s1, kind); }; });

  auto* morph = app.add_subcommand("morphism", "Check a map between structures");
  morph->add_option("source", s1)->required();
  morph->add_option("target", s2)->required();
  morph->add_option("--map", pairs, "a:b pairs; default sends equal tokens to each other");
  morph->add_flag("--full", flag, "Also require setwise equality");
  morph->callback([&] { action = [&] { return cmd_morphism(g, s1, s2, pairs, flag); }; });

  auto* detc = app.add_subcommand("det", "Determinant of a matrix or matrix set");
  detc->add_option("structure", s1)->required();
  detc->add_option("matrix", s2)->required();
  detc->callback([&] { action = [&] { return cmd_det(g, s1, s2); }; });

  auto* mm = app.add_subcommand("matmul", "Product (or with --add, sum) of two matrices");
  mm->add_option("structure", s1)->required();
  mm->add_option("a", s2)->required();
  mm->add_option("b", s3)->required();
  mm->add_flag("--add", flag, "Entrywise sum instead");
  mm->callback([&] { action = [&] { return cmd_matmul(g, s1, s2, s3, flag); }; });

  auto* dm = app.add_subcommand("divmod", "Pairs (q, r) with f in qg + r");
  dm->add_option("structure", s1)->required();
  dm->add_option("f", s2, "Coefficients from the constant term, e.g. 1,0,1")->required();
  dm->add_option("g", s3)->required();
  dm->add_flag("--all", flag, "Every pair, not just the first");
  dm->callback([&] { action = [&] { return cmd_divmod(g, s1, s2, s3, flag); }; });

  auto* ev = app.add_subcommand("eval", "Evaluate a polynomial");
  ev->add_option("structure", s1)->required();
  ev->add_option("f", s2)->required();
  ev->add_option("alpha", s3)->required();
  ev->add_option("--in", s4, "Ambient structure containing the coefficients by token");
  ev->callback([&] { action = [&] { return cmd_eval(g, s1, s2, s3, s4); }; });

  auto* irr = app.add_subcommand("irreducible", "Irreducibility of a polynomial");
  irr->add_option("structure", s1)->required();
  irr->add_option("f", s2)->required();
  irr->callback([&] { action = [&] { return cmd_irreducible(g, s1, s2); }; });

  auto* sol = app.add_subcommand("solve", "Weak solution of Ax ⊆ B");
  sol->add_option("structure", s1)->required();
  sol->add_option("system", s2)->required();
  sol->add_flag("--enumerate-free", flag, "Try every value of pivot-free unknowns");
  sol->callback([&] { action = [&] { return cmd_solve(g, s1, s2, flag); }; });

  auto* ker = app.add_subcommand("kernel", "Nontrivial weak solution of Ax = 0");
  ker->add_option("structure", s1)->required();
  ker->add_option("matrix", s2)->required();
  ker->callback([&] { action = [&] { return cmd_kernel(g, s1, s2); }; });

  auto* cl = app.add_subcommand("closed", "Linear closedness at one shape");
  cl->add_option("structure", s1)->required();
  cl->add_option("--rows", rows)->required();
  cl->add_option("--cols", cols)->required();
  cl->add_option("--samples", samples, "Random matrices instead of all of them");
  cl->add_option("--seed", seed)->capture_default_str();
  cl->callback([&] { action = [&] { return cmd_closed(g, s1, rows, cols, samples, seed); }; });

  auto* qu = app.add_subcommand("quotient", "Ideal generated by elements and the quotient");
  qu->add_option("structure", s1)->required();
  qu->add_option("generators", s2, "Element tokens, e.g. \"{2}\"")->required();
  qu->callback([&] { action = [&] { return cmd_quotient(g, s1, s2); }; });

  auto* ex = app.add_subcommand("extension", "F[X]/<p> for irreducible p");
  ex->add_option("structure", s1)->required();
  ex->add_option("p", s2)->required();
  ex->add_option("--bound", bound, "Certificate degree bound (default deg p)");
  ex->callback([&] { action = [&] { return cmd_extension(g, s1, s2, bound); }; });

  auto* vs = app.add_subcommand("vspace", "Vector space axioms and dimension");
  vs->add_option("structure", s1)->required();
  vs->add_option("--space", space, "coord, matrix, poly or ext")->capture_default_str();
  vs->add_option("--n", n, "Coordinates, matrix rows, or polynomial degree bound")
      ->capture_default_str();
  vs->add_option("--cols", cols, "Matrix columns (default n)");
  vs->add_option("--modulus", modulus, "Polynomial p for --space ext");
  vs->add_flag("--full", flag, "Require equality in MV2 and MV3");
  vs->add_flag("--dimension", want_dim, "Also compute the dimension");
  vs->callback([&] {
    action = [&] { return cmd_vspace(g, s1, space, n, cols, modulus, flag, want_dim); };
  });

  auto* rep = app.add_subcommand("reproduce", "Replay a named example against its golden");
  rep->add_option("name", s1, "Example name, or list")->required();
  rep->add_option("--goldens", dir, "Golden directory")->capture_default_str();
  rep->add_flag("--write", write, "Overwrite the golden with the current output");
  rep->callback([&] { action = [&] { return cmd_reproduce(s1, dir, write); }; });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_pass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_pass;
  } catch (const CLI::ParseError& e) {
    err << "mvla: " << e.what() << "\n";
    return exit_usage;
  }

  try {
    const auto comma = window.find(',');
    if (comma == std::string::npos) throw Error("--window takes lo,hi");
    g.window = {std::stol(window.substr(0, comma)), std::stol(window.substr(comma + 1))};
    const Report r = action();
    out << r.render();
    err << "mvla: " << to_string(r.verdict) << "\n";
    return r.exit_code();
  } catch (const BlowupError& e) {
    out << "verdict=inconclusive\nreason=" << e.what() << "\n";
    err << "mvla: over budget: " << e.what() << "\n";
    return exit_inconclusive;
  } catch (const std::exception& e) {
    err << "mvla: " << e.what() << "\n";
    return exit_usage;
  }
}

}  // namespace mvla
