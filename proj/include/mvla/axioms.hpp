#pragma once

// Exhaustive axiom verification with re-checkable counterexamples.

#include <optional>
#include <string>
#include <vector>

#include "mvla/structure.hpp"

namespace mvla {

enum class Kind {
  multigroup,
  multimonoid,
  multiring,
  hyperring,
  multifield,
  hyperfield,
  superring,
  superdomain,
  quasi_superfield,
  superfield,
};

std::string to_string(Kind k);
std::optional<Kind> parse_kind(std::string_view s);

enum class Verdict { pass, fail, pass_on_window, inconclusive };

std::string to_string(Verdict v);

// One failing instance. `tuple` holds the quantified elements followed by
// any detail elements (for example the offending member of a sum).
struct Witness {
  std::string axiom;
  std::vector<Elem> tuple;
  std::string note;
};

struct AxiomReport {
  std::string subject;
  Verdict verdict = Verdict::pass;
  std::vector<Witness> counterexamples;
  std::size_t instances = 0;
  std::size_t skipped = 0;  // window instances touching escaped cells

  bool ok() const { return verdict == Verdict::pass || verdict == Verdict::pass_on_window; }
};

struct Window {
  long lo = -5;
  long hi = 5;
};

// Checks every axiom of `kind` over all tuples. Reports the least failing
// tuple of each failing axiom, in a fixed axiom order.
AxiomReport verify_axioms(const Structure& s, Kind kind);
// For lazy structures: checks the materialised window; the verdict is
// pass_on_window at best.
AxiomReport verify_axioms(const Structure& s, Kind kind, Window w);

// Multigroup axioms for a bare additive table.
AxiomReport verify_multigroup(const MultiGroupTable& g);

// Names of the axioms checked for `kind`, in check order.
std::vector<std::string> axioms_of(Kind kind);

// True iff the witness describes a genuine violation in `s`.
bool recheck(const Structure& s, const Witness& w);
bool recheck(const MultiGroupTable& g, const Witness& w);

// Full: c(a+b) = ca + cb for all a, b, c.
AxiomReport is_full(const Structure& s);
// Proto-full: (ab+ac)d meets a(bd+cd) for all a, b, c, d.
AxiomReport is_proto_full(const Structure& s);

std::string format_witness(const Structure& s, const Witness& w);
std::string format_witness(const MultiGroupTable& g, const Witness& w);

}  // namespace mvla
