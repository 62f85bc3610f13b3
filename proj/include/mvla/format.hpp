#pragma once

// Text format for finite structures.
//
//   structure NAME
//   elements e1 ... ek
//   zero e
//   one e
//   neg a -> b            one line per element
//   symmetric [sum|prod]  optional: later (a,b) lines also define (b,a)
//   sum a b -> c1 c2 ...  one line per ordered pair
//   prod a b -> c1 ...
//   end
//
// '#' starts a comment. Missing pairs, empty results and unknown tokens
// are errors that carry the line number.

#include <string>
#include <string_view>

#include "mvla/structure.hpp"

namespace mvla {

StructurePtr parse_structure(std::string_view text);
StructurePtr load_structure(const std::string& path);

// Canonical form: blocks in carrier order, results sorted. Parsing the
// output gives back identical tables.
std::string serialize(const Structure& s);

// A builtin name (see builtin()) or a path to a structure file.
StructurePtr resolve_structure(const std::string& ref);

// Whitespace tokenizer used by the other text formats. Strips '#'
// comments.
std::vector<std::string> split_words(std::string_view line);
std::string read_file(const std::string& path);

}  // namespace mvla
