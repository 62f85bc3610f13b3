#pragma once

#include <cstddef>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace mvla {

// Bad input or a precondition that does not hold for the given arguments.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& msg)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// An enumeration would exceed the configured size cap.
class BlowupError : public Error {
 public:
  using Error::Error;
};

// Search limits. Everything that enumerates takes one of these.
struct Budget {
  std::size_t set_cap = 1'000'000;   // members materialised by one set op
  std::size_t node_cap = 100'000;    // search nodes for solvers
  int bundle_bound = 2;              // coefficient bundle length in spans
  std::size_t det_cap = 6;           // largest n for permutation expansion

  // Defaults overridden by MVLA_SET_CAP, MVLA_NODE_CAP, MVLA_BUNDLE_BOUND.
  static Budget from_env() {
    Budget b;
    if (const char* v = std::getenv("MVLA_SET_CAP")) b.set_cap = std::stoull(v);
    if (const char* v = std::getenv("MVLA_NODE_CAP")) b.node_cap = std::stoull(v);
    if (const char* v = std::getenv("MVLA_BUNDLE_BOUND")) b.bundle_bound = std::stoi(v);
    return b;
  }
};

}  // namespace mvla
