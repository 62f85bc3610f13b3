#pragma once

// Command-line front end. Every verb prints line-oriented key=value text on
// stdout; exit codes are 0 pass, 1 fail, 2 inconclusive, 3 bad usage or
// input.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "mvla/axioms.hpp"

namespace mvla {

enum ExitCode { exit_pass = 0, exit_fail = 1, exit_inconclusive = 2, exit_usage = 3 };

// Ordered key=value lines plus the verdict that picks the exit code.
struct Report {
  std::vector<std::pair<std::string, std::string>> lines;
  Verdict verdict = Verdict::pass;

  void add(std::string key, std::string value) { lines.emplace_back(std::move(key), std::move(value)); }
  std::string render() const;
  int exit_code() const;
};

// Names accepted by `reproduce`, in listing order.
std::vector<std::string> reproduce_names();
// Recomputes a named example. Throws Error on an unknown name.
Report reproduce(const std::string& name);

// argv without the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mvla
