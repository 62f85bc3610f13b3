#include "mvla/format.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "mvla/builtins.hpp"

namespace mvla {

std::vector<std::string> split_words(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace {

struct Cell {
  ElemSet value;
  std::size_t line = 0;
  bool explicit_ = false;
  bool set = false;
};

class Parser {
 public:
  StructurePtr run(std::string_view text) {
    std::size_t lineno = 0;
    std::size_t pos = 0;
    bool ended = false;
    while (pos <= text.size()) {
      auto nl = text.find('\n', pos);
      std::string_view line =
          text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
      ++lineno;
      auto w = split_words(line);
      if (w.empty()) continue;
      if (ended) throw ParseError(lineno, "content after 'end'");
      if (w[0] == "end") {
        expect(w.size() == 1, lineno, "'end' takes no arguments");
        end_line_ = lineno;
        ended = true;
        continue;
      }
      directive(w, lineno);
    }
    if (!ended) throw ParseError(lineno, "missing 'end'");
    return build();
  }

 private:
  static void expect(bool ok, std::size_t line, const std::string& msg) {
    if (!ok) throw ParseError(line, msg);
  }

  Elem lookup(const std::string& tok, std::size_t line) const {
    auto it = index_.find(tok);
    if (it == index_.end()) throw ParseError(line, "unknown element '" + tok + "'");
    return it->second;
  }

  void directive(const std::vector<std::string>& w, std::size_t line) {
    const std::string& d = w[0];
    if (d == "structure") {
      expect(w.size() == 2, line, "expected 'structure NAME'");
      expect(name_.empty(), line, "duplicate 'structure'");
      name_ = w[1];
      return;
    }
    expect(!name_.empty(), line, "file must start with 'structure NAME'");
    if (d == "elements") {
      expect(tokens_.empty(), line, "duplicate 'elements'");
      expect(w.size() >= 2, line, "'elements' needs at least one element");
      expect(w.size() - 1 <= kMaxCarrier, line, "too many elements");
      for (std::size_t i = 1; i < w.size(); ++i) {
        expect(index_.emplace(w[i], static_cast<Elem>(i - 1)).second, line,
               "duplicate element '" + w[i] + "'");
        tokens_.push_back(w[i]);
      }
      const std::size_t n = tokens_.size();
      sum_.assign(n * n, {});
      prod_.assign(n * n, {});
      neg_.assign(n, std::nullopt);
      return;
    }
    expect(!tokens_.empty(), line, "'elements' must come before '" + d + "'");
    if (d == "zero" || d == "one") {
      expect(w.size() == 2, line, "expected '" + d + " ELEMENT'");
      auto& slot = d == "zero" ? zero_ : one_;
      expect(!slot, line, "duplicate '" + d + "'");
      slot = lookup(w[1], line);
    } else if (d == "neg") {
      expect(w.size() == 4 && w[2] == "->", line, "expected 'neg a -> b'");
      Elem a = lookup(w[1], line);
      expect(!neg_[a], line, "duplicate 'neg " + w[1] + "'");
      neg_[a] = lookup(w[3], line);
    } else if (d == "symmetric") {
      expect(w.size() <= 2, line, "expected 'symmetric [sum|prod]'");
      if (w.size() == 1) {
        sym_sum_ = sym_prod_ = true;
      } else {
        expect(w[1] == "sum" || w[1] == "prod", line, "expected 'symmetric [sum|prod]'");
        (w[1] == "sum" ? sym_sum_ : sym_prod_) = true;
      }
    } else if (d == "sum" || d == "prod") {
      expect(w.size() >= 4 && w[3] == "->", line, "expected '" + d + " a b -> c ...'");
      expect(w.size() >= 5, line, "empty result for " + d + " " + w[1] + " " + w[2]);
      Elem a = lookup(w[1], line), b = lookup(w[2], line);
      ElemSet r;
      for (std::size_t i = 4; i < w.size(); ++i) r.insert(lookup(w[i], line));
      auto& table = d == "sum" ? sum_ : prod_;
      place(table, a, b, r, line, true, d);
      if (d == "sum" ? sym_sum_ : sym_prod_) place(table, b, a, r, line, false, d);
    } else {
      throw ParseError(line, "unknown directive '" + d + "'");
    }
  }

  void place(std::vector<Cell>& table, Elem a, Elem b, const ElemSet& r, std::size_t line,
             bool explicit_, const std::string& op) {
    Cell& c = table[a * tokens_.size() + b];
    const std::string pair = op + " " + tokens_[a] + " " + tokens_[b];
    if (c.set) {
      if (c.explicit_ && explicit_) throw ParseError(line, "duplicate '" + pair + "'");
      if (c.value != r)
        throw ParseError(line, "'" + pair + "' conflicts with line " + std::to_string(c.line));
      c.explicit_ = c.explicit_ || explicit_;
      return;
    }
    c = Cell{r, line, explicit_, true};
  }

  StructurePtr build() {
    expect(!tokens_.empty(), end_line_, "missing 'elements'");
    expect(zero_.has_value(), end_line_, "missing 'zero'");
    expect(one_.has_value(), end_line_, "missing 'one'");
    const std::size_t n = tokens_.size();
    std::vector<Elem> neg(n);
    for (std::size_t a = 0; a < n; ++a) {
      expect(neg_[a].has_value(), end_line_, "missing 'neg " + tokens_[a] + "'");
      neg[a] = *neg_[a];
    }
    MultiOp sum(n), prod(n);
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        const Cell& s = sum_[a * n + b];
        const Cell& p = prod_[a * n + b];
        expect(s.set, end_line_, "missing 'sum " + tokens_[a] + " " + tokens_[b] + "'");
        expect(p.set, end_line_, "missing 'prod " + tokens_[a] + " " + tokens_[b] + "'");
        sum.set(a, b, s.value);
        prod.set(a, b, p.value);
      }
    return make_structure(name_, tokens_, std::move(sum), std::move(prod), std::move(neg),
                          *zero_, *one_);
  }

  std::string name_;
  std::vector<std::string> tokens_;
  std::map<std::string, Elem> index_;
  std::vector<Cell> sum_, prod_;
  std::vector<std::optional<Elem>> neg_;
  std::optional<Elem> zero_, one_;
  bool sym_sum_ = false, sym_prod_ = false;
  std::size_t end_line_ = 0;
};

}  // namespace

StructurePtr parse_structure(std::string_view text) { return Parser().run(text); }

StructurePtr load_structure(const std::string& path) { return parse_structure(read_file(path)); }

std::string serialize(const Structure& s) {
  if (s.is_lazy()) throw Error(s.name() + " has an infinite carrier and cannot be written");
  if (s.partial()) throw Error(s.name() + " is a truncated window and cannot be written");
  std::ostringstream os;
  const std::size_t n = s.size();
  os << "structure " << s.name() << "\nelements";
  for (const auto& t : s.tokens()) os << ' ' << t;
  os << "\nzero " << s.token(s.zero()) << "\none " << s.token(s.one()) << '\n';
  for (Elem a = 0; a < n; ++a) os << "neg " << s.token(a) << " -> " << s.token(s.neg(a)) << '\n';
  auto block = [&](const char* op, const MultiOp& t) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        os << op << ' ' << s.token(a) << ' ' << s.token(b) << " ->";
        for (Elem c : t(a, b)) os << ' ' << s.token(c);
        os << '\n';
      }
  };
  block("sum", s.sum_table());
  block("prod", s.prod_table());
  os << "end\n";
  return os.str();
}

StructurePtr resolve_structure(const std::string& ref) {
  if (std::filesystem::exists(ref)) return load_structure(ref);
  if (auto s = builtin(ref)) return s;
  throw Error("'" + ref + "' is neither a builtin structure nor a readable file");
}

}  // namespace mvla
