/* Copyright 2026 The aaw Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Condition corpora, suites and the suite runner.

#ifndef AAW_SUITE_HPP
#define AAW_SUITE_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "aaw/analysis.hpp"
#include "aaw/builtin_corpus.hpp"
#include "aaw/eval.hpp"
#include "aaw/format.hpp"
#include "aaw/lnp.hpp"
#include "aaw/model.hpp"
#include "aaw/oracle.hpp"
#include "aaw/parser.hpp"
#include "aaw/syntax.hpp"

namespace aaw {

struct Horizons {
  std::uint64_t horizon = 0;
  std::uint64_t closure = 0;

  friend bool operator==(const Horizons&, const Horizons&) = default;
};

struct CorpusFormula {
  std::string label;
  Formula formula;
  std::string var;
};

struct SuiteEntry {
  enum class Kind { Condition, Integral, Property };
  Kind kind = Kind::Condition;
  std::string label;
  Condition condition;   // Condition
  Formula formula;       // Integral
  std::string property;  // Property
  std::optional<Horizons> standard;
  std::optional<Horizons> powermean;

  std::optional<Horizons> override_for(const Model& m) const {
    return m.is_standard() ? standard : powermean;
  }
};

struct Suite {
  std::string name;
  bool standard_models = true;
  bool powermean_models = true;
  Horizons standard{10, 8};
  Horizons powermean{8, 6};
  std::vector<SuiteEntry> entries;

  bool applies(const Model& m) const { return m.is_standard() ? standard_models : powermean_models; }
  const Horizons& defaults_for(const Model& m) const { return m.is_standard() ? standard : powermean; }

  const SuiteEntry* find(const std::string& label) const {
    for (const auto& e : entries)
      if (e.label == label) return &e;
    return nullptr;
  }
};

struct Corpus {
  Definitions definitions;
  std::vector<CorpusFormula> formulas;
  std::vector<Suite> suites;

  const Suite* find(const std::string& name) const {
    for (const auto& s : suites)
      if (s.name == name) return &s;
    return nullptr;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

class CorpusParser {
 public:
  explicit CorpusParser(std::string_view text) {
    std::string line;
    std::istringstream in{std::string(text)};
    while (std::getline(in, line)) lines_.push_back(line);
  }

  Corpus parse() {
    while (pos_ < lines_.size()) {
      const std::string line = trim(lines_[pos_]);
      if (line.empty() || line[0] == '%') {
        ++pos_;
        continue;
      }
      const std::size_t at = pos_;
      if (line[0] == '#') {
        condition(at, trim(line.substr(1)));
      } else if (line[0] == '@') {
        directive(at, line);
      } else {
        fail(at, 1, "expected '#', '@' or '%' at the start of a stanza");
      }
    }
    return std::move(corpus_);
  }

 private:
  [[noreturn]] void fail(std::size_t line, std::size_t column, const std::string& msg) const {
    throw ParseError("corpus: " + msg, line + 1, column);
  }

  // Text of the stanza body after the header line, with the line of its start.
  std::pair<std::string, std::size_t> body() {
    ++pos_;
    const std::size_t start = pos_;
    std::string text;
    while (pos_ < lines_.size()) {
      const std::string t = trim(lines_[pos_]);
      if (t.empty() || t[0] == '#' || t[0] == '@') break;
      if (pos_ != start) text += '\n';
      if (t[0] != '%') text += lines_[pos_];
      ++pos_;
    }
    if (trim(text).empty()) fail(start - 1, 1, "stanza has no body");
    return {text, start};
  }

  template <class F>
  auto parse_at(std::size_t start, F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const ParseError& e) {
      std::string msg = e.what();
      const auto cut = msg.rfind(" at line ");
      if (cut != std::string::npos) msg.resize(cut);
      throw ParseError(msg, start + e.line(), e.column());
    }
  }

  // Entries before the first @suite belong to an implicit suite "corpus".
  Suite& suite(std::size_t) {
    if (corpus_.suites.empty()) {
      Suite s;
      s.name = "corpus";
      corpus_.suites.push_back(std::move(s));
    }
    return corpus_.suites.back();
  }

  void add(std::size_t at, SuiteEntry e) {
    Suite& s = suite(at);
    if (s.find(e.label)) fail(at, 1, "duplicate label '" + e.label + "' in suite " + s.name);
    s.entries.push_back(std::move(e));
  }

  static std::uint64_t number(const std::string& s) {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  }

  Horizons horizons(std::size_t at, const std::string& text) {
    const auto parts = split_list(text);
    if (parts.size() != 2) fail(at, 1, "expected 'h,c' in a horizon override");
    try {
      return {number(trim(parts[0])), number(trim(parts[1]))};
    } catch (const std::exception&) {
      fail(at, 1, "malformed horizon override '" + text + "'");
    }
  }

  void condition(std::size_t at, std::string header) {
    SuiteEntry e;
    if (const auto open = header.find('['); open != std::string::npos) {
      const auto close = header.find(']', open);
      if (close == std::string::npos) fail(at, open + 1, "unterminated '['");
      const std::string inside = header.substr(open + 1, close - open - 1);
      header = trim(header.substr(0, open));
      const auto bar = inside.find('|');
      if (bar == std::string::npos) {
        e.standard = e.powermean = horizons(at, inside);
      } else {
        e.standard = horizons(at, inside.substr(0, bar));
        e.powermean = horizons(at, inside.substr(bar + 1));
      }
    }
    if (header.empty()) fail(at, 1, "condition without a label");
    e.label = header;
    const auto [text, start] = body();
    const auto [c, rel] =
        parse_at(start, [&] { return parse_statement(text, &corpus_.definitions); });
    if (rel == Relation::Eq) {
      SuiteEntry ge = e;
      e.label += " [<=]";
      e.condition = c;
      ge.label += " [>=]";
      ge.condition = Condition{c.rhs, c.lhs};
      add(at, std::move(e));
      add(at, std::move(ge));
      return;
    }
    e.condition = rel == Relation::Ge ? Condition{c.rhs, c.lhs} : c;
    add(at, std::move(e));
  }

  static std::map<std::string, std::string> options(const std::vector<std::string>& words,
                                                    std::size_t from) {
    std::map<std::string, std::string> out;
    for (std::size_t i = from; i < words.size(); ++i) {
      const auto eq = words[i].find('=');
      if (eq == std::string::npos) continue;
      out[words[i].substr(0, eq)] = words[i].substr(eq + 1);
    }
    return out;
  }

  // Words before the first key=value option, joined by spaces.
  static std::string label_words(const std::vector<std::string>& words, std::size_t from) {
    std::string label;
    for (std::size_t i = from; i < words.size() && words[i].find('=') == std::string::npos; ++i) {
      if (!label.empty()) label += ' ';
      label += words[i];
    }
    return label;
  }

  void directive(std::size_t at, const std::string& line) {
    const auto words = split_ws(line);
    const std::string& d = words[0];
    if (d == "@define") {
      const std::string rest = trim(line.substr(d.size()));
      auto [name, def] =
          parse_at(at, [&] { return parse_definition(rest, &corpus_.definitions); });
      corpus_.definitions[name] = std::move(def);
      ++pos_;
    } else if (d == "@formula") {
      const std::string label = label_words(words, 1);
      const auto opts = options(words, 1);
      if (label.empty()) fail(at, 1, "@formula needs a label");
      const auto it = opts.find("var");
      if (it == opts.end()) fail(at, 1, "@formula needs var=<name>");
      for (const auto& f : corpus_.formulas)
        if (f.label == label) fail(at, 1, "duplicate formula label '" + label + "'");
      const auto [text, start] = body();
      const Formula f = parse_at(start, [&] { return parse_formula(text, &corpus_.definitions); });
      const auto free = free_variables(f);
      if (std::find(free.begin(), free.end(), it->second) == free.end()) {
        fail(at, 1, "'" + it->second + "' is not free in formula " + label);
      }
      corpus_.formulas.push_back({label, f, it->second});
    } else if (d == "@suite") {
      if (words.size() < 2) fail(at, 1, "@suite needs a name");
      if (corpus_.find(words[1])) fail(at, 1, "duplicate suite '" + words[1] + "'");
      Suite s;
      s.name = words[1];
      const auto opts = options(words, 2);
      if (const auto it = opts.find("models"); it != opts.end()) {
        s.standard_models = s.powermean_models = false;
        for (const auto& k : split_list(it->second)) {
          if (k == "standard") {
            s.standard_models = true;
          } else if (k == "powermean") {
            s.powermean_models = true;
          } else {
            fail(at, 1, "unknown model kind '" + k + "'");
          }
        }
      }
      corpus_.suites.push_back(std::move(s));
      ++pos_;
    } else if (d == "@horizons") {
      if (words.size() != 4) fail(at, 1, "expected '@horizons standard|powermean H C'");
      Horizons h;
      try {
        h = {number(words[2]), number(words[3])};
      } catch (const std::exception&) {
        fail(at, 1, "malformed horizons");
      }
      if (words[1] == "standard") {
        suite(at).standard = h;
      } else if (words[1] == "powermean") {
        suite(at).powermean = h;
      } else {
        fail(at, 1, "unknown model kind '" + words[1] + "'");
      }
      ++pos_;
    } else if (d == "@generate") {
      if (words.size() != 2) fail(at, 1, "expected '@generate induction|lnp|integral'");
      generate(at, words[1]);
      ++pos_;
    } else if (d == "@collection") {
      collection(at, words);
    } else if (d == "@property") {
      if (words.size() != 2) fail(at, 1, "expected '@property name'");
      if (words[1] != "linear-order") fail(at, 1, "unknown property '" + words[1] + "'");
      SuiteEntry e;
      e.kind = SuiteEntry::Kind::Property;
      e.label = words[1];
      e.property = words[1];
      add(at, std::move(e));
      ++pos_;
    } else {
      fail(at, 1, "unknown directive '" + d + "'");
    }
  }

  void generate(std::size_t at, const std::string& what) {
    for (const auto& cf : corpus_.formulas) {
      if (what == "induction") {
        SuiteEntry a11;
        a11.label = "A11 " + cf.label;
        a11.condition = make_induction_condition(cf.formula, cf.var, InductionScheme::Successor);
        add(at, std::move(a11));
        SuiteEntry a12;
        a12.label = "A12 " + cf.label;
        a12.condition = make_induction_condition(cf.formula, cf.var, InductionScheme::Weak);
        add(at, std::move(a12));
      } else if (what == "lnp") {
        SuiteEntry exists;
        exists.label = "lnp " + cf.label;
        exists.condition = make_lnp_condition(cf.formula, cf.var);
        add(at, std::move(exists));
        SuiteEntry unique;
        unique.label = "lnp unique " + cf.label;
        unique.condition = make_lnp_uniqueness_condition(cf.formula, cf.var);
        add(at, std::move(unique));
      } else if (what == "integral") {
        SuiteEntry e;
        e.kind = SuiteEntry::Kind::Integral;
        e.label = "integral " + cf.label;
        e.formula = cf.formula;
        add(at, std::move(e));
      } else {
        fail(at, 1, "unknown generator '" + what + "'");
      }
    }
  }

  void collection(std::size_t at, const std::vector<std::string>& words) {
    const std::string label = label_words(words, 1);
    const auto opts = options(words, 1);
    if (label.empty()) fail(at, 1, "@collection needs a label");
    for (const char* key : {"x", "ys", "t"})
      if (!opts.count(key)) fail(at, 1, std::string("@collection needs ") + key + "=");
    const std::string x = opts.at("x");
    const auto ys = split_list(opts.at("ys"));
    const Term t = parse_at(at, [&] { return parse_term(opts.at("t")); });
    const auto [text, start] = body();
    const Formula f = parse_at(start, [&] { return parse_formula(text, &corpus_.definitions); });
    const auto [le, ge] = make_collection_condition(f, x, ys, t);
    SuiteEntry a;
    a.label = label + " [<=]";
    a.condition = le;
    add(at, std::move(a));
    SuiteEntry b;
    b.label = label + " [>=]";
    b.condition = ge;
    add(at, std::move(b));
  }

  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
  Corpus corpus_;
};

}  // namespace detail

inline Corpus parse_corpus(std::string_view text) { return detail::CorpusParser(text).parse(); }

inline const Corpus& builtin_corpus() {
  static const Corpus c = parse_corpus(builtin_corpus_text());
  return c;
}

inline const std::vector<Suite>& builtin_suites() { return builtin_corpus().suites; }

inline const std::vector<CorpusFormula>& formula_corpus() { return builtin_corpus().formulas; }

//------------------------------------------------------------------------------
// Running suites

struct SuiteOptions {
  std::optional<std::uint64_t> horizon;
  std::optional<std::uint64_t> closure_horizon;
  CheckOptions check;
};

struct SuiteReport {
  std::string suite;
  Model model = Model::standard();
  std::vector<CheckReport> reports;

  bool pass() const {
    for (const auto& r : reports)
      if (!r.pass()) return false;
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json rs = nlohmann::json::array();
    for (const auto& r : reports) rs.push_back(r.to_json());
    return {{"suite", suite}, {"model", model.to_json()}, {"pass", pass()}, {"reports", rs}};
  }
};

namespace detail {

// Largest |fast path - product oracle| over closure environments.
inline CheckReport check_integral(const SuiteEntry& e, const Model& m, const Horizons& h,
                                  const CheckOptions& opts) {
  CheckReport r;
  r.label = e.label;
  r.description = "eval(" + format(e.formula) + ") = oracle";
  r.condition = Condition{e.formula, e.formula};
  r.model = m;
  r.horizon = h.horizon;
  r.closure_horizon = h.closure;
  const auto vars = free_variables(e.formula);
  const CoordinateEvaluator fast(e.formula, m, vars, h.horizon, opts.frontier_cap);
  const ProductOracle oracle(m, h.horizon, OracleOptions{opts.frontier_cap, true});
  const Condition c = r.condition;
  return check_tuples(c, m, h.closure, opts, std::move(r),
                      [&](const std::vector<Element>& args) {
                        Environment env;
                        for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = args[i];
                        return Rational(abs(fast.value(args) - oracle.eval(e.formula, env)));
                      });
}

// Linear order, no element strictly between 0 and 1, and every element 0 or
// normal: all three hold or none does.
inline CheckReport check_linear_order(const SuiteEntry& e, const Model& m, const Horizons& h,
                                      const CheckOptions& opts) {
  CheckReport r;
  r.label = e.label;
  r.model = m;
  r.horizon = h.horizon;
  r.closure_horizon = h.closure;
  const auto frontier = m.enumerate(h.closure, opts.frontier_cap);
  r.points_checked = Natural(frontier.size()) * frontier.size();
  bool linear = true, gap = true, dichotomy = true;
  for (const auto& x : frontier) {
    if (x != m.zero() && x != m.one() && m.leq(x, m.one())) gap = false;
    if (x != m.zero() && m.norm(x) != 1) dichotomy = false;
    for (const auto& y : frontier)
      if (!m.leq(x, y) && !m.leq(y, x)) linear = false;
  }
  r.description = std::string("linear=") + (linear ? "true" : "false") +
                  " no-element-in-(0,1)=" + (gap ? "true" : "false") +
                  " zero-or-normal=" + (dichotomy ? "true" : "false");
  r.max_violation = (linear == gap && gap == dichotomy) ? 0 : 1;
  if (r.max_violation != 0) r.witness = Environment{};
  return r;
}

}  // namespace detail

inline Horizons effective_horizons(const Suite& s, const SuiteEntry& e, const Model& m,
                                   const SuiteOptions& opts) {
  Horizons h = e.override_for(m).value_or(s.defaults_for(m));
  if (opts.horizon) h.horizon = *opts.horizon;
  if (opts.closure_horizon) h.closure = *opts.closure_horizon;
  return h;
}

inline CheckReport run_entry(const Suite& s, const SuiteEntry& e, const Model& m,
                             const SuiteOptions& opts = {}) {
  const Horizons h = effective_horizons(s, e, m, opts);
  switch (e.kind) {
    case SuiteEntry::Kind::Integral:
      return detail::check_integral(e, m, h, opts.check);
    case SuiteEntry::Kind::Property:
      return detail::check_linear_order(e, m, h, opts.check);
    case SuiteEntry::Kind::Condition:
      break;
  }
  CheckReport r = check_condition(e.condition, m, h.horizon, h.closure, opts.check);
  r.label = e.label;
  return r;
}

inline SuiteReport run_suite(const Suite& s, const Model& m, const SuiteOptions& opts = {}) {
  if (!s.applies(m)) throw DomainError("suite " + s.name + " does not apply to model " + m.name());
  SuiteReport report;
  report.suite = s.name;
  report.model = m;
  for (const auto& e : s.entries) report.reports.push_back(run_entry(s, e, m, opts));
  return report;
}

inline SuiteReport run_suite(const std::string& name, const Model& m, const SuiteOptions& opts = {},
                             const Corpus& corpus = builtin_corpus()) {
  const Suite* s = corpus.find(name);
  if (!s) throw DomainError("unknown suite '" + name + "'");
  return run_suite(*s, m, opts);
}

//------------------------------------------------------------------------------
// Extension check: the box {x <= b} inside a powermean

struct ExtensionFinding {
  std::string label;
  HierarchyClass level;
  std::size_t environments = 0;
  std::size_t disagreements = 0;
  std::optional<Environment> first;

  nlohmann::json to_json() const {
    return {{"label", label},
            {"class", level.name()},
            {"environments", environments},
            {"disagreements", disagreements},
            {"first", first ? nlohmann::json(to_string(*first)) : nlohmann::json(nullptr)}};
  }
};

struct ExtensionReport {
  Model model = Model::standard();
  std::uint64_t bound = 0;
  std::uint64_t horizon = 0;
  bool downward_closed = true;
  std::vector<ExtensionFinding> bounded;    // must agree
  std::vector<ExtensionFinding> unbounded;  // informational

  bool pass() const {
    if (!downward_closed) return false;
    for (const auto& f : bounded)
      if (f.disagreements != 0) return false;
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json b = nlohmann::json::array(), u = nlohmann::json::array();
    for (const auto& f : bounded) b.push_back(f.to_json());
    for (const auto& f : unbounded) u.push_back(f.to_json());
    return {{"model", model.to_json()},  {"bound", bound},     {"horizon", horizon},
            {"downward_closed", downward_closed}, {"bounded", b}, {"unbounded", u},
            {"pass", pass()}};
  }
};

// Inner quantifiers range below their bounding terms (bounded enumeration);
// outer quantifiers range over the whole frontier up to the horizon.
inline ExtensionReport extension_check(const Model& m, std::uint64_t bound, std::uint64_t horizon,
                                       const std::vector<CorpusFormula>& formulas = formula_corpus(),
                                       std::uint64_t cap = kDefaultFrontierCap) {
  if (bound > horizon) {
    throw DomainError("bound " + std::to_string(bound) + " exceeds the horizon " +
                      std::to_string(horizon));
  }
  ExtensionReport rep;
  rep.model = m;
  rep.bound = bound;
  rep.horizon = horizon;
  const Element top = m.constant(bound);
  const auto inner = m.box(top, cap);
  for (const auto& y : m.enumerate(horizon, cap)) {
    if (m.leq(y, top)) continue;
    for (const auto& x : inner) {
      if (m.leq(y, x)) {
        rep.downward_closed = false;
        break;
      }
    }
  }

  const ProductOracle restricted(m, bound, OracleOptions{cap, true});
  const ProductOracle full(m, horizon, OracleOptions{cap, false});
  for (const auto& cf : formulas) {
    ExtensionFinding f;
    f.label = cf.label;
    f.level = classify(cf.formula);
    const auto vars = free_variables(cf.formula);
    std::vector<std::size_t> digits(vars.size(), 0);
    if (Natural(inner.size()) > 0 && detail::power(Natural(inner.size()), vars.size()) > cap) {
      throw ResourceError("extension environments exceed the cap");
    }
    do {
      Environment env;
      for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = inner[digits[i]];
      ++f.environments;
      if (restricted.eval(cf.formula, env) != full.eval(cf.formula, env)) {
        if (!f.first) f.first = env;
        ++f.disagreements;
      }
    } while (detail::advance(digits, inner.size()));
    (f.level.level == 0 ? rep.bounded : rep.unbounded).push_back(std::move(f));
  }
  return rep;
}

}  // namespace aaw

#endif  // AAW_SUITE_HPP
