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

// aaw: command-line front end for the workbench.
//
// Exit status: 0 on success or pass, 1 on a violated check, 2 on a usage,
// parse, domain or resource error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aaw/aaw.hpp"

namespace {

using aaw::Element;
using aaw::Model;
using nlohmann::json;

constexpr int kPass = 0;
constexpr int kViolation = 1;
constexpr int kError = 2;

struct Globals {
  std::string model = "standard";
  std::optional<std::uint64_t> horizon;
  std::optional<std::uint64_t> closure;
  std::string corpus;
  bool json = false;
};

void emit(const Globals& g, const json& j, const std::string& text) {
  if (g.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text << "\n";
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw aaw::DomainError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Builtin corpus, or the --corpus file.
const aaw::Corpus& corpus(const Globals& g) {
  static std::optional<aaw::Corpus> user;
  if (g.corpus.empty()) return aaw::builtin_corpus();
  if (!user) user = aaw::parse_corpus(read_file(g.corpus));
  return *user;
}

// Formula text, with the corpus macros available.
aaw::Formula formula_arg(const Globals& g, const std::string& text) {
  return aaw::parse_formula(text, &corpus(g).definitions);
}

aaw::Environment env_args(const Model& m, const std::vector<std::string>& items) {
  aaw::Environment env;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw aaw::DomainError("expected name=element, got '" + item + "'");
    }
    env[item.substr(0, eq)] = aaw::parse_element(m, item.substr(eq + 1));
  }
  return env;
}

std::string report_line(const aaw::CheckReport& r) {
  std::string s = (r.pass() ? "PASS " : "FAIL ");
  if (!r.label.empty()) s += r.label + ": ";
  s += r.description.empty() ? aaw::format(r.condition) : r.description;
  s += "  [violation " + aaw::to_string(r.max_violation) + ", horizon " + std::to_string(r.horizon) +
       ", closure " + std::to_string(r.closure_horizon) + ", points " + r.points_checked.str() + "]";
  if (r.witness) s += "  witness " + aaw::to_string(*r.witness);
  return s;
}

//------------------------------------------------------------------------------
// Subcommands

int cmd_parse(const Globals& g, const std::string& text) {
  const aaw::Definitions* defs = &corpus(g).definitions;
  try {
    const aaw::Formula f = aaw::parse_formula(text, defs);
    json free = json::array();
    for (const auto& v : aaw::free_variables(f)) free.push_back(v);
    emit(g, {{"kind", "formula"}, {"text", aaw::format(f)}, {"free", free}}, aaw::format(f));
    return kPass;
  } catch (const aaw::ParseError& as_formula) {
    try {
      const auto [c, rel] = aaw::parse_statement(text, defs);
      const char* op = rel == aaw::Relation::Eq ? " = " : " <= ";
      const std::string t = aaw::format(c.lhs) + op + aaw::format(c.rhs);
      emit(g, {{"kind", "condition"}, {"relation", rel == aaw::Relation::Eq ? "=" : "<="}, {"text", t}},
           t);
      return kPass;
    } catch (const aaw::ParseError& as_statement) {
      // Report whichever reading got further.
      const bool later = std::make_pair(as_statement.line(), as_statement.column()) >=
                         std::make_pair(as_formula.line(), as_formula.column());
      throw later ? as_statement : as_formula;
    }
  }
}

int cmd_eval(const Globals& g, const std::string& text, const std::vector<std::string>& env) {
  const Model m = aaw::parse_model_spec(g.model);
  const aaw::Formula f = formula_arg(g, text);
  const std::uint64_t h = g.horizon.value_or(10);
  const auto r = aaw::eval(f, m, env_args(m, env), h);
  emit(g,
       {{"value", aaw::to_string(r.value)}, {"exhaustive", r.exhaustive}, {"horizon", h},
        {"model", m.to_json()}},
       aaw::to_string(r.value) + (r.exhaustive ? "" : "  (horizon " + std::to_string(h) + ")"));
  return kPass;
}

aaw::CheckStrategy strategy_arg(const std::string& s) {
  if (s == "decomposed") return aaw::CheckStrategy::Decomposed;
  if (s == "enumerate") return aaw::CheckStrategy::Enumerate;
  if (s == "oracle") return aaw::CheckStrategy::Oracle;
  throw aaw::DomainError("unknown strategy '" + s + "'");
}

int cmd_check(const Globals& g, const std::string& text, const std::string& strategy) {
  const Model m = aaw::parse_model_spec(g.model);
  const auto [c, rel] = aaw::parse_statement(text, &corpus(g).definitions);
  std::vector<aaw::Condition> parts{c};
  if (rel == aaw::Relation::Eq) parts.push_back(aaw::Condition{c.rhs, c.lhs});
  const std::uint64_t h = g.horizon.value_or(m.is_standard() ? 10 : 8);
  const std::uint64_t k = g.closure.value_or(m.is_standard() ? 8 : 6);
  aaw::CheckOptions opts;
  opts.strategy = strategy_arg(strategy);

  bool pass = true;
  json reports = json::array();
  std::string text_out;
  for (const auto& part : parts) {
    const auto r = aaw::check_condition(part, m, h, k, opts);
    pass = pass && r.pass();
    reports.push_back(r.to_json());
    if (!text_out.empty()) text_out += "\n";
    text_out += report_line(r);
  }
  emit(g, parts.size() == 1 ? reports[0] : json{{"pass", pass}, {"reports", reports}}, text_out);
  return pass ? kPass : kViolation;
}

int cmd_classify(const Globals& g, const std::string& text) {
  const auto c = aaw::classify(formula_arg(g, text));
  emit(g, c.to_json(), c.name());
  return kPass;
}

int cmd_range(const Globals& g, const std::string& text) {
  const auto r = aaw::value_range(formula_arg(g, text));
  std::string s;
  for (const auto& v : r.values) s += (s.empty() ? "" : " ") + aaw::to_string(v);
  emit(g, r.to_json(), s);
  return kPass;
}

int cmd_alpha(const Globals& g, const std::string& text) {
  const auto a = aaw::induction_constant(formula_arg(g, text));
  emit(g, {{"alpha", aaw::to_string(a)}}, aaw::to_string(a));
  return kPass;
}

int cmd_nt(const Globals& g, const std::string& op, const std::vector<std::string>& args) {
  const Model m = aaw::parse_model_spec(g.model);
  const auto need = [&](std::size_t n) {
    if (args.size() != n) {
      throw CLI::ValidationError("nt " + op, "expects " + std::to_string(n) + " argument(s)");
    }
  };
  const auto el = [&](std::size_t i) { return aaw::parse_element(m, args[i]); };
  const auto str = [](const Element& e) { return aaw::to_string(e); };

  if (op == "divmod") {
    need(2);
    const auto r = aaw::divmod(m, el(0), el(1));
    emit(g, {{"quotient", str(r.quotient)}, {"remainder", str(r.remainder)}},
         "quotient " + str(r.quotient) + " remainder " + str(r.remainder));
  } else if (op == "coprime") {
    need(2);
    const bool c = aaw::is_coprime(m, el(0), el(1));
    emit(g, {{"coprime", c}}, c ? "true" : "false");
  } else if (op == "bezout") {
    need(2);
    const auto z = aaw::bezout(m, el(0), el(1));
    emit(g, {{"z", str(z)}}, str(z));
  } else if (op == "crt") {
    if (args.empty() || args.size() % 2 != 0) {
      throw CLI::ValidationError("nt crt", "expects modulus residue pairs");
    }
    std::vector<Element> moduli, residues;
    for (std::size_t i = 0; i < args.size(); i += 2) {
      moduli.push_back(el(i));
      residues.push_back(el(i + 1));
    }
    const auto x = aaw::crt(m, moduli, residues);
    emit(g, {{"x", str(x)}}, str(x));
  } else if (op == "pair") {
    need(2);
    const auto z = aaw::pair(m, el(0), el(1));
    emit(g, {{"z", str(z)}}, str(z));
  } else if (op == "unpair") {
    need(1);
    const auto [x, y] = aaw::unpair(m, el(0));
    emit(g, {{"x", str(x)}, {"y", str(y)}}, str(x) + " " + str(y));
  } else if (op == "beta") {
    need(2);
    const auto v = aaw::beta(m, el(0), el(1));
    emit(g, {{"value", str(v)}}, str(v));
  } else if (op == "factorial") {
    need(1);
    const auto v = aaw::factorial(m, el(0));
    emit(g, {{"value", str(v)}}, str(v));
  } else if (op == "irred" || op == "prime") {
    need(1);
    const Element p = el(0);
    const auto v = op == "irred" ? aaw::irred_value(m, p, g.horizon) : aaw::prime_value(m, p, g.horizon);
    const auto defect = aaw::primality_defect(m, p);
    emit(g, {{"value", aaw::to_string(v)}, {"classical_defect", aaw::to_string(defect)}},
         aaw::to_string(v));
  } else {
    throw CLI::ValidationError("nt", "unknown operation '" + op + "'");
  }
  return kPass;
}

int cmd_suite(const Globals& g, const std::string& name, const std::vector<std::string>& labels,
              const std::string& strategy, bool list) {
  const aaw::Corpus& c = corpus(g);
  if (list) {
    json j = json::array();
    std::string s;
    for (const auto& suite : c.suites) {
      j.push_back({{"name", suite.name}, {"entries", suite.entries.size()}});
      s += (s.empty() ? "" : "\n") + suite.name + " (" + std::to_string(suite.entries.size()) + ")";
    }
    emit(g, j, s);
    return kPass;
  }
  if (name.empty()) throw CLI::ValidationError("suite", "needs a suite name or --list");
  const Model m = aaw::parse_model_spec(g.model);
  const aaw::Suite* s = c.find(name);
  if (!s) throw aaw::DomainError("unknown suite '" + name + "'");

  aaw::SuiteOptions opts;
  opts.horizon = g.horizon;
  opts.closure_horizon = g.closure;
  opts.check.strategy = strategy_arg(strategy);
  aaw::SuiteReport rep;
  if (labels.empty()) {
    rep = aaw::run_suite(*s, m, opts);
  } else {
    if (!s->applies(m)) throw aaw::DomainError("suite " + name + " does not apply to " + m.name());
    rep.suite = s->name;
    rep.model = m;
    for (const auto& l : labels) {
      const aaw::SuiteEntry* e = s->find(l);
      if (!e) throw aaw::DomainError("no entry '" + l + "' in suite " + name);
      rep.reports.push_back(aaw::run_entry(*s, *e, m, opts));
    }
  }
  std::string text;
  std::size_t failed = 0;
  for (const auto& r : rep.reports) {
    text += report_line(r) + "\n";
    if (!r.pass()) ++failed;
  }
  text += rep.suite + " on " + m.name() + ": " + (rep.pass() ? "pass" : "FAIL") + " (" +
          std::to_string(rep.reports.size() - failed) + "/" + std::to_string(rep.reports.size()) + ")";
  emit(g, rep.to_json(), text);
  return rep.pass() ? kPass : kViolation;
}

int cmd_extension(const Globals& g, std::uint64_t bound) {
  const Model m = aaw::parse_model_spec(g.model);
  const std::uint64_t h = g.horizon.value_or(bound + 2);
  const auto rep = aaw::extension_check(m, bound, h, corpus(g).formulas);
  std::string text = std::string("downward closed: ") + (rep.downward_closed ? "yes" : "NO");
  for (const auto& f : rep.bounded) {
    text += "\n" + std::string(f.disagreements == 0 ? "agree    " : "DISAGREE ") + f.label + " (" +
            f.level.name() + ", " + std::to_string(f.environments) + " environments)";
  }
  for (const auto& f : rep.unbounded) {
    text += "\ninfo     " + f.label + " (" + f.level.name() + "): " + std::to_string(f.disagreements) +
            "/" + std::to_string(f.environments) + " differ";
  }
  emit(g, rep.to_json(), text);
  return rep.pass() ? kPass : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aaw: affine arithmetic workbench"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--model", g.model,
                 "standard, half, k=N, inline JSON, or a JSON file path")
      ->capture_default_str();
  app.add_option("--horizon", g.horizon, "witness horizon for unbounded quantifiers");
  app.add_option("--closure-horizon", g.closure, "range of the universally closed variables");
  app.add_option("--corpus", g.corpus, "corpus file (default: builtin)");
  app.add_flag("--json", g.json, "machine-readable output");

  std::string text, op, name, strategy = "decomposed";
  std::vector<std::string> env, args, labels;
  std::uint64_t bound = 0;
  bool list = false;
  int status = kPass;

  auto* parse = app.add_subcommand("parse", "parse and pretty-print a formula or condition");
  parse->add_option("text", text)->required();
  auto* eval = app.add_subcommand("eval", "evaluate a formula");
  eval->add_option("formula", text)->required();
  eval->add_option("-e,--env", env, "variable assignment name=element");
  auto* check = app.add_subcommand("check", "check a condition over the closure box");
  check->add_option("condition", text)->required();
  check->add_option("--strategy", strategy, "decomposed, enumerate, or oracle")->capture_default_str();
  auto* classify = app.add_subcommand("classify", "syntactic Sigma/Pi class of a formula");
  classify->add_option("formula", text)->required();
  auto* range = app.add_subcommand("range", "classical value range of a formula");
  range->add_option("formula", text)->required();
  auto* alpha = app.add_subcommand("alpha", "induction constant of a formula");
  alpha->add_option("formula", text)->required();
  auto* nt = app.add_subcommand("nt", "componentwise number theory");
  nt->add_option("op", op, "divmod|coprime|bezout|crt|pair|unpair|beta|factorial|irred|prime")
      ->required();
  nt->add_option("args", args, "elements; crt takes modulus residue pairs");
  auto* suite = app.add_subcommand("suite", "run a condition suite");
  suite->add_option("name", name);
  suite->add_option("-l,--label", labels, "run only these entries");
  suite->add_option("--strategy", strategy, "decomposed, enumerate, or oracle")->capture_default_str();
  suite->add_flag("--list", list, "list the suites");
  auto* extension = app.add_subcommand("extension", "compare the box {x <= b} with the model");
  extension->add_option("--bound", bound, "inner bound b")->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kError;
  }

  try {
    if (*parse) status = cmd_parse(g, text);
    if (*eval) status = cmd_eval(g, text, env);
    if (*check) status = cmd_check(g, text, strategy);
    if (*classify) status = cmd_classify(g, text);
    if (*range) status = cmd_range(g, text);
    if (*alpha) status = cmd_alpha(g, text);
    if (*nt) status = cmd_nt(g, op, args);
    if (*suite) status = cmd_suite(g, name, labels, strategy, list);
    if (*extension) status = cmd_extension(g, bound);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const aaw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return status;
}
