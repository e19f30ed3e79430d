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

#include <gtest/gtest.h>

#include <set>

#include "aaw/aaw.hpp"

namespace aaw {
namespace {

const Model kN = Model::standard();
const Model kHalf = Model::powermean(Ultracharge::uniform(2));
const Model kThird = Model::powermean(Ultracharge::uniform(3));

std::string failures(const SuiteReport& r) {
  std::string s;
  for (const auto& c : r.reports)
    if (!c.pass()) s += c.to_json().dump() + "\n";
  return s;
}

TEST(Corpus, BuiltinShape) {
  const auto& suites = builtin_suites();
  std::vector<std::string> names;
  for (const auto& s : suites) names.push_back(s.name);
  EXPECT_EQ(names, (std::vector<std::string>{"axioms", "order", "lnp", "numbertheory", "collection",
                                             "integral"}));
  EXPECT_GE(builtin_corpus().find("axioms")->entries.size(), 10u);
  EXPECT_EQ(formula_corpus().size(), 12u);
  for (const auto& s : suites) {
    std::set<std::string> labels;
    for (const auto& e : s.entries) EXPECT_TRUE(labels.insert(e.label).second) << s.name << " " << e.label;
  }
  for (const char* label : {"A1 distributive", "A1 add-over-meet", "A2 discreteness [<=]", "A3 [>=]",
                            "A8 [<=]", "A10 [>=]", "A11 product", "A12 dist"}) {
    EXPECT_NE(builtin_corpus().find("axioms")->find(label), nullptr) << label;
  }
}

TEST(Corpus, ConditionsRoundTripThroughThePrinter) {
  for (const auto& s : builtin_suites()) {
    for (const auto& e : s.entries) {
      if (e.kind != SuiteEntry::Kind::Condition) continue;
      const std::string text = format(e.condition);
      EXPECT_EQ(parse_condition(text), e.condition) << s.name << " / " << e.label << ": " << text;
    }
  }
  for (const auto& f : formula_corpus()) EXPECT_EQ(parse_formula(format(f.formula)), f.formula);
}

TEST(Corpus, ParserErrors) {
  const auto line_of = [](const char* text) {
    try {
      parse_corpus(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  EXPECT_EQ(line_of("# a\nd(0, 1) <= 0\n\n# a\nd(0, 1) <= 0\n"), 4u);
  EXPECT_EQ(line_of("% comment\n@bogus\n"), 2u);
  EXPECT_EQ(line_of("@suite s\n@horizons standard 1\n"), 2u);
  EXPECT_EQ(line_of("@suite s\n\n# a\nd(0, 1) <=\n"), 4u);
  EXPECT_EQ(line_of("@suite s\n@suite s\n"), 2u);
  EXPECT_EQ(line_of("@formula f var=x\nd(y, z)\n"), 1u);
  EXPECT_EQ(line_of("# a\n% note\nd(0,\n  1) <=\n"), 4u);
}

TEST(Corpus, OverridesAndMacros) {
  const Corpus c = parse_corpus(
      "@define twice(a) := d(a + a, 0)\n"
      "\n"
      "@suite s models=powermean\n"
      "@horizons powermean 5 3\n"
      "\n"
      "# plain\n"
      "twice(x) <= 1\n"
      "\n"
      "# tuned [7,2 | 6,1]\n"
      "d(x, y) = d(y, x)\n");
  const Suite& s = c.suites.at(0);
  EXPECT_FALSE(s.applies(kN));
  EXPECT_TRUE(s.applies(kHalf));
  EXPECT_EQ(s.entries.size(), 3u);
  EXPECT_EQ(s.entries[0].condition, parse_condition("d(x + x, 0) <= 1"));
  EXPECT_EQ(effective_horizons(s, s.entries[0], kHalf, {}), (Horizons{5, 3}));
  EXPECT_EQ(effective_horizons(s, s.entries[1], kHalf, {}), (Horizons{6, 1}));
  EXPECT_EQ(s.entries[2].label, "tuned [>=]");
  SuiteOptions o;
  o.closure_horizon = 4;
  EXPECT_EQ(effective_horizons(s, s.entries[2], kHalf, o), (Horizons{6, 4}));
  EXPECT_THROW(run_suite(s, kN), DomainError);
  EXPECT_THROW(run_suite("nope", kN), DomainError);
}

TEST(Corpus, StanzasWithoutASuiteFormTheCorpusSuite) {
  const Corpus c = parse_corpus("# meet\nd(x /\\ y, y /\\ x) <= 0\n");
  ASSERT_NE(c.find("corpus"), nullptr);
  EXPECT_TRUE(run_suite("corpus", kThird, {}, c).pass());
}

TEST(Suites, CorruptedConditionFailsWithWitness) {
  const Corpus c = parse_corpus("# zero is one\nd(0, 1) <= 0\n\n# fine\nd(x, x) <= 0\n\n# shifted\n"
                                "d(x + 1, y) <= d(x, y)\n");
  for (const Model& m : {kN, kHalf}) {
    const auto r = run_suite("corpus", m, {}, c);
    EXPECT_FALSE(r.pass());
    ASSERT_EQ(r.reports.size(), 3u);
    EXPECT_EQ(r.reports[0].max_violation, 1);
    ASSERT_TRUE(r.reports[0].witness.has_value());
    EXPECT_TRUE(r.reports[1].pass());
    EXPECT_EQ(r.reports[2].max_violation, 1);
    ASSERT_TRUE(r.reports[2].witness.has_value());
    EXPECT_EQ(r.reports[2].witness->at("x"), m.zero());
    EXPECT_EQ(r.reports[2].witness->at("y"), m.zero());
    EXPECT_FALSE(r.to_json()["pass"].get<bool>());
  }
}

TEST(Suites, AxiomsPass) {
  for (const Model& m : {kN, kHalf, kThird}) {
    const auto r = run_suite("axioms", m);
    EXPECT_TRUE(r.pass()) << m.name() << "\n" << failures(r);
  }
}

TEST(Suites, A8OnHalf) {
  const Suite& s = *builtin_corpus().find("axioms");
  SuiteOptions o;
  o.horizon = 8;
  for (const char* label : {"A8 [<=]", "A8 [>=]"}) {
    const auto r = run_entry(s, *s.find(label), kHalf, o);
    EXPECT_EQ(r.max_violation, 0) << label;
    EXPECT_EQ(r.horizon, 8u);
  }
}

TEST(Suites, SmallSuitesPassOnBothKinds) {
  for (const char* name : {"order", "lnp", "collection", "integral"}) {
    for (const Model& m : {kN, kHalf}) {
      const auto r = run_suite(name, m);
      EXPECT_TRUE(r.pass()) << name << " on " << m.name() << "\n" << failures(r);
    }
  }
}

TEST(Suites, NumberTheoryPasses) {
  for (const Model& m : {kN, kHalf}) {
    const auto r = run_suite("numbertheory", m);
    EXPECT_TRUE(r.pass()) << m.name() << "\n" << failures(r);
  }
}

TEST(Suites, LinearOrderPropertyDistinguishesModelKinds) {
  const auto n = run_suite("order", kN).reports.back();
  const auto h = run_suite("order", kHalf).reports.back();
  EXPECT_EQ(n.label, "linear-order");
  EXPECT_EQ(n.description, "linear=true no-element-in-(0,1)=true zero-or-normal=true");
  EXPECT_EQ(h.description, "linear=false no-element-in-(0,1)=false zero-or-normal=false");
  EXPECT_TRUE(n.pass());
  EXPECT_TRUE(h.pass());
}

TEST(Suites, ReportsAreDeterministic) {
  for (const Model& m : {kN, kHalf}) {
    const std::string a = run_suite("order", m).to_json().dump();
    const std::string b = run_suite("order", m).to_json().dump();
    EXPECT_EQ(a, b);
  }
  EXPECT_EQ(run_suite("collection", kHalf).to_json().dump(),
            run_suite("collection", kHalf).to_json().dump());
}

TEST(Lnp, CappedDistanceHasLeastMaximizerZero) {
  const auto r = least_maximizer(parse_formula("d(x /\\ 3, 3)"), "x", kN, {}, 10);
  EXPECT_EQ(r.sup_value, 1);
  ASSERT_TRUE(r.least.has_value());
  EXPECT_EQ(*r.least, kN.constant(0));
  EXPECT_TRUE(r.unique());
  EXPECT_EQ(r.candidates, 11u);
}

TEST(Lnp, PowermeanMaximizerIsCoordinatewise) {
  // d(x /\ 1, x) is maximal once every coordinate is at least 2.
  const auto r = least_maximizer(parse_formula("d(x /\\ 1, x)"), "x", kHalf, {}, 3);
  EXPECT_EQ(r.sup_value, 1);
  EXPECT_EQ(r.qualifying, (std::vector<Element>{Element{2, 2}}));
  EXPECT_TRUE(r.unique());
  const auto p = least_maximizer(parse_formula("d(x /\\ y, y)"), "x", kHalf, {{"y", Element{1, 3}}}, 4);
  EXPECT_EQ(p.sup_value, 1);
  EXPECT_EQ(*p.least, (Element{0, 0}));
  EXPECT_TRUE(p.unique());
}

TEST(Lnp, GradedOrder) {
  const auto order = graded_order(kHalf, 2);
  ASSERT_EQ(order.size(), 9u);
  EXPECT_EQ(order[0], (Element{0, 0}));
  EXPECT_EQ(order[1], (Element{0, 1}));
  EXPECT_EQ(order[2], (Element{1, 0}));
  EXPECT_EQ(order.back(), (Element{2, 2}));
}

TEST(Lnp, ConditionShape) {
  const Formula f = parse_formula("d(x /\\ 3, 3)");
  const Condition c = make_lnp_condition(f, "x");
  EXPECT_EQ(c.lhs, parse_formula("sup x . d(x /\\ 3, 3)"));
  EXPECT_TRUE(check_condition(c, kN, 10, 0).pass());
  EXPECT_TRUE(check_condition(make_lnp_uniqueness_condition(f, "x"), kN, 10, 6).pass());
  // The defect vanishes exactly at the least maximizer.
  const Formula psi = make_lnp_defect(f, "x", "z");
  for (unsigned z = 0; z <= 6; ++z) {
    EXPECT_EQ(eval(psi, kN, {{"z", kN.constant(z)}}, 10).value == 0, z == 0) << z;
  }
}

TEST(Extension, BoxInsideHalf) {
  const auto r = extension_check(kHalf, 5, 5);
  EXPECT_TRUE(r.downward_closed);
  EXPECT_TRUE(r.pass());
  EXPECT_FALSE(r.bounded.empty());
  for (const auto& f : r.bounded) {
    EXPECT_EQ(f.level.level, 0u);
    EXPECT_EQ(f.disagreements, 0u) << f.label;
  }
  for (const auto& f : r.unbounded) EXPECT_GT(f.level.level, 0u);
  EXPECT_THROW(extension_check(kHalf, 6, 5), DomainError);
}

TEST(Extension, UnboundedDisagreementIsInformational) {
  const std::vector<CorpusFormula> formulas{
      {"reach", parse_formula("inf w . d(w, x + 3)"), "x"},
      {"below", parse_formula("inf w <= x . d(w + w, x)"), "x"}};
  const auto r = extension_check(kHalf, 2, 6, formulas);
  ASSERT_EQ(r.unbounded.size(), 1u);
  ASSERT_EQ(r.bounded.size(), 1u);
  EXPECT_EQ(r.unbounded[0].environments, 9u);
  EXPECT_EQ(r.unbounded[0].disagreements, 9u);
  EXPECT_EQ(r.bounded[0].disagreements, 0u);
  EXPECT_TRUE(r.pass());
}

}  // namespace
}  // namespace aaw
