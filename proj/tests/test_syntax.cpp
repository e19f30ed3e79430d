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

#include "aaw/aaw.hpp"
#include "generators.hpp"

namespace aaw {
namespace {

Term V(const char* n) { return Term::var(n); }

TEST(Parse, Atomic) {
  EXPECT_EQ(parse_formula("d(x, 0)"), Formula::dist(V("x"), Term::zero()));
}

TEST(Parse, Quantifier) {
  EXPECT_EQ(parse_formula("sup x . d(x /\\ y, x)"),
            Formula::sup("x", Formula::dist(Term::meet(V("x"), V("y")), V("x"))));
}

TEST(Parse, BoundedQuantifierDesugars) {
  EXPECT_EQ(parse_formula("sup x <= t . d(x, 1)"),
            Formula::sup("x", Formula::dist(Term::meet(V("x"), V("t")), Term::one())));
}

TEST(Parse, BoundedQuantifierIsRecoverable) {
  const Formula f = parse_formula("inf w <= x + y . d(w * w, x) + d(w, 0)");
  const auto t = bounded_pattern(f.var(), f.body());
  ASSERT_TRUE(t.has_value());
  EXPECT_EQ(*t, Term::add(V("x"), V("y")));
}

TEST(Parse, BoundVariableInsideBoundIsRenamed) {
  const Formula f = parse_formula("sup x <= x + 1 . d(x, y)");
  ASSERT_EQ(f.kind(), Formula::Kind::Sup);
  EXPECT_NE(f.var(), "x");
  EXPECT_EQ(free_variables(f), (std::vector<std::string>{"x", "y"}));
}

TEST(Parse, NormAndSubtraction) {
  EXPECT_EQ(parse_formula("|x| - 1"),
            Formula::sub(Formula::norm(V("x")), Formula::constant(1)));
}

TEST(Parse, TermPrecedence) {
  // * over +, lattice operations lowest
  EXPECT_EQ(parse_term("x + y * z /\\ 1"),
            Term::meet(Term::add(V("x"), Term::mul(V("y"), V("z"))), Term::one()));
  EXPECT_EQ(parse_term("x \\/ y /\\ z"), Term::meet(Term::join(V("x"), V("y")), V("z")));
  EXPECT_EQ(parse_term("2"), Term::add(Term::one(), Term::one()));
  EXPECT_EQ(parse_term("x^3"), Term::mul(Term::mul(V("x"), V("x")), V("x")));
}

TEST(Parse, QuantifierBodyExtendsRight) {
  const Formula f = parse_formula("sup x . d(x, 0) + -1 * 1");
  ASSERT_EQ(f.kind(), Formula::Kind::Sup);
  EXPECT_EQ(f.body().kind(), Formula::Kind::Add);
}

TEST(Parse, Utf8Operators) {
  EXPECT_EQ(parse_formula("d(x ∧ y, x ∨ y)"), parse_formula("d(x /\\ y, x \\/ y)"));
  EXPECT_EQ(parse_condition("d(x, 0) ≤ 1"), parse_condition("d(x, 0) <= 1"));
}

TEST(Parse, Conditions) {
  const Condition c = parse_condition("d(x, y) >= 0");
  EXPECT_EQ(c.lhs, Formula::constant(0));
  EXPECT_THROW(parse_condition("d(x, y) = 0"), ParseError);
  const auto [c2, rel] = parse_statement("d(x, y) = d(y, x)");
  EXPECT_EQ(rel, Relation::Eq);
  EXPECT_EQ(c2.closure_variables(), (std::vector<std::string>{"x", "y"}));
}

TEST(Parse, Errors) {
  try {
    parse_formula("d(x,\n  0");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_formula("x"), ParseError);
  EXPECT_THROW(parse_formula("1/0 * d(x, y)"), ParseError);
  EXPECT_THROW(parse_formula("foo(x)"), ParseError);
  EXPECT_THROW(parse_formula("d(x, y) +"), ParseError);
}

TEST(Parse, Definitions) {
  Definitions defs;
  defs.insert(parse_definition("even(x) := inf u . d(u + u, x)"));
  EXPECT_EQ(parse_formula("even(y * y)", &defs),
            parse_formula("inf u . d(u + u, y * y)"));
  // arguments mentioning the bound variable force a rename
  const Formula f = parse_formula("even(u)", &defs);
  EXPECT_EQ(free_variables(f), (std::vector<std::string>{"u"}));
}

TEST(Format, Examples) {
  EXPECT_EQ(format(Formula::dist(Term::zero(), Term::one())), "d(0, 1)");
  EXPECT_EQ(format(Formula::scale(Rational(1, 2), Formula::constant(1))), "1/2 * 1");
  const Formula f = Formula::sup(
      "x", Formula::add(Formula::dist(V("x"), Term::zero()),
                        Formula::scale(Rational(-1), Formula::constant(1))));
  EXPECT_EQ(format(f), "sup x . d(x, 0) + -1 * 1");
  EXPECT_EQ(parse_formula(format(f)), f);
}

TEST(Format, ParenthesizesNonTailQuantifiers) {
  const Formula f = Formula::add(Formula::sup("x", Formula::dist(V("x"), V("y"))),
                                 Formula::dist(V("y"), Term::zero()));
  EXPECT_EQ(format(f), "(sup x . d(x, y)) + d(y, 0)");
  EXPECT_EQ(parse_formula(format(f)), f);
}

TEST(Format, RightNestedSums) {
  const Formula f = Formula::add(Formula::constant(1),
                                 Formula::add(Formula::constant(2), Formula::constant(3)));
  EXPECT_EQ(parse_formula(format(f)), f);
  const Term t = Term::add(V("x"), Term::add(V("y"), V("z")));
  EXPECT_EQ(parse_term(format(t)), t);
}

TEST(Format, RoundTripRandom) {
  testing::FormulaGenerator gen(20260101);
  for (int i = 0; i < 1000; ++i) {
    const Formula f = gen.formula(4);
    const std::string s = format(f);
    EXPECT_EQ(parse_formula(s), f) << s;
  }
}

TEST(Substitute, Examples) {
  const Term yt = Term::meet(V("y"), V("t"));
  EXPECT_EQ(substitute(parse_formula("d(x, 1)"), "x", yt), Formula::dist(yt, Term::one()));
  EXPECT_EQ(format(substitute(parse_formula("sup x . d(x, y)"), "y", V("x"))),
            "sup x' . d(x', x)");
  EXPECT_EQ(substitute(parse_formula("d(0, 1)"), "x", V("y")), parse_formula("d(0, 1)"));
}

TEST(Substitute, BoundOccurrencesUntouched) {
  const Formula f = parse_formula("sup x . d(x, y)");
  EXPECT_EQ(substitute(f, "x", V("z")), f);
}

TEST(Substitute, Simultaneous) {
  const Formula f = parse_formula("d(x, y)");
  EXPECT_EQ(substitute_all(f, {{"x", V("y")}, {"y", V("x")}}), parse_formula("d(y, x)"));
}

TEST(Attributes, Examples) {
  auto a = attributes(parse_formula("d(x, y)"));
  EXPECT_EQ(a.bound, 1);
  EXPECT_EQ(a.lipschitz, 1);
  a = attributes(parse_formula("d(x, y) + d(y, z)"));
  EXPECT_EQ(a.bound, 2);
  EXPECT_EQ(a.free_vars, (std::vector<std::string>{"x", "y", "z"}));
  a = attributes(parse_formula("1/2 * d(x, 0)"));
  EXPECT_EQ(a.bound, Rational(1, 2));
  a = attributes(parse_formula("d(x * x + y, x)"));
  EXPECT_EQ(a.lipschitz, 3);
  a = attributes(parse_formula("-3 * 1"));
  EXPECT_EQ(a.bound, 3);
  EXPECT_EQ(a.lipschitz, 0);
}

TEST(Attributes, NonNegative) {
  testing::FormulaGenerator gen(7);
  for (int i = 0; i < 300; ++i) {
    const auto a = attributes(gen.formula(4));
    EXPECT_GE(a.bound, 0);
    EXPECT_GE(a.lipschitz, 0);
  }
}

TEST(Variables, FreeVariablesAreSorted) {
  const Formula f = parse_formula("sup z . d(z, y) + d(b, a)");
  EXPECT_EQ(free_variables(f), (std::vector<std::string>{"a", "b", "y"}));
  EXPECT_EQ(quantifier_depth(parse_formula("sup x . inf y . d(x, y)")), 2u);
}

TEST(BoundedPattern, Recognition) {
  const Formula either_side = parse_formula("d(x /\\ t, 1) + d(t /\\ x, 0)");
  EXPECT_EQ(*bounded_pattern("x", either_side), V("t"));
  const Formula ok = parse_formula("d(x /\\ t, 1) + d(x /\\ t, 0)");
  EXPECT_EQ(*bounded_pattern("x", ok), V("t"));
  const Formula mixed = parse_formula("d(x /\\ t, 1) + d(x /\\ s, 0)");
  EXPECT_FALSE(bounded_pattern("x", mixed).has_value());
  const Formula bare = parse_formula("d(x /\\ t, x)");
  EXPECT_FALSE(bounded_pattern("x", bare).has_value());
  const Formula vacuous = parse_formula("d(y, 0)");
  EXPECT_EQ(*bounded_pattern("x", vacuous), Term::zero());
  const Formula rebound = parse_formula("sup t . d(x /\\ t, 1)");
  EXPECT_FALSE(bounded_pattern("x", rebound).has_value());
}

}  // namespace
}  // namespace aaw
