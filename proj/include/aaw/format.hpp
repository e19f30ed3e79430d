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

#ifndef AAW_FORMAT_HPP
#define AAW_FORMAT_HPP

#include <string>

#include "aaw/syntax.hpp"

namespace aaw {

inline std::string to_string(const Natural& n) { return n.str(); }

// "p" or "p/q" in lowest terms.
inline std::string to_string(const Rational& r) {
  const Natural num = boost::multiprecision::numerator(r);
  const Natural den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace detail {

// Term precedence: lattice < sum < product < atom. All binary operators are
// left associative, so a right operand of equal precedence is parenthesized.
inline int term_precedence(Term::Kind k) {
  switch (k) {
    case Term::Kind::Meet:
    case Term::Kind::Join:
      return 0;
    case Term::Kind::Add:
      return 1;
    case Term::Kind::Mul:
      return 2;
    default:
      return 3;
  }
}

inline const char* term_operator(Term::Kind k) {
  switch (k) {
    case Term::Kind::Add:
      return " + ";
    case Term::Kind::Mul:
      return " * ";
    case Term::Kind::Meet:
      return " /\\ ";
    case Term::Kind::Join:
      return " \\/ ";
    default:
      return "";
  }
}

inline void print_term(std::string& out, const Term& t, int min_prec) {
  const int prec = term_precedence(t.kind());
  const bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (t.kind()) {
    case Term::Kind::Var:
      out += t.name();
      break;
    case Term::Kind::Zero:
      out += '0';
      break;
    case Term::Kind::One:
      out += '1';
      break;
    default:
      print_term(out, t.left(), prec);
      out += term_operator(t.kind());
      print_term(out, t.right(), prec + 1);
      break;
  }
  if (parens) out += ')';
}

// `tail` is true when nothing follows the printed formula inside the current
// group; a quantifier body extends to the right, so a quantifier that is not
// in tail position must be parenthesized.
inline void print_formula(std::string& out, const Formula& f, bool sum_ok, bool tail);

inline void print_factor(std::string& out, const Formula& f, bool tail) {
  print_formula(out, f, false, tail);
}

inline void print_formula(std::string& out, const Formula& f, bool sum_ok, bool tail) {
  switch (f.kind()) {
    case Formula::Kind::Const:
      out += to_string(f.scalar());
      return;
    case Formula::Kind::Dist:
      out += "d(";
      print_term(out, f.t1(), 0);
      out += ", ";
      print_term(out, f.t2(), 0);
      out += ')';
      return;
    case Formula::Kind::Add:
      if (!sum_ok) {
        out += '(';
        print_formula(out, f, true, true);
        out += ')';
        return;
      }
      print_formula(out, f.left(), true, false);
      out += " + ";
      print_factor(out, f.right(), tail);
      return;
    case Formula::Kind::Scale:
      out += to_string(f.scalar());
      out += " * ";
      print_factor(out, f.body(), tail);
      return;
    case Formula::Kind::Sup:
    case Formula::Kind::Inf:
      if (!tail) {
        out += '(';
        print_formula(out, f, true, true);
        out += ')';
        return;
      }
      out += f.kind() == Formula::Kind::Sup ? "sup " : "inf ";
      out += f.var();
      out += " . ";
      print_formula(out, f.body(), true, true);
      return;
  }
}

}  // namespace detail

inline std::string format(const Term& t) {
  std::string out;
  detail::print_term(out, t, 0);
  return out;
}

// Concrete syntax accepted back by parse_formula.
inline std::string format(const Formula& f) {
  std::string out;
  detail::print_formula(out, f, true, true);
  return out;
}

inline std::string format(const Condition& c) {
  return format(c.lhs) + " <= " + format(c.rhs);
}

}  // namespace aaw

#endif  // AAW_FORMAT_HPP
