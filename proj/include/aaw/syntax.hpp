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

#ifndef AAW_SYNTAX_HPP
#define AAW_SYNTAX_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace aaw {

using Natural = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

//------------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Precondition violations: arity mismatch, non-normal divisor, ...
class DomainError : public Error {
 public:
  using Error::Error;
};

// Frontier, sumset or magnitude cap exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& name)
      : Error("unbound variable '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

//------------------------------------------------------------------------------
// Terms over {+, *, /\, \/, 0, 1}

class Term {
 public:
  enum class Kind { Var, Zero, One, Add, Mul, Meet, Join };

  Term() = default;

  static Term var(std::string name);
  static Term zero();
  static Term one();
  static Term add(Term l, Term r) { return binary(Kind::Add, std::move(l), std::move(r)); }
  static Term mul(Term l, Term r) { return binary(Kind::Mul, std::move(l), std::move(r)); }
  static Term meet(Term l, Term r) { return binary(Kind::Meet, std::move(l), std::move(r)); }
  static Term join(Term l, Term r) { return binary(Kind::Join, std::move(l), std::move(r)); }
  static Term binary(Kind k, Term l, Term r);

  // n as 1 + 1 + ... + 1 (left associated); 0 for n == 0.
  static Term numeral(unsigned long n);

  bool empty() const { return node_ == nullptr; }
  Kind kind() const;
  const std::string& name() const;
  const Term& left() const;
  const Term& right() const;
  bool is_binary() const { return kind() >= Kind::Add; }
  bool is_var(const std::string& n) const { return kind() == Kind::Var && name() == n; }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  Kind kind;
  std::string name;
  Term left;
  Term right;
};

inline Term Term::var(std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}, {}}));
}

inline Term Term::zero() {
  static const Term z(std::make_shared<const Node>(Node{Kind::Zero, {}, {}, {}}));
  return z;
}

inline Term Term::one() {
  static const Term o(std::make_shared<const Node>(Node{Kind::One, {}, {}, {}}));
  return o;
}

inline Term Term::binary(Kind k, Term l, Term r) {
  return Term(std::make_shared<const Node>(Node{k, {}, std::move(l), std::move(r)}));
}

inline Term Term::numeral(unsigned long n) {
  if (n == 0) return zero();
  Term t = one();
  for (unsigned long i = 1; i < n; ++i) t = add(t, one());
  return t;
}

inline Term::Kind Term::kind() const { return node_->kind; }
inline const std::string& Term::name() const { return node_->name; }
inline const Term& Term::left() const { return node_->left; }
inline const Term& Term::right() const { return node_->right; }

inline bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var:
      return a.name() == b.name();
    case Term::Kind::Zero:
    case Term::Kind::One:
      return true;
    default:
      return a.left() == b.left() && a.right() == b.right();
  }
}

//------------------------------------------------------------------------------
// Affine formulas

class Formula {
 public:
  enum class Kind { Const, Dist, Add, Scale, Sup, Inf };

  Formula() = default;

  static Formula constant(Rational r);
  static Formula dist(Term t1, Term t2);
  static Formula add(Formula l, Formula r);
  static Formula scale(Rational r, Formula body);
  static Formula sup(std::string var, Formula body);
  static Formula inf(std::string var, Formula body);
  static Formula quantifier(Kind k, std::string var, Formula body);

  // |t| and l - r.
  static Formula norm(Term t) { return dist(std::move(t), Term::zero()); }
  static Formula sub(Formula l, Formula r) {
    return add(std::move(l), scale(Rational(-1), std::move(r)));
  }

  bool empty() const { return node_ == nullptr; }
  Kind kind() const;
  bool is_quantifier() const { return kind() == Kind::Sup || kind() == Kind::Inf; }

  const Rational& scalar() const;   // Const, Scale
  const Term& t1() const;           // Dist
  const Term& t2() const;           // Dist
  const Formula& left() const;      // Add
  const Formula& right() const;     // Add
  const Formula& body() const;      // Scale, Sup, Inf
  const std::string& var() const;   // Sup, Inf

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

  const void* identity() const { return node_.get(); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Kind kind;
  Rational r;
  Term t1;
  Term t2;
  std::string var;
  Formula left;
  Formula right;
};

inline Formula Formula::constant(Rational r) {
  return Formula(std::make_shared<const Node>(Node{Kind::Const, std::move(r), {}, {}, {}, {}, {}}));
}

inline Formula Formula::dist(Term t1, Term t2) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::Dist, {}, std::move(t1), std::move(t2), {}, {}, {}}));
}

inline Formula Formula::add(Formula l, Formula r) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::Add, {}, {}, {}, {}, std::move(l), std::move(r)}));
}

inline Formula Formula::scale(Rational r, Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Scale, std::move(r), {}, {}, {}, std::move(body), {}}));
}

inline Formula Formula::quantifier(Kind k, std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{k, {}, {}, {}, std::move(var), std::move(body), {}}));
}

inline Formula Formula::sup(std::string var, Formula body) {
  return quantifier(Kind::Sup, std::move(var), std::move(body));
}

inline Formula Formula::inf(std::string var, Formula body) {
  return quantifier(Kind::Inf, std::move(var), std::move(body));
}

inline Formula::Kind Formula::kind() const { return node_->kind; }
inline const Rational& Formula::scalar() const { return node_->r; }
inline const Term& Formula::t1() const { return node_->t1; }
inline const Term& Formula::t2() const { return node_->t2; }
inline const Formula& Formula::left() const { return node_->left; }
inline const Formula& Formula::right() const { return node_->right; }
inline const Formula& Formula::body() const { return node_->left; }
inline const std::string& Formula::var() const { return node_->var; }

inline bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::Const:
      return a.scalar() == b.scalar();
    case Formula::Kind::Dist:
      return a.t1() == b.t1() && a.t2() == b.t2();
    case Formula::Kind::Add:
      return a.left() == b.left() && a.right() == b.right();
    case Formula::Kind::Scale:
      return a.scalar() == b.scalar() && a.body() == b.body();
    case Formula::Kind::Sup:
    case Formula::Kind::Inf:
      return a.var() == b.var() && a.body() == b.body();
  }
  return false;
}

// A condition lhs <= rhs, implicitly universally closed.
struct Condition {
  Formula lhs;
  Formula rhs;

  std::vector<std::string> closure_variables() const;

  friend bool operator==(const Condition& a, const Condition& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs;
  }
};

//------------------------------------------------------------------------------
// Variables

inline void collect_variables(const Term& t, std::set<std::string>& out) {
  if (t.kind() == Term::Kind::Var) {
    out.insert(t.name());
  } else if (t.is_binary()) {
    collect_variables(t.left(), out);
    collect_variables(t.right(), out);
  }
}

inline std::set<std::string> variables(const Term& t) {
  std::set<std::string> out;
  collect_variables(t, out);
  return out;
}

inline std::size_t occurrences(const Term& t, const std::string& v) {
  if (t.kind() == Term::Kind::Var) return t.name() == v ? 1 : 0;
  if (t.is_binary()) return occurrences(t.left(), v) + occurrences(t.right(), v);
  return 0;
}

inline void collect_free_variables(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Const:
      return;
    case Formula::Kind::Dist:
      collect_variables(f.t1(), out);
      collect_variables(f.t2(), out);
      return;
    case Formula::Kind::Add:
      collect_free_variables(f.left(), out);
      collect_free_variables(f.right(), out);
      return;
    case Formula::Kind::Scale:
      collect_free_variables(f.body(), out);
      return;
    case Formula::Kind::Sup:
    case Formula::Kind::Inf: {
      std::set<std::string> inner;
      collect_free_variables(f.body(), inner);
      inner.erase(f.var());
      out.insert(inner.begin(), inner.end());
      return;
    }
  }
}

// Free variables in lexicographic order.
inline std::vector<std::string> free_variables(const Formula& f) {
  std::set<std::string> s;
  collect_free_variables(f, s);
  return {s.begin(), s.end()};
}

inline bool is_free(const Formula& f, const std::string& v) {
  std::set<std::string> s;
  collect_free_variables(f, s);
  return s.count(v) != 0;
}

inline std::vector<std::string> Condition::closure_variables() const {
  std::set<std::string> s;
  collect_free_variables(lhs, s);
  collect_free_variables(rhs, s);
  return {s.begin(), s.end()};
}

inline std::size_t quantifier_depth(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Const:
    case Formula::Kind::Dist:
      return 0;
    case Formula::Kind::Add:
      return std::max(quantifier_depth(f.left()), quantifier_depth(f.right()));
    case Formula::Kind::Scale:
      return quantifier_depth(f.body());
    case Formula::Kind::Sup:
    case Formula::Kind::Inf:
      return 1 + quantifier_depth(f.body());
  }
  return 0;
}

//------------------------------------------------------------------------------
// Substitution

inline Term substitute(const Term& t, const std::string& v, const Term& s) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t.name() == v ? s : t;
    case Term::Kind::Zero:
    case Term::Kind::One:
      return t;
    default: {
      Term l = substitute(t.left(), v, s);
      Term r = substitute(t.right(), v, s);
      return Term::binary(t.kind(), std::move(l), std::move(r));
    }
  }
}

// A name derived from `base` by appending primes, avoiding everything in `taken`.
inline std::string fresh_name(std::string base, const std::set<std::string>& taken) {
  do {
    base += '\'';
  } while (taken.count(base) != 0);
  return base;
}

// Capture-avoiding f[v := s]. Bound variables that would capture a variable of
// s are renamed by appending primes.
inline Formula substitute(const Formula& f, const std::string& v, const Term& s) {
  switch (f.kind()) {
    case Formula::Kind::Const:
      return f;
    case Formula::Kind::Dist:
      return Formula::dist(substitute(f.t1(), v, s), substitute(f.t2(), v, s));
    case Formula::Kind::Add:
      return Formula::add(substitute(f.left(), v, s), substitute(f.right(), v, s));
    case Formula::Kind::Scale:
      return Formula::scale(f.scalar(), substitute(f.body(), v, s));
    case Formula::Kind::Sup:
    case Formula::Kind::Inf: {
      if (f.var() == v || !is_free(f.body(), v)) return f;
      const std::set<std::string> svars = variables(s);
      if (svars.count(f.var()) == 0) {
        return Formula::quantifier(f.kind(), f.var(), substitute(f.body(), v, s));
      }
      std::set<std::string> taken = svars;
      collect_free_variables(f.body(), taken);
      taken.insert(v);
      const std::string renamed = fresh_name(f.var(), taken);
      Formula body = substitute(f.body(), f.var(), Term::var(renamed));
      return Formula::quantifier(f.kind(), renamed, substitute(body, v, s));
    }
  }
  return f;
}

// Simultaneous substitution of every key of `m`.
inline Formula substitute_all(const Formula& f, const std::map<std::string, Term>& m) {
  std::set<std::string> taken;
  collect_free_variables(f, taken);
  for (const auto& [k, t] : m) {
    taken.insert(k);
    collect_variables(t, taken);
  }
  std::vector<std::pair<std::string, Term>> staged;
  Formula g = f;
  std::size_t counter = 0;
  for (const auto& [k, t] : m) {
    std::string tmp;
    do {
      tmp = "#" + std::to_string(counter++);
    } while (taken.count(tmp) != 0);
    g = substitute(g, k, Term::var(tmp));
    staged.emplace_back(tmp, t);
  }
  for (const auto& [tmp, t] : staged) g = substitute(g, tmp, t);
  return g;
}

//------------------------------------------------------------------------------
// Bounded quantifier pattern: sup x . phi[x := x /\ t] with x not in t.

// Returns the bound term t when every free occurrence of `x` in `body` sits in
// a meet with the same term t, and no variable of t is rebound on the way down.
// A body in which x does not occur is bounded by 0.
class BoundedPattern {
 public:
  static std::optional<Term> match(const std::string& x, const Formula& body) {
    BoundedPattern p(x);
    if (!p.visit(body)) return std::nullopt;
    if (!p.bound_) return Term::zero();
    return p.bound_;
  }

 private:
  explicit BoundedPattern(std::string x) : x_(std::move(x)) {}

  bool visit_term(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Var:
        return t.name() != x_;
      case Term::Kind::Zero:
      case Term::Kind::One:
        return true;
      case Term::Kind::Meet:
        if (t.left().is_var(x_)) return accept(t.right());
        if (t.right().is_var(x_)) return accept(t.left());
        [[fallthrough]];
      default:
        return visit_term(t.left()) && visit_term(t.right());
    }
  }

  bool accept(const Term& t) {
    const auto vars = variables(t);
    if (vars.count(x_) != 0) return false;
    for (const auto& v : vars)
      if (rebound_.count(v) != 0) return false;
    if (!bound_) {
      bound_ = t;
      return true;
    }
    return *bound_ == t;
  }

  bool visit(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Const:
        return true;
      case Formula::Kind::Dist:
        return visit_term(f.t1()) && visit_term(f.t2());
      case Formula::Kind::Add:
        return visit(f.left()) && visit(f.right());
      case Formula::Kind::Scale:
        return visit(f.body());
      case Formula::Kind::Sup:
      case Formula::Kind::Inf: {
        if (f.var() == x_) return true;
        const bool fresh = rebound_.insert(f.var()).second;
        const bool ok = visit(f.body());
        if (fresh) rebound_.erase(f.var());
        return ok;
      }
    }
    return false;
  }

  std::string x_;
  std::optional<Term> bound_;
  std::set<std::string> rebound_;
};

inline std::optional<Term> bounded_pattern(const std::string& x, const Formula& body) {
  return BoundedPattern::match(x, body);
}

// sup x <= t . phi  ==>  sup x . phi[x := x /\ t]
inline Formula bounded_quantifier(Formula::Kind k, const std::string& x, const Term& t,
                                  const Formula& body) {
  const auto tvars = variables(t);
  if (tvars.count(x) == 0) {
    return Formula::quantifier(k, x, substitute(body, x, Term::meet(Term::var(x), t)));
  }
  std::set<std::string> taken = tvars;
  collect_free_variables(body, taken);
  const std::string y = fresh_name(x, taken);
  return Formula::quantifier(k, y, substitute(body, x, Term::meet(Term::var(y), t)));
}

}  // namespace aaw

#endif  // AAW_SYNTAX_HPP
