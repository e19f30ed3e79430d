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

#ifndef AAW_ANALYSIS_HPP
#define AAW_ANALYSIS_HPP

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "aaw/format.hpp"
#include "aaw/syntax.hpp"

namespace aaw {

inline constexpr std::size_t kDefaultRangeCap = 4096;

//------------------------------------------------------------------------------
// Classical value ranges

struct ValueRange {
  std::vector<Rational> values;  // sorted, distinct, non-empty

  bool contains(const Rational& r) const {
    return std::binary_search(values.begin(), values.end(), r);
  }
  const Rational& min() const { return values.front(); }
  const Rational& max() const { return values.back(); }

  // Least difference of consecutive values; nullopt for a singleton.
  std::optional<Rational> least_gap() const {
    std::optional<Rational> g;
    for (std::size_t i = 1; i < values.size(); ++i) {
      const Rational d = values[i] - values[i - 1];
      if (!g || d < *g) g = d;
    }
    return g;
  }

  nlohmann::json to_json() const {
    nlohmann::json v = nlohmann::json::array();
    for (const auto& r : values) v.push_back(to_string(r));
    return {{"values", v}};
  }
};

namespace detail {

inline std::set<Rational> range_set(const Formula& f, std::size_t cap) {
  const auto guard = [cap](const std::set<Rational>& s) {
    if (s.size() > cap) {
      throw ResourceError("value range exceeds the cap of " + std::to_string(cap) + " values");
    }
    return s;
  };
  switch (f.kind()) {
    case Formula::Kind::Const:
      return {f.scalar()};
    case Formula::Kind::Dist:
      return {Rational(0), Rational(1)};
    case Formula::Kind::Add: {
      const auto a = range_set(f.left(), cap);
      const auto b = range_set(f.right(), cap);
      std::set<Rational> out;
      for (const auto& x : a) {
        for (const auto& y : b) {
          out.insert(x + y);
          if (out.size() > cap) guard(out);
        }
      }
      return out;
    }
    case Formula::Kind::Scale: {
      std::set<Rational> out;
      for (const auto& x : range_set(f.body(), cap)) out.insert(f.scalar() * x);
      return out;
    }
    case Formula::Kind::Sup:
    case Formula::Kind::Inf:
      return range_set(f.body(), cap);
  }
  return {};
}

}  // namespace detail

// A finite superset of the values of f on any linearly ordered model with the
// discrete metric.
inline ValueRange value_range(const Formula& f, std::size_t cap = kDefaultRangeCap) {
  const auto s = detail::range_set(f, cap);
  return {{s.begin(), s.end()}};
}

// 2 b / (least gap), with b the largest absolute value in the range; 1 for a
// singleton range.
inline Rational induction_constant(const Formula& f, std::size_t cap = kDefaultRangeCap) {
  const ValueRange r = value_range(f, cap);
  const auto gap = r.least_gap();
  if (!gap) return 1;
  const Rational b = std::max(abs(r.min()), abs(r.max()));
  return 2 * b / *gap;
}

//------------------------------------------------------------------------------
// Condition templates

enum class InductionScheme { Successor, Weak };  // x + 1, or x + (u /\ 1)

// sup_x phi <= phi(0) + alpha * sup_x (phi(x + 1) - phi(x)), or the weak form
// with sup over x, u of phi(x + (u /\ 1)) - phi(x).
inline Condition make_induction_condition(const Formula& f, const std::string& x,
                                          InductionScheme scheme = InductionScheme::Successor) {
  const Rational alpha = induction_constant(f);
  const Term vx = Term::var(x);
  const Formula at_zero = substitute(f, x, Term::zero());
  Formula step;
  if (scheme == InductionScheme::Successor) {
    step = Formula::sup(x, Formula::sub(substitute(f, x, Term::add(vx, Term::one())), f));
  } else {
    std::set<std::string> taken;
    collect_free_variables(f, taken);
    taken.insert(x);
    std::string u = "u";
    if (taken.count(u) != 0) u = fresh_name(u, taken);
    const Term next = Term::add(vx, Term::meet(Term::var(u), Term::one()));
    step = Formula::sup(x, Formula::sup(u, Formula::sub(substitute(f, x, next), f)));
  }
  return {Formula::sup(x, f), Formula::add(at_zero, Formula::scale(alpha, step))};
}

// inf_{x <= t} sup_ys phi  vs  sup_s inf_{x <= t} sup_{ys <= s} phi, in both
// directions: {lhs <= rhs, rhs <= lhs}.
inline std::pair<Condition, Condition> make_collection_condition(
    const Formula& f, const std::string& x, const std::vector<std::string>& ys, const Term& t) {
  const auto tvars = variables(t);
  if (tvars.count(x) != 0) throw DomainError("collection bound mentions " + x);
  for (const auto& y : ys)
    if (tvars.count(y) != 0) throw DomainError("collection bound mentions " + y);

  std::set<std::string> taken = tvars;
  collect_variables(t, taken);
  collect_free_variables(f, taken);
  taken.insert(x);
  taken.insert(ys.begin(), ys.end());
  std::string s = "s";
  if (taken.count(s) != 0) s = fresh_name(s, taken);

  Formula unbounded = f;
  Formula bounded = f;
  for (auto it = ys.rbegin(); it != ys.rend(); ++it) {
    unbounded = Formula::sup(*it, unbounded);
    bounded = bounded_quantifier(Formula::Kind::Sup, *it, Term::var(s), bounded);
  }
  const Formula lhs = bounded_quantifier(Formula::Kind::Inf, x, t, unbounded);
  const Formula rhs = Formula::sup(s, bounded_quantifier(Formula::Kind::Inf, x, t, bounded));
  return {Condition{lhs, rhs}, Condition{rhs, lhs}};
}

//------------------------------------------------------------------------------
// Syntactic hierarchy

struct HierarchyClass {
  enum class Kind { Sigma, Pi };
  Kind kind = Kind::Sigma;
  unsigned level = 0;

  friend bool operator==(const HierarchyClass&, const HierarchyClass&) = default;

  std::string name() const {
    return std::string(kind == Kind::Sigma ? "Sigma" : "Pi") + "_" + std::to_string(level);
  }

  nlohmann::json to_json() const {
    return {{"kind", kind == Kind::Sigma ? "Sigma" : "Pi"}, {"level", level}};
  }
};

namespace detail {

// Least n with f in Sigma_n, least n with f in Pi_n, read off the written form.
// A quantifier counts as bounded when it matches the bounded pattern and its
// bound does not mention a variable of an enclosing unbounded quantifier.
struct Levels {
  unsigned sigma = 0;
  unsigned pi = 0;
};

inline Levels classify_levels(const Formula& f, std::set<std::string>& unbounded_vars) {
  switch (f.kind()) {
    case Formula::Kind::Const:
    case Formula::Kind::Dist:
      return {0, 0};
    case Formula::Kind::Add: {
      const Levels a = classify_levels(f.left(), unbounded_vars);
      const Levels b = classify_levels(f.right(), unbounded_vars);
      return {std::max(a.sigma, b.sigma), std::max(a.pi, b.pi)};
    }
    case Formula::Kind::Scale: {
      const Levels a = classify_levels(f.body(), unbounded_vars);
      if (f.scalar() < 0) return {a.pi, a.sigma};
      return a;
    }
    case Formula::Kind::Sup:
    case Formula::Kind::Inf: {
      bool bounded = false;
      if (auto t = bounded_pattern(f.var(), f.body())) {
        bounded = true;
        for (const auto& v : variables(*t))
          if (unbounded_vars.count(v) != 0) bounded = false;
      }
      // Shadowing: the bound variable is a fresh binder below this point.
      const bool had = unbounded_vars.count(f.var()) != 0;
      if (bounded) {
        unbounded_vars.erase(f.var());
      } else {
        unbounded_vars.insert(f.var());
      }
      const Levels b = classify_levels(f.body(), unbounded_vars);
      if (had) {
        unbounded_vars.insert(f.var());
      } else {
        unbounded_vars.erase(f.var());
      }
      if (bounded) return b;
      if (f.kind() == Formula::Kind::Sup) {
        const unsigned s = std::max(1u, std::min(b.sigma, b.pi + 1));
        return {s, s + 1};
      }
      const unsigned p = std::max(1u, std::min(b.pi, b.sigma + 1));
      return {p + 1, p};
    }
  }
  return {0, 0};
}

}  // namespace detail

// Sigma_n / Pi_n of the written form; ties go to Sigma.
inline HierarchyClass classify(const Formula& f) {
  std::set<std::string> unbounded;
  const detail::Levels l = detail::classify_levels(f, unbounded);
  if (l.sigma <= l.pi) return {HierarchyClass::Kind::Sigma, l.sigma};
  return {HierarchyClass::Kind::Pi, l.pi};
}

}  // namespace aaw

#endif  // AAW_ANALYSIS_HPP
