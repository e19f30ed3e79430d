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

#ifndef AAW_LNP_HPP
#define AAW_LNP_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "aaw/analysis.hpp"
#include "aaw/eval.hpp"
#include "aaw/model.hpp"
#include "aaw/syntax.hpp"

namespace aaw {

// Least-number-principle search: maximizers of phi(x, params) over the
// frontier, and those with every strictly smaller element scoring strictly
// less.
struct LeastMaximizer {
  Rational sup_value;
  std::optional<Element> least;   // first qualifying candidate in graded order
  std::vector<Element> qualifying;
  std::size_t candidates = 0;

  bool unique() const { return qualifying.size() == 1; }

  nlohmann::json to_json() const {
    nlohmann::json q = nlohmann::json::array();
    for (const auto& e : qualifying) q.push_back(to_string(e));
    return {{"sup", to_string(sup_value)},
            {"least", least ? nlohmann::json(to_string(*least)) : nlohmann::json(nullptr)},
            {"qualifying", q},
            {"unique", unique()},
            {"candidates", candidates}};
  }
};

// The frontier ordered by coordinate sum, then lexicographically.
inline std::vector<Element> graded_order(const Model& m, std::uint64_t horizon,
                                         std::uint64_t cap = kDefaultFrontierCap) {
  std::vector<Element> out = m.enumerate(horizon, cap);
  std::stable_sort(out.begin(), out.end(), [](const Element& a, const Element& b) {
    Natural sa = 0, sb = 0;
    for (const auto& c : a.coords) sa += c;
    for (const auto& c : b.coords) sb += c;
    return sa < sb;
  });
  return out;
}

inline LeastMaximizer least_maximizer(const Formula& f, const std::string& x, const Model& m,
                                      const Environment& params, std::uint64_t horizon,
                                      std::uint64_t cap = kDefaultFrontierCap) {
  std::vector<std::string> vars{x};
  std::vector<Element> args{m.zero()};
  for (const auto& v : free_variables(f)) {
    if (v == x) continue;
    const auto it = params.find(v);
    if (it == params.end()) throw UnboundVariable(v);
    m.require(it->second);
    vars.push_back(v);
    args.push_back(it->second);
  }
  const CoordinateEvaluator ev(f, m, vars, horizon, cap);
  std::map<Element, Rational> value;
  const auto at = [&](const Element& a) -> const Rational& {
    auto it = value.find(a);
    if (it == value.end()) {
      args[0] = a;
      it = value.emplace(a, ev.value(args)).first;
    }
    return it->second;
  };

  LeastMaximizer r;
  const auto order = graded_order(m, horizon, cap);
  r.candidates = order.size();
  r.sup_value = at(order.front());
  for (const auto& a : order) r.sup_value = std::max(r.sup_value, at(a));
  for (const auto& a : order) {
    if (at(a) != r.sup_value) continue;
    bool minimal = true;
    for (const auto& t : m.box(a, cap)) {
      if (t != a && at(t) >= at(a)) {
        minimal = false;
        break;
      }
    }
    if (!minimal) continue;
    if (!r.least) r.least = a;
    r.qualifying.push_back(a);
  }
  return r;
}

namespace detail {

inline std::string fresh_for(const std::string& base, std::set<std::string>& taken) {
  std::string v = taken.count(base) != 0 ? fresh_name(base, taken) : base;
  taken.insert(v);
  return v;
}

// Least gap of the classical range; 1 for a singleton.
inline Rational lnp_slope(const Formula& f) {
  const auto gap = value_range(f).least_gap();
  return gap ? *gap : Rational(1);
}

// sup_{t <= z} (phi(t) + lambda d(t, z))
inline Formula lnp_reach(const Formula& f, const std::string& x, const std::string& z,
                         const Rational& lambda, std::set<std::string>& taken) {
  const std::string t = fresh_for("t", taken);
  const Formula body = Formula::add(substitute(f, x, Term::var(t)),
                                    Formula::scale(lambda, Formula::dist(Term::var(t), Term::var(z))));
  return bounded_quantifier(Formula::Kind::Sup, t, Term::var(z), body);
}

inline std::set<std::string> taken_by(const Formula& f, const std::string& x) {
  std::set<std::string> taken;
  collect_free_variables(f, taken);
  taken.insert(x);
  return taken;
}

}  // namespace detail

// sup_x phi <= sup_x [2 phi(x) - sup_{t <= x} (phi(t) + lambda d(t, x))]
// with lambda the least gap of the value range of phi.
inline Condition make_lnp_condition(const Formula& f, const std::string& x) {
  std::set<std::string> taken = detail::taken_by(f, x);
  const Rational lambda = detail::lnp_slope(f);
  const Formula reach = detail::lnp_reach(f, x, x, lambda, taken);
  const Formula rhs = Formula::sup(x, Formula::sub(Formula::scale(2, f), reach));
  return {Formula::sup(x, f), rhs};
}

// psi(z) = sup_x phi - [2 phi(z) - sup_{t <= z} (phi(t) + lambda d(t, z))]
inline Formula make_lnp_defect(const Formula& f, const std::string& x, const std::string& z) {
  std::set<std::string> taken = detail::taken_by(f, x);
  taken.insert(z);
  const Rational lambda = detail::lnp_slope(f);
  const Formula at_z = substitute(f, x, Term::var(z));
  const Formula inner = Formula::sub(Formula::scale(2, at_z), detail::lnp_reach(f, x, z, lambda, taken));
  return Formula::sub(Formula::sup(x, f), inner);
}

// r d(z, u) <= psi(z) + psi(u), r the least positive value in the range of psi.
inline Condition make_lnp_uniqueness_condition(const Formula& f, const std::string& x) {
  std::set<std::string> taken = detail::taken_by(f, x);
  const std::string z = detail::fresh_for("z", taken);
  const std::string u = detail::fresh_for("u", taken);
  const Formula psi_z = make_lnp_defect(f, x, z);
  const Formula psi_u = make_lnp_defect(f, x, u);
  Rational r = 1;
  for (const auto& v : value_range(psi_z).values) {
    if (v > 0) {
      r = v;
      break;
    }
  }
  return {Formula::scale(r, Formula::dist(Term::var(z), Term::var(u))), Formula::add(psi_z, psi_u)};
}

}  // namespace aaw

#endif  // AAW_LNP_HPP
