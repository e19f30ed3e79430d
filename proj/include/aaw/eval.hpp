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

#ifndef AAW_EVAL_HPP
#define AAW_EVAL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "aaw/format.hpp"
#include "aaw/kernel.hpp"
#include "aaw/model.hpp"
#include "aaw/oracle.hpp"
#include "aaw/syntax.hpp"

namespace aaw {

struct EvalResult {
  Rational value;
  bool exhaustive = true;  // no unbounded quantifier, so the horizon was not binding
};

// Evaluates a powermean formula coordinate by coordinate through one standard
// kernel, caching coordinate environments.
class CoordinateEvaluator {
 public:
  CoordinateEvaluator(const Formula& f, const Model& m, std::vector<std::string> vars,
                      std::uint64_t horizon, std::uint64_t cap = kDefaultFrontierCap)
      : model_(m), vars_(std::move(vars)), horizon_(horizon), kernel_(f, vars_, cap) {}

  bool exhaustive() const { return kernel_.exhaustive(); }
  const StandardKernel& kernel() const { return kernel_; }
  const std::vector<std::string>& variables() const { return vars_; }

  Rational coordinate(const std::vector<Natural>& point) const {
    const auto it = memo_.find(point);
    if (it != memo_.end()) return it->second;
    Rational v = kernel_.evaluate(point, horizon_);
    memo_.emplace(point, v);
    return v;
  }

  // Values of the variables, in `variables()` order.
  Rational value(const std::vector<Element>& args) const {
    Rational total = 0;
    std::vector<Natural> point(args.size());
    for (std::size_t i = 0; i < model_.index_count(); ++i) {
      for (std::size_t j = 0; j < args.size(); ++j) point[j] = args[j][i];
      total += model_.weight(i) * coordinate(point);
    }
    return total;
  }

 private:
  Model model_;
  std::vector<std::string> vars_;
  std::uint64_t horizon_;
  StandardKernel kernel_;
  mutable std::map<std::vector<Natural>, Rational> memo_;
};

namespace detail {

inline std::vector<Element> bind(const std::vector<std::string>& vars, const Model& m,
                                 const Environment& env) {
  std::vector<Element> args;
  for (const auto& v : vars) {
    const auto it = env.find(v);
    if (it == env.end()) throw UnboundVariable(v);
    m.require(it->second);
    args.push_back(it->second);
  }
  return args;
}

}  // namespace detail

// Standard model: direct evaluation. Powermean: the weighted sum of the
// standard values at each coordinate.
inline EvalResult eval(const Formula& f, const Model& m, const Environment& env,
                       std::uint64_t horizon, std::uint64_t cap = kDefaultFrontierCap) {
  const auto vars = free_variables(f);
  const auto args = detail::bind(vars, m, env);
  CoordinateEvaluator ev(f, m, vars, horizon, cap);
  return {ev.value(args), ev.exhaustive()};
}

inline EvalResult eval(const Formula& f, const Model& m, std::uint64_t horizon) {
  return eval(f, m, Environment{}, horizon);
}

//------------------------------------------------------------------------------
// Conditions

enum class CheckStrategy {
  Decomposed,  // powermeans: maximize the standard gap once, lift the argmax set
  Enumerate,   // enumerate closure tuples, evaluate each with the fast path
  Oracle,      // enumerate closure tuples, evaluate each with the product oracle
};

struct CheckOptions {
  std::uint64_t frontier_cap = kDefaultFrontierCap;
  CheckStrategy strategy = CheckStrategy::Decomposed;
};

struct CheckReport {
  std::string label;
  std::string description;  // replaces the printed condition for non-condition checks
  Condition condition;
  Model model = Model::standard();
  std::uint64_t horizon = 0;
  std::uint64_t closure_horizon = 0;
  Rational max_violation = 0;
  std::optional<Environment> witness;
  Natural points_checked = 0;

  bool pass() const { return max_violation == 0; }

  nlohmann::json to_json() const {
    nlohmann::json j;
    if (!label.empty()) j["label"] = label;
    j["condition"] = description.empty() ? format(condition) : description;
    j["model"] = model.to_json();
    j["horizon"] = horizon;
    j["closure_horizon"] = closure_horizon;
    j["max_violation"] = to_string(max_violation);
    if (witness) {
      nlohmann::json w = nlohmann::json::object();
      for (const auto& [k, e] : *witness) {
        nlohmann::json c = nlohmann::json::array();
        for (const auto& x : e.coords) {
          if (x <= std::numeric_limits<std::uint64_t>::max()) {
            c.push_back(x.convert_to<std::uint64_t>());
          } else {
            c.push_back(x.str());
          }
        }
        w[k] = c;
      }
      j["witness"] = w;
    } else {
      j["witness"] = nullptr;
    }
    if (points_checked <= std::numeric_limits<std::uint64_t>::max()) {
      j["points_checked"] = points_checked.convert_to<std::uint64_t>();
    } else {
      j["points_checked"] = points_checked.str();
    }
    j["pass"] = pass();
    return j;
  }
};

// lhs + (-1) * rhs
inline Formula gap_formula(const Condition& c) { return Formula::sub(c.lhs, c.rhs); }

namespace detail {

inline Natural power(const Natural& base, std::size_t e) {
  Natural r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

inline void require_frontier(const Natural& size, std::uint64_t cap, const std::string& what) {
  if (size > cap) {
    throw ResourceError(what + " of " + size.str() + " points exceeds the cap of " +
                        std::to_string(cap));
  }
}

// Advances a little-endian-last odometer over {0..side-1}^n; false on wrap.
inline bool advance(std::vector<std::size_t>& digits, std::size_t side) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < side) return true;
    digits[i] = 0;
  }
  return false;
}

inline CheckReport check_standard_points(const Condition& c, const Model& m,
                                         std::uint64_t horizon, std::uint64_t closure,
                                         const CheckOptions& opts, CheckReport report) {
  const auto vars = c.closure_variables();
  const std::size_t n = vars.size();
  const Natural side = Natural(closure) + 1;
  const Natural points = power(side, n);
  require_frontier(points, opts.frontier_cap, "closure frontier");
  report.points_checked = power(side, n * m.index_count());

  const StandardKernel kernel(gap_formula(c), vars, opts.frontier_cap);
  std::vector<Natural> point(n, 0);
  std::vector<std::size_t> digits(n, 0);
  Rational best = 0;
  std::optional<std::vector<Natural>> arg;
  do {
    for (std::size_t i = 0; i < n; ++i) point[i] = digits[i];
    if (auto v = kernel.evaluate_above(point, horizon, best)) {
      best = *v;
      arg = point;
    }
  } while (advance(digits, static_cast<std::size_t>(closure) + 1));

  // Powermean closures of the standard gap table: the tuple value is the
  // weighted mean of column values, so the maximum equals the standard maximum
  // and is attained exactly by tuples whose every column is a maximizer.
  report.max_violation = best;
  if (!arg) return report;
  if (m.is_standard()) {
    Environment w;
    for (std::size_t i = 0; i < n; ++i) w[vars[i]] = Element(std::vector<Natural>{(*arg)[i]});
    report.witness = w;
    return report;
  }

  const Rational just_below = best - Rational(1, 2) / Rational(kernel.denominator());
  std::vector<std::vector<Natural>> argmax;
  std::fill(digits.begin(), digits.end(), 0);
  do {
    for (std::size_t i = 0; i < n; ++i) point[i] = digits[i];
    if (kernel.evaluate_above(point, horizon, just_below)) argmax.push_back(point);
  } while (advance(digits, static_cast<std::size_t>(closure) + 1));

  // Lexicographically least tuple assignment: variables major, coordinates minor.
  const std::size_t k = m.index_count();
  std::vector<std::vector<std::vector<Natural>>> cand(k, argmax);
  std::vector<Element> chosen(n, m.zero());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < k; ++i) {
      Natural least = cand[i].front()[j];
      for (const auto& p : cand[i]) least = std::min(least, p[j]);
      std::vector<std::vector<Natural>> keep;
      for (auto& p : cand[i])
        if (p[j] == least) keep.push_back(std::move(p));
      cand[i] = std::move(keep);
      chosen[j].coords[i] = least;
    }
  }
  Environment w;
  for (std::size_t j = 0; j < n; ++j) w[vars[j]] = chosen[j];
  report.witness = w;
  return report;
}

template <class Value>
CheckReport check_tuples(const Condition& c, const Model& m, std::uint64_t closure,
                         const CheckOptions& opts, CheckReport report, Value value) {
  const auto vars = c.closure_variables();
  const std::size_t n = vars.size();
  const auto frontier = m.enumerate(closure, opts.frontier_cap);
  const Natural points = power(Natural(frontier.size()), n);
  require_frontier(points, opts.frontier_cap, "closure frontier");
  report.points_checked = points;

  std::vector<std::size_t> digits(n, 0);
  std::vector<Element> args(n);
  Rational best = 0;
  do {
    for (std::size_t i = 0; i < n; ++i) args[i] = frontier[digits[i]];
    const Rational v = value(args);
    if (v > best) {
      best = v;
      Environment w;
      for (std::size_t i = 0; i < n; ++i) w[vars[i]] = args[i];
      report.witness = w;
    }
  } while (advance(digits, frontier.size()));
  report.max_violation = best;
  return report;
}

}  // namespace detail

// Evaluates lhs - rhs at every closure assignment over {0..closure}^k and
// reports the largest positive gap with its first witness in enumeration order
// (closure variables sorted, first variable most significant).
inline CheckReport check_condition(const Condition& c, const Model& m, std::uint64_t horizon,
                                   std::uint64_t closure_horizon, CheckOptions opts = {}) {
  CheckReport report;
  report.condition = c;
  report.model = m;
  report.horizon = horizon;
  report.closure_horizon = closure_horizon;

  if (m.is_standard() || opts.strategy == CheckStrategy::Decomposed) {
    return detail::check_standard_points(c, m, horizon, closure_horizon, opts, std::move(report));
  }
  if (opts.strategy == CheckStrategy::Enumerate) {
    const CoordinateEvaluator ev(gap_formula(c), m, c.closure_variables(), horizon,
                                 opts.frontier_cap);
    return detail::check_tuples(c, m, closure_horizon, opts, std::move(report),
                                [&](const std::vector<Element>& args) { return ev.value(args); });
  }
  const auto vars = c.closure_variables();
  const Formula gap = gap_formula(c);
  const ProductOracle oracle(m, horizon, OracleOptions{opts.frontier_cap, true});
  return detail::check_tuples(c, m, closure_horizon, opts, std::move(report),
                              [&](const std::vector<Element>& args) {
                                Environment env;
                                for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = args[i];
                                return oracle.eval(gap, env);
                              });
}

}  // namespace aaw

#endif  // AAW_EVAL_HPP
