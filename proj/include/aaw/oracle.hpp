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

#ifndef AAW_ORACLE_HPP
#define AAW_ORACLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "aaw/model.hpp"
#include "aaw/syntax.hpp"

namespace aaw {

struct OracleOptions {
  std::uint64_t frontier_cap = kDefaultFrontierCap;
  // Enumerate a bounded quantifier over the box below its bound instead of
  // the horizon frontier.
  bool bounded_shortcut = true;
};

// Direct structural semantics on the model: terms by element operations,
// atoms by the integrated metric, quantifiers by enumerating elements.
class ProductOracle {
 public:
  ProductOracle(const Model& m, std::uint64_t horizon, OracleOptions opts = {})
      : model_(m), horizon_(horizon), opts_(opts) {}

  Element term(const Term& t, const Environment& env) const {
    switch (t.kind()) {
      case Term::Kind::Var: {
        const auto it = env.find(t.name());
        if (it == env.end()) throw UnboundVariable(t.name());
        return it->second;
      }
      case Term::Kind::Zero:
        return model_.zero();
      case Term::Kind::One:
        return model_.one();
      case Term::Kind::Add:
        return model_.add(term(t.left(), env), term(t.right(), env));
      case Term::Kind::Mul:
        return model_.mul(term(t.left(), env), term(t.right(), env));
      case Term::Kind::Meet:
        return model_.meet(term(t.left(), env), term(t.right(), env));
      case Term::Kind::Join:
        return model_.join(term(t.left(), env), term(t.right(), env));
    }
    return model_.zero();
  }

  Rational eval(const Formula& f, Environment& env) const {
    switch (f.kind()) {
      case Formula::Kind::Const:
        return f.scalar();
      case Formula::Kind::Dist:
        return model_.dist(term(f.t1(), env), term(f.t2(), env));
      case Formula::Kind::Add:
        return eval(f.left(), env) + eval(f.right(), env);
      case Formula::Kind::Scale:
        return f.scalar() * eval(f.body(), env);
      case Formula::Kind::Sup:
      case Formula::Kind::Inf:
        return quantify(f, env);
    }
    return 0;
  }

  Rational eval(const Formula& f, const Environment& env) const {
    Environment e = env;
    return eval(f, e);
  }

 private:
  const std::vector<Element>& frontier() const {
    if (frontier_.empty()) frontier_ = model_.enumerate(horizon_, opts_.frontier_cap);
    return frontier_;
  }

  Rational quantify(const Formula& f, Environment& env) const {
    std::vector<Element> local;
    const std::vector<Element>* domain = nullptr;
    if (opts_.bounded_shortcut) {
      if (auto t = bounded_pattern(f.var(), f.body())) {
        local = model_.box(term(*t, env), opts_.frontier_cap);
        domain = &local;
      }
    }
    if (!domain) domain = &frontier();

    const auto saved = env.find(f.var()) == env.end()
                           ? std::optional<Element>()
                           : std::optional<Element>(env.at(f.var()));
    const bool sup = f.kind() == Formula::Kind::Sup;
    Rational best;
    bool first = true;
    for (const auto& x : *domain) {
      env[f.var()] = x;
      Rational v = eval(f.body(), env);
      if (first || (sup ? v > best : v < best)) best = std::move(v);
      first = false;
    }
    if (saved) {
      env[f.var()] = *saved;
    } else {
      env.erase(f.var());
    }
    return best;
  }

  Model model_;
  std::uint64_t horizon_;
  OracleOptions opts_;
  mutable std::vector<Element> frontier_;
};

// Tuple-space evaluation, for cross-validation of the fast path.
inline Rational eval_product_oracle(const Formula& f, const Model& m, const Environment& env,
                                    std::uint64_t horizon, OracleOptions opts = {}) {
  for (const auto& v : free_variables(f)) {
    const auto it = env.find(v);
    if (it == env.end()) throw UnboundVariable(v);
  }
  for (const auto& [k, e] : env) m.require(e);
  return ProductOracle(m, horizon, opts).eval(f, env);
}

}  // namespace aaw

#endif  // AAW_ORACLE_HPP
