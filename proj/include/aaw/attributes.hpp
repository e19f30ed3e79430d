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

#ifndef AAW_ATTRIBUTES_HPP
#define AAW_ATTRIBUTES_HPP

#include <string>
#include <vector>

#include "aaw/syntax.hpp"

namespace aaw {

struct StaticAttributes {
  Rational bound;      // |value| <= bound in every model
  Rational lipschitz;  // in each free variable, w.r.t. the model metric
  std::vector<std::string> free_vars;
};

namespace detail {

// Every function symbol has Lipschitz constant 1 and d has constant 1, so a
// term moves by at most (occurrences of v) * d(v, v') when v moves.
inline Rational dist_lipschitz(const Term& a, const Term& b) {
  std::set<std::string> vars;
  collect_variables(a, vars);
  collect_variables(b, vars);
  std::size_t best = 0;
  for (const auto& v : vars) best = std::max(best, occurrences(a, v) + occurrences(b, v));
  return Rational(best);
}

inline void bound_and_lipschitz(const Formula& f, Rational& bound, Rational& lip) {
  switch (f.kind()) {
    case Formula::Kind::Const:
      bound = abs(f.scalar());
      lip = 0;
      return;
    case Formula::Kind::Dist:
      bound = 1;
      lip = dist_lipschitz(f.t1(), f.t2());
      return;
    case Formula::Kind::Add: {
      Rational b2, l2;
      bound_and_lipschitz(f.left(), bound, lip);
      bound_and_lipschitz(f.right(), b2, l2);
      bound += b2;
      lip += l2;
      return;
    }
    case Formula::Kind::Scale: {
      bound_and_lipschitz(f.body(), bound, lip);
      const Rational r = abs(f.scalar());
      bound *= r;
      lip *= r;
      return;
    }
    case Formula::Kind::Sup:
    case Formula::Kind::Inf:
      bound_and_lipschitz(f.body(), bound, lip);
      return;
  }
}

}  // namespace detail

inline StaticAttributes attributes(const Formula& f) {
  StaticAttributes a;
  detail::bound_and_lipschitz(f, a.bound, a.lipschitz);
  a.free_vars = free_variables(f);
  return a;
}

}  // namespace aaw

#endif  // AAW_ATTRIBUTES_HPP
