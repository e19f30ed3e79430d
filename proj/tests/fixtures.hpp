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

// Hand-labeled data shared by the unit tests and the acceptance binary.

#ifndef AAW_TESTS_FIXTURES_HPP
#define AAW_TESTS_FIXTURES_HPP

#include <string>
#include <vector>

namespace aaw::testing {

struct ClassifyCase {
  const char* formula;
  const char* expected;  // HierarchyClass::name()
};

// A bound that mentions a variable of an enclosing unbounded quantifier does
// not make a quantifier bounded.
inline const std::vector<ClassifyCase>& classify_fixture() {
  static const std::vector<ClassifyCase> cases = {
      {"d(x, y)", "Sigma_0"},
      {"1", "Sigma_0"},
      {"sup x . d(x, y)", "Sigma_1"},
      {"inf x . d(x, y)", "Pi_1"},
      {"inf y . sup x . d(x /\\ y, z)", "Pi_2"},
      {"sup x . d(x /\\ y, z)", "Sigma_0"},
      {"sup x <= y . d(x, 1)", "Sigma_0"},
      {"inf x <= y + z . d(x * x, y)", "Sigma_0"},
      {"inf x <= 3 . sup y <= x . d(x, y)", "Sigma_0"},
      {"sup x <= y . inf z . d(x, z)", "Pi_1"},
      {"sup x . sup y <= x . d(x, y)", "Sigma_1"},
      {"sup x . inf y <= x . d(x, y * y)", "Sigma_2"},
      {"inf x . d(x /\\ y, x)", "Pi_1"},
      {"inf x . inf y . sup z . d(x + y, z)", "Pi_2"},
      {"sup x . inf y . sup z . d(x, y + z)", "Sigma_3"},
      {"d(x, y) + sup z . d(z, x)", "Sigma_1"},
      {"-1 * sup z . d(z, x)", "Pi_1"},
      {"1/2 * (inf z . d(z, x)) + d(x, 0)", "Pi_1"},
      {"sup x . d(x, y) + inf z . d(z, y)", "Sigma_2"},
      {"(sup x . d(x, y)) + (inf z . d(z, y))", "Sigma_2"},
  };
  return cases;
}

}  // namespace aaw::testing

#endif  // AAW_TESTS_FIXTURES_HPP
