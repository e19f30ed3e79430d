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

#ifndef AAW_AAW_HPP
#define AAW_AAW_HPP

#include "aaw/analysis.hpp"
#include "aaw/attributes.hpp"
#include "aaw/eval.hpp"
#include "aaw/format.hpp"
#include "aaw/kernel.hpp"
#include "aaw/lnp.hpp"
#include "aaw/model.hpp"
#include "aaw/number_theory.hpp"
#include "aaw/oracle.hpp"
#include "aaw/parser.hpp"
#include "aaw/suite.hpp"
#include "aaw/syntax.hpp"

#endif  // AAW_AAW_HPP
