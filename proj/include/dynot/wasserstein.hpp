// Copyright 2026 The dynot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include "dynot/measure.hpp"
#include "dynot/plan.hpp"

namespace dynot {

/// Largest supports (per side) handled by vertex enumeration.
inline constexpr std::size_t kEnumerationLimit = 5;

/// W_p for p in {1, 2}: vertex enumeration when both supports have at most
/// kEnumerationLimit atoms, min-cost flow otherwise.
/// Throws kUnsupportedP, kSpaceMismatch, kNotProbability.
double w_p(const DiscreteMeasure& mu, const DiscreteMeasure& nu, int p);

/// Minimum over all vertices of the transport polytope, reached as sequences
/// of leaf eliminations. Throws kTooLarge beyond kEnumerationLimit.
TransportPlan w_p_plan_enumerate(const DiscreteMeasure& mu, const DiscreteMeasure& nu, int p);

/// Successive shortest paths.
TransportPlan w_p_plan_flow(const DiscreteMeasure& mu, const DiscreteMeasure& nu, int p);

/// (sum of mass * d^p)^(1/p) with compensated summation.
double plan_cost(const TransportPlan& plan, int p);

}  // namespace dynot
