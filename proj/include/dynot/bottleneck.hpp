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

#include <cstddef>

#include "dynot/measure.hpp"
#include "dynot/plan.hpp"

namespace dynot {

/// True iff some coupling of mu and nu uses only pairs at distance <= t.
/// Decided by an exact max-flow. Throws kSpaceMismatch, kNotProbability.
bool feasible_at_threshold(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double t);

struct SolveReport {
  double value;
  TransportPlan plan;
  std::size_t thresholds_tested;
  std::size_t feasibility_calls;
};

/// The bottleneck (infinity-Wasserstein) distance with an optimal plan.
/// The value is always 0 or an entry of the distance matrix.
/// Throws kSpaceMismatch, kNotProbability.
SolveReport w_infinity(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Independent oracle: scans candidate thresholds in increasing order and
/// tests the subset condition exhaustively. Throws kTooLarge when
/// |supp mu| * |supp nu| > 36.
double w_infinity_bruteforce(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

}  // namespace dynot
