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


#include "dynot/plan.hpp"

#include <algorithm>
#include <map>

#include "dynot/error.hpp"

namespace dynot {

TransportPlan TransportPlan::make(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                  std::vector<PlanEntry> entries) {
  require_same_space(mu, nu);
  std::map<std::pair<AtomIndex, AtomIndex>, Rational> merged;
  for (auto& e : entries) {
    if (e.mass < 0) throw Error(ErrorCode::kMalformedInput, "negative plan mass");
    if (e.mass == 0) continue;
    merged[{e.from, e.to}] += e.mass;
  }
  std::map<AtomIndex, Rational> rows;
  std::map<AtomIndex, Rational> cols;
  std::vector<PlanEntry> out;
  out.reserve(merged.size());
  for (auto& [key, mass] : merged) {
    rows[key.first] += mass;
    cols[key.second] += mass;
    out.push_back({key.first, key.second, mass});
  }
  if (rows != mu.weights()) throw Error(ErrorCode::kMalformedInput, "plan rows do not sum to mu");
  if (cols != nu.weights()) throw Error(ErrorCode::kMalformedInput, "plan columns do not sum to nu");
  return TransportPlan(mu, nu, std::move(out));
}

double bottleneck_of_plan(const TransportPlan& plan) {
  const FiniteMetricSpace& space = *plan.mu().space();
  double worst = 0.0;
  for (const auto& e : plan.entries()) worst = std::max(worst, space.dist(e.from, e.to));
  return worst;
}

std::pair<IntervalRepresentation, IntervalRepresentation> representations_from_plan(
    const TransportPlan& plan) {
  require_probability(plan.mu());
  std::vector<IntervalPiece> f;
  std::vector<IntervalPiece> g;
  Rational cursor(0);
  for (const auto& e : plan.entries()) {
    Rational next = cursor + e.mass;
    f.push_back({cursor, next, e.from});
    g.push_back({cursor, next, e.to});
    cursor = std::move(next);
  }
  return {IntervalRepresentation::from_segments(plan.mu().space(), std::move(f)),
          IntervalRepresentation::from_segments(plan.mu().space(), std::move(g))};
}

}  // namespace dynot
