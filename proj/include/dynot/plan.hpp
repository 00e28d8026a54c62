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

#include <utility>
#include <vector>

#include "dynot/interval.hpp"
#include "dynot/measure.hpp"
#include "dynot/rational.hpp"

namespace dynot {

struct PlanEntry {
  AtomIndex from;
  AtomIndex to;
  Rational mass;
};

/// A coupling of mu and nu with exact masses. Entries are sorted by
/// (from, to) and all masses are positive.
class TransportPlan {
 public:
  /// Merges duplicate pairs, drops zero entries and checks both marginals
  /// exactly. Throws kSpaceMismatch or kMalformedInput.
  static TransportPlan make(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                            std::vector<PlanEntry> entries);

  const DiscreteMeasure& mu() const { return mu_; }
  const DiscreteMeasure& nu() const { return nu_; }
  const std::vector<PlanEntry>& entries() const { return entries_; }

 private:
  TransportPlan(DiscreteMeasure mu, DiscreteMeasure nu, std::vector<PlanEntry> entries)
      : mu_(std::move(mu)), nu_(std::move(nu)), entries_(std::move(entries)) {}

  DiscreteMeasure mu_;
  DiscreteMeasure nu_;
  std::vector<PlanEntry> entries_;
};

/// max d(i, j) over the plan's entries; 0 for an empty plan.
double bottleneck_of_plan(const TransportPlan& plan);

/// Interval representations f of mu and g of nu laid out in entry order, so
/// that sup_distance(f, g) equals bottleneck_of_plan(plan).
std::pair<IntervalRepresentation, IntervalRepresentation> representations_from_plan(
    const TransportPlan& plan);

}  // namespace dynot
