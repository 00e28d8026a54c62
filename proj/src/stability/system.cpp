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


#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dynot/bottleneck.hpp"
#include "dynot/error.hpp"
#include "dynot/geometry.hpp"
#include "dynot/stability.hpp"

namespace dynot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_nonempty(const AtomSet& a, const char* what) {
  if (a.empty()) throw Error(ErrorCode::kEmptySet, std::string(what) + " is empty");
}

/// Plain scalar d(x, A), kept apart from the vectorized geometry kernels.
double scalar_point_to_set(const FiniteMetricSpace& space, AtomIndex x, const AtomSet& a) {
  double best = kInf;
  for (const AtomIndex y : a) best = std::min(best, space.dist(x, y));
  return best;
}

/// Calls visit(parts) for every way to write `total` as `slots` nonnegative parts.
template <typename Visit>
void for_each_composition(std::int64_t total, std::size_t slots, std::vector<std::int64_t>& parts,
                          std::size_t at, Visit& visit) {
  if (at + 1 == slots) {
    parts[at] = total;
    visit(parts);
    return;
  }
  for (std::int64_t k = 0; k <= total; ++k) {
    parts[at] = k;
    for_each_composition(total - k, slots, parts, at + 1, visit);
  }
}

double binomial(std::size_t n, std::size_t k) {
  double r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace

MapSystem::MapSystem(SpacePtr space, std::vector<AtomIndex> map) : space_(std::move(space)), map_(std::move(map)) {
  if (map_.size() != space_->size()) {
    throw Error(ErrorCode::kMalformedInput, "map has " + std::to_string(map_.size()) + " images for " +
                                                std::to_string(space_->size()) + " points");
  }
  for (const AtomIndex y : map_) {
    if (y >= space_->size()) throw Error(ErrorCode::kMalformedInput, "map image outside the space");
  }
}

MapSystem MapSystem::identity(SpacePtr space) {
  std::vector<AtomIndex> map(space->size());
  for (AtomIndex i = 0; i < map.size(); ++i) map[i] = i;
  return MapSystem(std::move(space), std::move(map));
}

AtomIndex MapSystem::iterate(AtomIndex x, std::size_t n) const {
  for (std::size_t k = 0; k < n; ++k) x = map_[x];
  return x;
}

AtomSet MapSystem::image(const AtomSet& a, std::size_t n) const {
  AtomSet out = a;
  for (std::size_t k = 0; k < n; ++k) out = dynot::image(map_, out);
  return out;
}

DiscreteMeasure MapSystem::push(const DiscreteMeasure& mu, std::size_t n) const {
  DiscreteMeasure out = mu;
  for (std::size_t k = 0; k < n; ++k) out = out.pushforward(map_);
  return out;
}

bool MapSystem::is_invariant(const AtomSet& a) const { return is_subset(image(a), a); }

bool MapSystem::fixes(const DiscreteMeasure& mu) const { return push(mu) == mu; }

double dist_to_lift(const DiscreteMeasure& mu, const AtomSet& a) {
  require_nonempty(a, "target set");
  const FiniteMetricSpace& space = *mu.space();
  double worst = 0;
  for (const AtomIndex x : mu.support()) worst = std::max(worst, scalar_point_to_set(space, x, a));
  return worst;
}

double dist_to_lift_bruteforce(const DiscreteMeasure& mu, const AtomSet& a, std::int64_t den) {
  require_nonempty(a, "target set");
  if (den < 1) throw Error(ErrorCode::kMalformedInput, "grid denominator must be positive");
  if (binomial(static_cast<std::size_t>(den) + a.size() - 1, a.size() - 1) > 200000) {
    throw Error(ErrorCode::kTooLarge, "weight grid too large for brute force");
  }
  double best = kInf;
  std::vector<std::int64_t> parts(a.size());
  auto visit = [&](const std::vector<std::int64_t>& p) {
    std::vector<std::pair<AtomIndex, Rational>> pairs;
    for (std::size_t i = 0; i < a.size(); ++i) pairs.emplace_back(a[i], make_rational(p[i], den));
    const auto nu = DiscreteMeasure::from_pairs(mu.space(), pairs);
    best = std::min(best, w_infinity(mu, nu).value);
  };
  for_each_composition(den, a.size(), parts, 0, visit);
  return best;
}

LiftHausdorff lift_hausdorff(const SpacePtr& space, const AtomSet& u, const AtomSet& v) {
  require_nonempty(u, "U");
  require_nonempty(v, "V");
  LiftHausdorff out{hausdorff(*space, u, v), 0.0};
  // Point masses are the extreme points of each lift, so they realize the sup.
  for (const AtomIndex x : u) out.lifted = std::max(out.lifted, dist_to_lift(DiscreteMeasure::point_mass(space, x), v));
  for (const AtomIndex y : v) out.lifted = std::max(out.lifted, dist_to_lift(DiscreteMeasure::point_mass(space, y), u));
  return out;
}

}  // namespace dynot
