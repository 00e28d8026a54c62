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
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "dynot/rational.hpp"
#include "dynot/space.hpp"

namespace dynot {

using AtomIndex = std::size_t;

/// Sorted, duplicate-free list of point indices.
using AtomSet = std::vector<AtomIndex>;

AtomSet make_atom_set(std::vector<AtomIndex> atoms);
bool contains(const AtomSet& set, AtomIndex atom);
AtomSet set_union(const AtomSet& a, const AtomSet& b);
AtomSet set_difference(const AtomSet& a, const AtomSet& b);
bool is_subset(const AtomSet& a, const AtomSet& b);

/// A finitely supported measure with exact rational weights.
///
/// Zero weights are never stored, so the key set of weights() is the support.
/// Not necessarily normalized; is_probability() checks total mass 1.
class DiscreteMeasure {
 public:
  explicit DiscreteMeasure(SpacePtr space);

  /// Merges duplicate atoms by summation and drops zero weights.
  /// Throws kUnknownAtom for out-of-range atoms, kMalformedInput for
  /// negative weights.
  static DiscreteMeasure from_pairs(SpacePtr space,
                                    const std::vector<std::pair<AtomIndex, Rational>>& pairs);
  static DiscreteMeasure point_mass(SpacePtr space, AtomIndex atom);

  const SpacePtr& space() const { return space_; }
  const std::map<AtomIndex, Rational>& weights() const { return weights_; }
  Rational weight(AtomIndex atom) const;
  const Rational& total_mass() const { return total_; }
  bool is_probability() const { return total_ == 1; }
  bool is_zero() const { return weights_.empty(); }

  AtomSet support() const;
  /// mu(S).
  Rational mass_of(const AtomSet& atoms) const;

  DiscreteMeasure restricted(const AtomSet& atoms) const;
  DiscreteMeasure scaled(const Rational& factor) const;

  /// f#mu: each atom's mass moves to its image. `point_map` is total on the space.
  DiscreteMeasure pushforward(std::span<const AtomIndex> point_map) const;

  DiscreteMeasure& operator+=(const DiscreteMeasure& other);
  /// Throws kMalformedInput if any weight would go negative.
  DiscreteMeasure& operator-=(const DiscreteMeasure& other);

  friend DiscreteMeasure operator+(DiscreteMeasure a, const DiscreteMeasure& b) { return a += b; }
  friend DiscreteMeasure operator-(DiscreteMeasure a, const DiscreteMeasure& b) { return a -= b; }
  friend bool operator==(const DiscreteMeasure& a, const DiscreteMeasure& b);

 private:
  void add(AtomIndex atom, const Rational& w);

  SpacePtr space_;
  std::map<AtomIndex, Rational> weights_;
  Rational total_;
};

inline DiscreteMeasure make_measure(SpacePtr space,
                                    const std::vector<std::pair<AtomIndex, Rational>>& pairs) {
  return DiscreteMeasure::from_pairs(std::move(space), pairs);
}

inline AtomSet support(const DiscreteMeasure& mu) { return mu.support(); }

inline DiscreteMeasure pushforward(const DiscreteMeasure& mu, std::span<const AtomIndex> point_map) {
  return mu.pushforward(point_map);
}

/// Throws kNotProbability.
void require_probability(const DiscreteMeasure& mu);
/// Throws kSpaceMismatch.
void require_same_space(const DiscreteMeasure& a, const DiscreteMeasure& b);

}  // namespace dynot
