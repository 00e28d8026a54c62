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

#include <vector>

#include "dynot/measure.hpp"
#include "dynot/rational.hpp"
#include "dynot/space.hpp"

namespace dynot {

struct IntervalPiece {
  Rational lo;
  Rational hi;
  AtomIndex atom;
};

/// A piecewise-constant map from [0, 1] into the space. Pieces are half-open
/// [lo, hi) except the last, which is closed at 1.
class IntervalRepresentation {
 public:
  /// Validates that the pieces tile [0, 1] in order with positive lengths.
  /// Throws kMalformedInput or kUnknownAtom.
  static IntervalRepresentation from_segments(SpacePtr space, std::vector<IntervalPiece> pieces);

  const SpacePtr& space() const { return space_; }
  const std::vector<IntervalPiece>& pieces() const { return pieces_; }

 private:
  IntervalRepresentation(SpacePtr space, std::vector<IntervalPiece> pieces)
      : space_(std::move(space)), pieces_(std::move(pieces)) {}

  SpacePtr space_;
  std::vector<IntervalPiece> pieces_;
};

/// Canonical layout: atoms in ascending index order, each occupying an
/// interval whose length is its weight. Throws kNotProbability.
IntervalRepresentation interval_representation(const DiscreteMeasure& mu);

/// Pushforward of Lebesgue measure on [0, 1].
DiscreteMeasure lebesgue_pushforward(const IntervalRepresentation& rep);

/// sup_a d(f(a), g(a)) over the common refinement of the two partitions.
/// Throws kSpaceMismatch.
double sup_distance(const IntervalRepresentation& f, const IntervalRepresentation& g);

}  // namespace dynot
