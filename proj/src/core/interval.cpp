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


#include "dynot/interval.hpp"

#include <algorithm>

#include "dynot/error.hpp"

namespace dynot {

IntervalRepresentation IntervalRepresentation::from_segments(SpacePtr space,
                                                             std::vector<IntervalPiece> pieces) {
  if (!space) throw Error(ErrorCode::kMalformedInput, "representation needs a space");
  if (pieces.empty()) throw Error(ErrorCode::kMalformedInput, "representation has no pieces");
  Rational cursor(0);
  for (const auto& piece : pieces) {
    if (piece.atom >= space->size()) {
      throw Error(ErrorCode::kUnknownAtom, "piece maps to atom " + std::to_string(piece.atom));
    }
    if (piece.lo != cursor || piece.hi <= piece.lo) {
      throw Error(ErrorCode::kMalformedInput,
                  "pieces do not tile [0,1] at " + to_string(piece.lo));
    }
    cursor = piece.hi;
  }
  if (cursor != 1) throw Error(ErrorCode::kMalformedInput, "pieces end at " + to_string(cursor));
  return IntervalRepresentation(std::move(space), std::move(pieces));
}

IntervalRepresentation interval_representation(const DiscreteMeasure& mu) {
  require_probability(mu);
  std::vector<IntervalPiece> pieces;
  pieces.reserve(mu.weights().size());
  Rational cursor(0);
  for (const auto& [atom, w] : mu.weights()) {
    Rational next = cursor + w;
    pieces.push_back({cursor, next, atom});
    cursor = std::move(next);
  }
  return IntervalRepresentation::from_segments(mu.space(), std::move(pieces));
}

DiscreteMeasure lebesgue_pushforward(const IntervalRepresentation& rep) {
  std::vector<std::pair<AtomIndex, Rational>> pairs;
  pairs.reserve(rep.pieces().size());
  for (const auto& piece : rep.pieces()) pairs.emplace_back(piece.atom, piece.hi - piece.lo);
  return DiscreteMeasure::from_pairs(rep.space(), pairs);
}

double sup_distance(const IntervalRepresentation& f, const IntervalRepresentation& g) {
  if (!same_space(f.space(), g.space())) {
    throw Error(ErrorCode::kSpaceMismatch, "representations live on different spaces");
  }
  const auto& a = f.pieces();
  const auto& b = g.pieces();
  const FiniteMetricSpace& space = *f.space();
  double worst = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  // Both partitions start at 0 and end at 1, so every step advances past a
  // cell of the common refinement with positive length.
  while (i < a.size() && j < b.size()) {
    worst = std::max(worst, space.dist(a[i].atom, b[j].atom));
    const int c = cmp(a[i].hi, b[j].hi);
    if (c <= 0) ++i;
    if (c >= 0) ++j;
  }
  return worst;
}

}  // namespace dynot
