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

#include <span>

#include "dynot/measure.hpp"
#include "dynot/space.hpp"

namespace dynot {

/// d(x, B) = min_{b in B} d(x, b). Throws kEmptySet for empty B.
double point_to_set(const FiniteMetricSpace& space, AtomIndex x, const AtomSet& b);

/// d(A, B) = sup_{a in A} d(a, B). Throws kEmptySet.
double directed_distance(const FiniteMetricSpace& space, const AtomSet& a, const AtomSet& b);

/// d_H(A, B) = max{d(A, B), d(B, A)}. Throws kEmptySet.
double hausdorff(const FiniteMetricSpace& space, const AtomSet& a, const AtomSet& b);

/// Points at distance < r from A.
AtomSet open_neighborhood(const FiniteMetricSpace& space, const AtomSet& a, double r);

/// Points at distance <= r from A.
AtomSet closed_neighborhood(const FiniteMetricSpace& space, const AtomSet& a, double r);

/// f(A) for a total point map.
AtomSet image(std::span<const AtomIndex> point_map, const AtomSet& a);

}  // namespace dynot
