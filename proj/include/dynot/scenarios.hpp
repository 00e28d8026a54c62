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

// Two worked systems: a sink/source line and the shear on a torus grid.

#include <cstddef>

#include "dynot/rational.hpp"
#include "dynot/stability.hpp"

namespace dynot {

/// Sink x at 0, basin points k * d_xy / (n_basin + 1) stepping towards x,
/// source y at d_xy. x and y are fixed.
struct SinkSource {
  MapSystem system;
  AtomIndex sink;
  AtomIndex source;
  double d_xy;

  DiscreteMeasure delta_sink() const;
  DiscreteMeasure delta_source() const;
  /// (1 - eps) delta_x + eps delta_y.
  DiscreteMeasure mu_eps(const Rational& eps) const;
};

/// Throws kMalformedInput unless n_basin >= 1 and d_xy > 0.
SinkSource scenario_sink_source(std::size_t n_basin, double d_xy);

/// N x N grid on the flat unit torus with f(i, j) = ((i + j) mod N, j).
struct TorusShear {
  MapSystem system;
  std::size_t n;

  AtomIndex at(std::size_t i, std::size_t j) const { return static_cast<AtomIndex>(j * n + i); }
  /// Uniform on row 0.
  DiscreteMeasure lambda0() const;
  /// 3/8 at i = 0 and N/4, 1/8 at i = N/2 and 3N/4, all on row 0.
  DiscreteMeasure nu0() const;
  /// Moves a row-0 measure rigidly to `row`.
  DiscreteMeasure lift(const DiscreteMeasure& row0, std::size_t row) const;
  AtomSet row(std::size_t j) const;
};

/// Throws kMalformedInput unless N >= 4 and N is a multiple of 4.
TorusShear scenario_torus_shear(std::size_t n);

}  // namespace dynot
