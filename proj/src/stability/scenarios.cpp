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


#include "dynot/scenarios.hpp"

#include <string>

#include "dynot/error.hpp"

namespace dynot {

DiscreteMeasure SinkSource::delta_sink() const { return DiscreteMeasure::point_mass(system.space(), sink); }

DiscreteMeasure SinkSource::delta_source() const { return DiscreteMeasure::point_mass(system.space(), source); }

DiscreteMeasure SinkSource::mu_eps(const Rational& eps) const {
  if (eps < 0 || eps > 1) throw Error(ErrorCode::kMalformedInput, "eps must lie in [0, 1]");
  return DiscreteMeasure::from_pairs(system.space(), {{sink, 1 - eps}, {source, eps}});
}

SinkSource scenario_sink_source(std::size_t n_basin, double d_xy) {
  if (n_basin < 1) throw Error(ErrorCode::kMalformedInput, "the basin needs at least one point");
  if (!(d_xy > 0)) throw Error(ErrorCode::kMalformedInput, "d_xy must be positive");
  const double h = d_xy / static_cast<double>(n_basin + 1);
  std::vector<std::string> ids = {"x"};
  std::vector<std::vector<double>> coords = {{0.0}};
  for (std::size_t k = 1; k <= n_basin; ++k) {
    ids.push_back("b" + std::to_string(k));
    coords.push_back({static_cast<double>(k) * h});
  }
  ids.push_back("y");
  coords.push_back({d_xy});
  const auto space = share(FiniteMetricSpace::euclidean(std::move(ids), coords));
  std::vector<AtomIndex> map(n_basin + 2);
  map[0] = 0;
  for (std::size_t k = 1; k <= n_basin; ++k) map[k] = static_cast<AtomIndex>(k - 1);
  map[n_basin + 1] = static_cast<AtomIndex>(n_basin + 1);
  return SinkSource{MapSystem(space, std::move(map)), 0, static_cast<AtomIndex>(n_basin + 1), d_xy};
}

DiscreteMeasure TorusShear::lambda0() const {
  std::vector<std::pair<AtomIndex, Rational>> pairs;
  for (std::size_t i = 0; i < n; ++i) pairs.emplace_back(at(i, 0), make_rational(1, static_cast<std::int64_t>(n)));
  return DiscreteMeasure::from_pairs(system.space(), pairs);
}

DiscreteMeasure TorusShear::nu0() const {
  return DiscreteMeasure::from_pairs(system.space(), {{at(0, 0), make_rational(3, 8)},
                                                      {at(n / 4, 0), make_rational(3, 8)},
                                                      {at(n / 2, 0), make_rational(1, 8)},
                                                      {at(3 * n / 4, 0), make_rational(1, 8)}});
}

DiscreteMeasure TorusShear::lift(const DiscreteMeasure& row0, std::size_t j) const {
  std::vector<std::pair<AtomIndex, Rational>> pairs;
  for (const AtomIndex a : row0.support()) {
    if (a >= n) throw Error(ErrorCode::kMalformedInput, "measure is not supported on row 0");
    pairs.emplace_back(at(a, j % n), row0.weight(a));
  }
  return DiscreteMeasure::from_pairs(system.space(), pairs);
}

AtomSet TorusShear::row(std::size_t j) const {
  AtomSet out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(at(i, j));
  return out;
}

TorusShear scenario_torus_shear(std::size_t n) {
  if (n < 4 || n % 4 != 0) throw Error(ErrorCode::kMalformedInput, "N must be a multiple of 4 and at least 4");
  std::vector<std::string> ids;
  std::vector<std::vector<double>> coords;
  std::vector<AtomIndex> map;
  const double step = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      ids.push_back(std::to_string(i) + "," + std::to_string(j));
      coords.push_back({static_cast<double>(i) * step, static_cast<double>(j) * step});
      map.push_back(static_cast<AtomIndex>(j * n + (i + j) % n));
    }
  }
  auto space = share(FiniteMetricSpace::torus(std::move(ids), coords));
  return TorusShear{MapSystem(std::move(space), std::move(map)), n};
}

}  // namespace dynot
