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

#include "dynot/kernels.hpp"

namespace dynot::kernels::scalar {

void euclidean_matrix(std::span<const double> coords, std::size_t n, std::size_t dims,
                      std::span<double> out) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t d = 0; d < dims; ++d) {
        const double diff = coords[d * n + i] - coords[d * n + j];
        acc = acc + diff * diff;
      }
      out[i * n + j] = std::sqrt(acc);
    }
  }
}

void torus_matrix(std::span<const double> coords, std::size_t n, std::size_t dims,
                  std::span<double> out) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t d = 0; d < dims; ++d) {
        double diff = coords[d * n + i] - coords[d * n + j];
        diff = diff - std::nearbyint(diff);
        acc = acc + diff * diff;
      }
      out[i * n + j] = std::sqrt(acc);
    }
  }
}

double min_at(std::span<const double> row, std::span<const std::uint32_t> idx) {
  double best = std::numeric_limits<double>::infinity();
  for (const std::uint32_t k : idx) best = std::min(best, row[k]);
  return best;
}

double max_min(std::span<const double> dist, std::size_t n, std::span<const std::uint32_t> from,
               std::span<const std::uint32_t> to) {
  double worst = 0.0;
  for (const std::uint32_t a : from) {
    worst = std::max(worst, min_at(dist.subspan(a * n, n), to));
  }
  return worst;
}

}  // namespace dynot::kernels::scalar
