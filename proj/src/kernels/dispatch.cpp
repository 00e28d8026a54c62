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

#include <cstdlib>
#include <string_view>

#include "dynot/kernels.hpp"

namespace dynot::kernels {

Isa best_available() {
#if defined(__x86_64__) || defined(_M_X64)
  __builtin_cpu_init();
  if (avx2::compiled() && __builtin_cpu_supports("avx2")) return Isa::kAvx2;
#endif
  return Isa::kScalar;
}

Isa active() {
  static const Isa isa = [] {
    const Isa best = best_available();
    if (const char* env = std::getenv("DYNOT_ISA")) {
      const std::string_view v(env);
      if (v == "scalar") return Isa::kScalar;
      // Requesting avx2 on a machine without it keeps the scalar path.
      if (v == "avx2") return best;
    }
    return best;
  }();
  return isa;
}

const char* isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

void euclidean_matrix(std::span<const double> coords, std::size_t n, std::size_t dims,
                      std::span<double> out) {
  if (active() == Isa::kAvx2) return avx2::euclidean_matrix(coords, n, dims, out);
  scalar::euclidean_matrix(coords, n, dims, out);
}

void torus_matrix(std::span<const double> coords, std::size_t n, std::size_t dims,
                  std::span<double> out) {
  if (active() == Isa::kAvx2) return avx2::torus_matrix(coords, n, dims, out);
  scalar::torus_matrix(coords, n, dims, out);
}

double min_at(std::span<const double> row, std::span<const std::uint32_t> idx) {
  if (active() == Isa::kAvx2) return avx2::min_at(row, idx);
  return scalar::min_at(row, idx);
}

double max_min(std::span<const double> dist, std::size_t n, std::span<const std::uint32_t> from,
               std::span<const std::uint32_t> to) {
  if (active() == Isa::kAvx2) return avx2::max_min(dist, n, from, to);
  return scalar::max_min(dist, n, from, to);
}

}  // namespace dynot::kernels
