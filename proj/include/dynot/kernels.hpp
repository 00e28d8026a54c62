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

// Data-parallel inner loops over distance matrices.
//
// Every kernel has a scalar reference implementation and an AVX2 variant.
// The variants evaluate the same floating-point operations in the same order
// (no FMA, correctly rounded sqrt/round), so their outputs are bit-identical;
// the equivalence tests rely on this. The variant is picked at runtime from
// the CPU features, and can be forced with DYNOT_ISA=scalar|avx2.

#include <cstddef>
#include <cstdint>
#include <span>

namespace dynot::kernels {

enum class Isa { kScalar, kAvx2 };

/// Best variant the running CPU supports.
Isa best_available();

/// Variant used by the dispatching entry points. Reads DYNOT_ISA once.
Isa active();

const char* isa_name(Isa isa);

// Coordinates are stored dimension-major: coords[d * n + i] is coordinate d
// of point i. `out` receives the full n x n matrix, row-major.

namespace scalar {
void euclidean_matrix(std::span<const double> coords, std::size_t n, std::size_t dims,
                      std::span<double> out);
void torus_matrix(std::span<const double> coords, std::size_t n, std::size_t dims,
                  std::span<double> out);
double min_at(std::span<const double> row, std::span<const std::uint32_t> idx);
double max_min(std::span<const double> dist, std::size_t n, std::span<const std::uint32_t> from,
               std::span<const std::uint32_t> to);
}  // namespace scalar

namespace avx2 {
bool compiled();
void euclidean_matrix(std::span<const double> coords, std::size_t n, std::size_t dims,
                      std::span<double> out);
void torus_matrix(std::span<const double> coords, std::size_t n, std::size_t dims,
                  std::span<double> out);
double min_at(std::span<const double> row, std::span<const std::uint32_t> idx);
double max_min(std::span<const double> dist, std::size_t n, std::span<const std::uint32_t> from,
               std::span<const std::uint32_t> to);
}  // namespace avx2

void euclidean_matrix(std::span<const double> coords, std::size_t n, std::size_t dims,
                      std::span<double> out);

/// Flat unit torus: each coordinate difference is wrapped to [-1/2, 1/2]
/// before the Euclidean norm.
void torus_matrix(std::span<const double> coords, std::size_t n, std::size_t dims,
                  std::span<double> out);

/// min_k row[idx[k]]; +inf for an empty index list.
double min_at(std::span<const double> row, std::span<const std::uint32_t> idx);

/// max_{a in from} min_{b in to} dist[a * n + b]; the directed set distance.
/// 0 for an empty `from`.
double max_min(std::span<const double> dist, std::size_t n, std::span<const std::uint32_t> from,
               std::span<const std::uint32_t> to);

}  // namespace dynot::kernels
