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
#include <stdexcept>

#include "dynot/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define DYNOT_HAVE_AVX2 1
#include <immintrin.h>
#else
#define DYNOT_HAVE_AVX2 0
#endif

namespace dynot::kernels::avx2 {

#if DYNOT_HAVE_AVX2

#define DYNOT_TARGET_AVX2 __attribute__((target("avx2")))

bool compiled() { return true; }

namespace {

// Lanes j..j+3 of row i. The tail (n % 4) falls back to the scalar formula,
// which performs the identical sequence of operations.
template <bool kWrap>
DYNOT_TARGET_AVX2 void matrix_impl(std::span<const double> coords, std::size_t n,
                                   std::size_t dims, std::span<double> out) {
  const double* c = coords.data();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t d = 0; d < dims; ++d) {
        const __m256d xi = _mm256_broadcast_sd(c + d * n + i);
        const __m256d xj = _mm256_loadu_pd(c + d * n + j);
        __m256d diff = _mm256_sub_pd(xi, xj);
        if constexpr (kWrap) {
          const __m256d r = _mm256_round_pd(diff, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
          diff = _mm256_sub_pd(diff, r);
        }
        acc = _mm256_add_pd(acc, _mm256_mul_pd(diff, diff));
      }
      _mm256_storeu_pd(out.data() + i * n + j, _mm256_sqrt_pd(acc));
    }
    for (; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t d = 0; d < dims; ++d) {
        double diff = c[d * n + i] - c[d * n + j];
        if constexpr (kWrap) diff = diff - std::nearbyint(diff);
        acc = acc + diff * diff;
      }
      out[i * n + j] = std::sqrt(acc);
    }
  }
}

DYNOT_TARGET_AVX2 double min_at_impl(const double* row, const std::uint32_t* idx,
                                     std::size_t count) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t k = 0;
  if (count >= 4) {
    __m256d vbest = _mm256_set1_pd(best);
    for (; k + 4 <= count; k += 4) {
      const __m128i vi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + k));
      vbest = _mm256_min_pd(vbest, _mm256_i32gather_pd(row, vi, 8));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, vbest);
    best = std::min(std::min(lanes[0], lanes[1]), std::min(lanes[2], lanes[3]));
  }
  for (; k < count; ++k) best = std::min(best, row[idx[k]]);
  return best;
}

}  // namespace

void euclidean_matrix(std::span<const double> coords, std::size_t n, std::size_t dims,
                      std::span<double> out) {
  matrix_impl<false>(coords, n, dims, out);
}

void torus_matrix(std::span<const double> coords, std::size_t n, std::size_t dims,
                  std::span<double> out) {
  matrix_impl<true>(coords, n, dims, out);
}

double min_at(std::span<const double> row, std::span<const std::uint32_t> idx) {
  return min_at_impl(row.data(), idx.data(), idx.size());
}

double max_min(std::span<const double> dist, std::size_t n, std::span<const std::uint32_t> from,
               std::span<const std::uint32_t> to) {
  double worst = 0.0;
  for (const std::uint32_t a : from) {
    worst = std::max(worst, min_at_impl(dist.data() + a * n, to.data(), to.size()));
  }
  return worst;
}

#else

bool compiled() { return false; }

void euclidean_matrix(std::span<const double>, std::size_t, std::size_t, std::span<double>) {
  throw std::logic_error("AVX2 kernels not compiled for this target");
}
void torus_matrix(std::span<const double>, std::size_t, std::size_t, std::span<double>) {
  throw std::logic_error("AVX2 kernels not compiled for this target");
}
double min_at(std::span<const double>, std::span<const std::uint32_t>) {
  throw std::logic_error("AVX2 kernels not compiled for this target");
}
double max_min(std::span<const double>, std::size_t, std::span<const std::uint32_t>,
               std::span<const std::uint32_t>) {
  throw std::logic_error("AVX2 kernels not compiled for this target");
}

#endif

}  // namespace dynot::kernels::avx2
