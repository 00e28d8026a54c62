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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dynot {

enum class MetricRule { kEuclidean, kTorus, kMatrix };

const char* metric_rule_name(MetricRule rule);

enum class Validation {
  kNone,
  /// Zero diagonal, symmetry, strictly positive off-diagonal entries.
  kBasic,
  /// kBasic plus the triangle inequality over all triples (O(n^3)).
  kFull,
};

/// A finite set of labeled points with an explicit distance matrix.
///
/// Immutable after construction. Coordinate-based spaces keep their
/// coordinates so they can be written back out; the matrix is always the
/// source of truth for distances.
class FiniteMetricSpace {
 public:
  static FiniteMetricSpace euclidean(std::vector<std::string> ids,
                                     const std::vector<std::vector<double>>& coords,
                                     Validation validation = Validation::kBasic);

  /// Points on the flat unit torus (period 1 in every coordinate).
  static FiniteMetricSpace torus(std::vector<std::string> ids,
                                 const std::vector<std::vector<double>>& coords,
                                 Validation validation = Validation::kBasic);

  static FiniteMetricSpace from_matrix(std::vector<std::string> ids,
                                       const std::vector<std::vector<double>>& matrix,
                                       Validation validation = Validation::kFull);

  std::size_t size() const { return ids_.size(); }
  double dist(std::size_t i, std::size_t j) const { return dist_[i * size() + j]; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(dist_).subspan(i * size(), size());
  }
  std::span<const double> matrix() const { return dist_; }

  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(std::size_t i) const { return ids_[i]; }
  std::optional<std::size_t> index_of(std::string_view id) const;
  /// Throws Error(kUnknownAtom).
  std::size_t require_index(std::string_view id) const;

  MetricRule rule() const { return rule_; }
  /// Per-point coordinates; empty for matrix spaces.
  const std::vector<std::vector<double>>& coords() const { return coords_; }

  double diameter() const;
  /// Smallest distance between two distinct points; +inf for a single point.
  double min_positive_distance() const;

  /// Structural identity: same labels and bit-identical distances.
  bool same_as(const FiniteMetricSpace& other) const;

  /// Throws Error(kMetricViolation) describing the first violation found.
  void validate(Validation validation) const;

 private:
  FiniteMetricSpace(std::vector<std::string> ids, std::vector<double> dist, MetricRule rule,
                    std::vector<std::vector<double>> coords);

  std::vector<std::string> ids_;
  std::vector<double> dist_;
  MetricRule rule_;
  std::vector<std::vector<double>> coords_;
  std::unordered_map<std::string, std::size_t> index_;
};

using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

inline SpacePtr share(FiniteMetricSpace space) {
  return std::make_shared<const FiniteMetricSpace>(std::move(space));
}

/// Pointer identity or structural identity.
bool same_space(const SpacePtr& a, const SpacePtr& b);

/// "0", "1", ..., "n-1".
std::vector<std::string> default_ids(std::size_t n);

}  // namespace dynot
