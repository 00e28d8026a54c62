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

#include "dynot/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dynot/error.hpp"
#include "dynot/kernels.hpp"

namespace dynot {

namespace {

// Relative slack for the triangle check; float-derived matrices can miss by
// an ulp or two.
constexpr double kTriangleSlack = 1e-12;

std::vector<double> dim_major(const std::vector<std::vector<double>>& coords, std::size_t& dims) {
  const std::size_t n = coords.size();
  dims = n == 0 ? 0 : coords.front().size();
  for (const auto& c : coords) {
    if (c.size() != dims) {
      throw Error(ErrorCode::kMalformedInput, "points have inconsistent coordinate dimensions");
    }
  }
  std::vector<double> out(n * dims);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < dims; ++d) out[d * n + i] = coords[i][d];
  }
  return out;
}

void check_ids(const std::vector<std::string>& ids, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kMalformedInput, "a space needs at least one point");
  if (ids.size() != n) {
    throw Error(ErrorCode::kMalformedInput, "label count does not match point count");
  }
}

}  // namespace

const char* metric_rule_name(MetricRule rule) {
  switch (rule) {
    case MetricRule::kEuclidean: return "euclidean";
    case MetricRule::kTorus: return "torus";
    case MetricRule::kMatrix: return "matrix";
  }
  return "?";
}

std::vector<std::string> default_ids(std::size_t n) {
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  return ids;
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> ids, std::vector<double> dist,
                                     MetricRule rule, std::vector<std::vector<double>> coords)
    : ids_(std::move(ids)), dist_(std::move(dist)), rule_(rule), coords_(std::move(coords)) {
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], i).second) {
      throw Error(ErrorCode::kMalformedInput, "duplicate point label '" + ids_[i] + "'");
    }
  }
}

FiniteMetricSpace FiniteMetricSpace::euclidean(std::vector<std::string> ids,
                                               const std::vector<std::vector<double>>& coords,
                                               Validation validation) {
  check_ids(ids, coords.size());
  std::size_t dims = 0;
  const auto cm = dim_major(coords, dims);
  std::vector<double> dist(coords.size() * coords.size());
  kernels::euclidean_matrix(cm, coords.size(), dims, dist);
  FiniteMetricSpace space(std::move(ids), std::move(dist), MetricRule::kEuclidean, coords);
  space.validate(validation);
  return space;
}

FiniteMetricSpace FiniteMetricSpace::torus(std::vector<std::string> ids,
                                           const std::vector<std::vector<double>>& coords,
                                           Validation validation) {
  check_ids(ids, coords.size());
  std::size_t dims = 0;
  const auto cm = dim_major(coords, dims);
  std::vector<double> dist(coords.size() * coords.size());
  kernels::torus_matrix(cm, coords.size(), dims, dist);
  FiniteMetricSpace space(std::move(ids), std::move(dist), MetricRule::kTorus, coords);
  space.validate(validation);
  return space;
}

FiniteMetricSpace FiniteMetricSpace::from_matrix(std::vector<std::string> ids,
                                                 const std::vector<std::vector<double>>& matrix,
                                                 Validation validation) {
  const std::size_t n = matrix.size();
  check_ids(ids, n);
  std::vector<double> dist;
  dist.reserve(n * n);
  for (const auto& r : matrix) {
    if (r.size() != n) throw Error(ErrorCode::kMalformedInput, "distance matrix is not square");
    dist.insert(dist.end(), r.begin(), r.end());
  }
  FiniteMetricSpace space(std::move(ids), std::move(dist), MetricRule::kMatrix, {});
  space.validate(validation);
  return space;
}

std::optional<std::size_t> FiniteMetricSpace::index_of(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FiniteMetricSpace::require_index(std::string_view id) const {
  if (auto i = index_of(id)) return *i;
  throw Error(ErrorCode::kUnknownAtom, "no point labeled '" + std::string(id) + "'");
}

double FiniteMetricSpace::diameter() const { return *std::max_element(dist_.begin(), dist_.end()); }

double FiniteMetricSpace::min_positive_distance() const {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) best = std::min(best, dist(i, j));
    }
  }
  return best;
}

bool FiniteMetricSpace::same_as(const FiniteMetricSpace& other) const {
  return ids_ == other.ids_ && dist_ == other.dist_;
}

void FiniteMetricSpace::validate(Validation validation) const {
  if (validation == Validation::kNone) return;
  const std::size_t n = size();
  auto fail = [&](const std::string& what) { throw Error(ErrorCode::kMetricViolation, what); };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = dist(i, j);
      if (!std::isfinite(d) || d < 0) fail("non-finite or negative distance at (" + id(i) + "," + id(j) + ")");
      if (i == j && d != 0) fail("nonzero diagonal at " + id(i));
      if (i != j && d == 0) fail("distinct points " + id(i) + " and " + id(j) + " at distance 0");
      if (d != dist(j, i)) fail("asymmetric distance between " + id(i) + " and " + id(j));
    }
  }
  if (validation != Validation::kFull) return;
  const double scale = std::max(1.0, diameter());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (dist(i, k) > dist(i, j) + dist(j, k) + kTriangleSlack * scale) {
          std::ostringstream os;
          os << "triangle inequality fails for (" << id(i) << "," << id(j) << "," << id(k) << ")";
          fail(os.str());
        }
      }
    }
  }
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

}  // namespace dynot
