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


#include "dynot/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "dynot/error.hpp"
#include "dynot/kernels.hpp"

namespace dynot {

namespace {

std::vector<std::uint32_t> narrow(const AtomSet& a) {
  return std::vector<std::uint32_t>(a.begin(), a.end());
}

void require_nonempty(const AtomSet& a, const char* what) {
  if (a.empty()) throw Error(ErrorCode::kEmptySet, std::string(what) + " is empty");
}

}  // namespace

double point_to_set(const FiniteMetricSpace& space, AtomIndex x, const AtomSet& b) {
  require_nonempty(b, "target set");
  const auto idx = narrow(b);
  return kernels::min_at(space.row(x), idx);
}

double directed_distance(const FiniteMetricSpace& space, const AtomSet& a, const AtomSet& b) {
  require_nonempty(a, "source set");
  require_nonempty(b, "target set");
  const auto from = narrow(a);
  const auto to = narrow(b);
  return kernels::max_min(space.matrix(), space.size(), from, to);
}

double hausdorff(const FiniteMetricSpace& space, const AtomSet& a, const AtomSet& b) {
  return std::max(directed_distance(space, a, b), directed_distance(space, b, a));
}

AtomSet open_neighborhood(const FiniteMetricSpace& space, const AtomSet& a, double r) {
  require_nonempty(a, "set");
  const auto idx = narrow(a);
  AtomSet out;
  for (AtomIndex x = 0; x < space.size(); ++x) {
    if (kernels::min_at(space.row(x), idx) < r) out.push_back(x);
  }
  return out;
}

AtomSet closed_neighborhood(const FiniteMetricSpace& space, const AtomSet& a, double r) {
  require_nonempty(a, "set");
  const auto idx = narrow(a);
  AtomSet out;
  for (AtomIndex x = 0; x < space.size(); ++x) {
    if (kernels::min_at(space.row(x), idx) <= r) out.push_back(x);
  }
  return out;
}

AtomSet image(std::span<const AtomIndex> point_map, const AtomSet& a) {
  std::vector<AtomIndex> out;
  out.reserve(a.size());
  for (const AtomIndex x : a) {
    if (x >= point_map.size()) {
      throw Error(ErrorCode::kUnknownAtom, "atom " + std::to_string(x) + " outside the map");
    }
    out.push_back(point_map[x]);
  }
  return make_atom_set(std::move(out));
}

}  // namespace dynot
