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


#include "dynot/measure.hpp"

#include <algorithm>
#include <iterator>

#include "dynot/error.hpp"

namespace dynot {

AtomSet make_atom_set(std::vector<AtomIndex> atoms) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  return atoms;
}

bool contains(const AtomSet& set, AtomIndex atom) {
  return std::binary_search(set.begin(), set.end(), atom);
}

AtomSet set_union(const AtomSet& a, const AtomSet& b) {
  AtomSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

AtomSet set_difference(const AtomSet& a, const AtomSet& b) {
  AtomSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const AtomSet& a, const AtomSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

DiscreteMeasure::DiscreteMeasure(SpacePtr space) : space_(std::move(space)), total_(0) {
  if (!space_) throw Error(ErrorCode::kMalformedInput, "measure needs a space");
}

void DiscreteMeasure::add(AtomIndex atom, const Rational& w) {
  if (atom >= space_->size()) {
    throw Error(ErrorCode::kUnknownAtom, "atom index " + std::to_string(atom) +
                                             " outside a space of " +
                                             std::to_string(space_->size()) + " points");
  }
  if (w < 0) throw Error(ErrorCode::kMalformedInput, "negative weight " + to_string(w));
  if (w == 0) return;
  Rational v(w);
  v.canonicalize();
  weights_[atom] += v;
  total_ += v;
}

DiscreteMeasure DiscreteMeasure::from_pairs(
    SpacePtr space, const std::vector<std::pair<AtomIndex, Rational>>& pairs) {
  DiscreteMeasure mu(std::move(space));
  for (const auto& [atom, w] : pairs) mu.add(atom, w);
  return mu;
}

DiscreteMeasure DiscreteMeasure::point_mass(SpacePtr space, AtomIndex atom) {
  DiscreteMeasure mu(std::move(space));
  mu.add(atom, Rational(1));
  return mu;
}

Rational DiscreteMeasure::weight(AtomIndex atom) const {
  const auto it = weights_.find(atom);
  return it == weights_.end() ? Rational(0) : it->second;
}

AtomSet DiscreteMeasure::support() const {
  AtomSet out;
  out.reserve(weights_.size());
  for (const auto& [atom, w] : weights_) out.push_back(atom);
  return out;
}

Rational DiscreteMeasure::mass_of(const AtomSet& atoms) const {
  Rational m(0);
  for (const AtomIndex a : atoms) {
    const auto it = weights_.find(a);
    if (it != weights_.end()) m += it->second;
  }
  return m;
}

DiscreteMeasure DiscreteMeasure::restricted(const AtomSet& atoms) const {
  DiscreteMeasure out(space_);
  for (const auto& [atom, w] : weights_) {
    if (contains(atoms, atom)) out.add(atom, w);
  }
  return out;
}

DiscreteMeasure DiscreteMeasure::scaled(const Rational& factor) const {
  if (factor < 0) throw Error(ErrorCode::kMalformedInput, "negative scale factor");
  DiscreteMeasure out(space_);
  for (const auto& [atom, w] : weights_) out.add(atom, w * factor);
  return out;
}

DiscreteMeasure DiscreteMeasure::pushforward(std::span<const AtomIndex> point_map) const {
  if (point_map.size() != space_->size()) {
    throw Error(ErrorCode::kMalformedInput, "point map is not total on the space");
  }
  DiscreteMeasure out(space_);
  for (const auto& [atom, w] : weights_) out.add(point_map[atom], w);
  return out;
}

DiscreteMeasure& DiscreteMeasure::operator+=(const DiscreteMeasure& other) {
  require_same_space(*this, other);
  for (const auto& [atom, w] : other.weights_) add(atom, w);
  return *this;
}

DiscreteMeasure& DiscreteMeasure::operator-=(const DiscreteMeasure& other) {
  require_same_space(*this, other);
  for (const auto& [atom, w] : other.weights_) {
    auto it = weights_.find(atom);
    const Rational have = it == weights_.end() ? Rational(0) : it->second;
    if (have < w) {
      throw Error(ErrorCode::kMalformedInput, "subtraction would make atom " +
                                                  std::to_string(atom) + " negative");
    }
    if (have == w) {
      weights_.erase(it);
    } else {
      it->second -= w;
    }
    total_ -= w;
  }
  return *this;
}

bool operator==(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  return same_space(a.space_, b.space_) && a.weights_ == b.weights_;
}

void require_probability(const DiscreteMeasure& mu) {
  if (!mu.is_probability()) {
    throw Error(ErrorCode::kNotProbability, "total mass is " + to_string(mu.total_mass()));
  }
}

void require_same_space(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  if (!same_space(a.space(), b.space())) {
    throw Error(ErrorCode::kSpaceMismatch, "measures live on different spaces");
  }
}

}  // namespace dynot
