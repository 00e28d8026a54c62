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

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "dynot/measure.hpp"
#include "dynot/rational.hpp"
#include "dynot/space.hpp"

namespace dynot::io {

using Json = nlohmann::ordered_json;

/// Throws kMalformedInput for unreadable files and JSON syntax errors.
Json load_json_file(const std::string& path);

/// {"points": [labels], "metric": "euclidean"|"torus"|"matrix",
///  "coords": [[...]] | "matrix": [[...]]}. Triangle inequality is checked
/// for matrix spaces only.
SpacePtr parse_space(const Json& j);
Json space_to_json(const FiniteMetricSpace& space);

/// {"space": ..., "weights": [{"atom": label, "num": int, "den": int}]}.
/// `space` may be omitted when `fallback` is given; when both are present
/// they must match (kSpaceMismatch).
DiscreteMeasure parse_measure(const Json& j, const SpacePtr& fallback = nullptr);
Json measure_to_json(const DiscreteMeasure& mu, bool with_space);
/// Weights only, as a list of {"atom", "num", "den"} in lowest terms.
Json weights_to_json(const DiscreteMeasure& mu);

DiscreteMeasure load_measure_file(const std::string& path);

Rational parse_weight(const Json& j);
Json rational_to_json(const Rational& r);

struct InstanceFile {
  DiscreteMeasure xi;
  std::vector<AtomSet> sets;
  std::vector<Rational> targets;
};

/// {"xi": <measure>, "sets": [[labels]], "targets": [{"num", "den"}]}.
InstanceFile parse_instance(const Json& j);

struct SequenceFile {
  SpacePtr space;
  std::vector<DiscreteMeasure> terms;
  DiscreteMeasure limit;
};

/// {"space": ..., "terms": [<measure>], "limit": <measure>}; terms and limit
/// may omit their own space.
SequenceFile parse_sequence(const Json& j);

/// Header row of labels, then one row per point.
void write_matrix_csv(std::ostream& os, const FiniteMetricSpace& space);

/// 12 significant digits.
std::string format_distance(double d);

}  // namespace dynot::io
