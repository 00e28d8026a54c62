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


#include "dynot/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include "dynot/error.hpp"

namespace dynot::io {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedInput, what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string label_of(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  malformed("atom labels must be strings or integers");
}

std::vector<std::vector<double>> real_rows(const Json& j, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + " must be an array of arrays");
  std::vector<std::vector<double>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) malformed(std::string(what) + " must be an array of arrays");
    std::vector<double> row;
    for (const auto& v : r) {
      if (!v.is_number()) malformed(std::string(what) + " entries must be numbers");
      row.push_back(v.get<double>());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::int64_t integer(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) malformed(std::string("field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    malformed("'" + path + "': " + e.what());
  }
}

SpacePtr parse_space(const Json& j) {
  const Json& pts = field(j, "points");
  if (!pts.is_array()) malformed("'points' must be an array");
  std::vector<std::string> ids;
  for (const auto& p : pts) ids.push_back(label_of(p));
  const Json& rule = field(j, "metric");
  if (!rule.is_string()) malformed("'metric' must be a string");
  const std::string name = rule.get<std::string>();
  if (name == "euclidean") {
    return share(FiniteMetricSpace::euclidean(std::move(ids), real_rows(field(j, "coords"), "coords")));
  }
  if (name == "torus") {
    return share(FiniteMetricSpace::torus(std::move(ids), real_rows(field(j, "coords"), "coords")));
  }
  if (name == "matrix") {
    return share(FiniteMetricSpace::from_matrix(std::move(ids), real_rows(field(j, "matrix"), "matrix")));
  }
  malformed("unknown metric '" + name + "'");
}

Json space_to_json(const FiniteMetricSpace& space) {
  Json j;
  j["points"] = space.ids();
  j["metric"] = metric_rule_name(space.rule());
  if (space.rule() == MetricRule::kMatrix) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < space.size(); ++i) {
      const auto r = space.row(i);
      rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    j["matrix"] = std::move(rows);
  } else {
    j["coords"] = space.coords();
  }
  return j;
}

Rational parse_weight(const Json& j) {
  if (!j.is_object()) malformed("weights must be objects with 'num' and 'den'");
  const std::int64_t num = integer(j, "num");
  const std::int64_t den = j.contains("den") ? integer(j, "den") : 1;
  if (num < 0) malformed("negative weight " + std::to_string(num));
  return make_rational(num, den);
}

Json rational_to_json(const Rational& r) {
  Json j;
  if (r.get_num().fits_slong_p() && r.get_den().fits_slong_p()) {
    j["num"] = r.get_num().get_si();
    j["den"] = r.get_den().get_si();
  } else {
    j["num"] = r.get_num().get_str();
    j["den"] = r.get_den().get_str();
  }
  return j;
}

DiscreteMeasure parse_measure(const Json& j, const SpacePtr& fallback) {
  if (!j.is_object()) malformed("a measure must be an object");
  SpacePtr space = fallback;
  if (j.contains("space")) {
    SpacePtr own = parse_space(j.at("space"));
    if (fallback && !same_space(own, fallback)) {
      throw Error(ErrorCode::kSpaceMismatch, "measure space differs from the enclosing space");
    }
    space = fallback ? fallback : own;
  }
  if (!space) malformed("measure has no 'space'");
  const Json& ws = field(j, "weights");
  if (!ws.is_array()) malformed("'weights' must be an array");
  std::vector<std::pair<AtomIndex, Rational>> pairs;
  for (const auto& w : ws) {
    pairs.emplace_back(space->require_index(label_of(field(w, "atom"))), parse_weight(w));
  }
  return DiscreteMeasure::from_pairs(space, pairs);
}

Json weights_to_json(const DiscreteMeasure& mu) {
  Json ws = Json::array();
  for (const auto& [atom, w] : mu.weights()) {
    Json e;
    e["atom"] = mu.space()->id(atom);
    e.update(rational_to_json(w));
    ws.push_back(std::move(e));
  }
  return ws;
}

Json measure_to_json(const DiscreteMeasure& mu, bool with_space) {
  Json j;
  if (with_space) j["space"] = space_to_json(*mu.space());
  j["weights"] = weights_to_json(mu);
  return j;
}

DiscreteMeasure load_measure_file(const std::string& path) {
  return parse_measure(load_json_file(path));
}

InstanceFile parse_instance(const Json& j) {
  DiscreteMeasure xi = parse_measure(field(j, "xi"));
  const Json& sets = field(j, "sets");
  const Json& targets = field(j, "targets");
  if (!sets.is_array() || !targets.is_array()) malformed("'sets' and 'targets' must be arrays");
  if (sets.size() != targets.size()) malformed("'sets' and 'targets' differ in length");
  InstanceFile out{xi, {}, {}};
  for (const auto& s : sets) {
    if (!s.is_array()) malformed("each set must be an array of labels");
    std::vector<AtomIndex> atoms;
    for (const auto& a : s) atoms.push_back(xi.space()->require_index(label_of(a)));
    out.sets.push_back(make_atom_set(std::move(atoms)));
  }
  for (const auto& t : targets) out.targets.push_back(parse_weight(t));
  return out;
}

SequenceFile parse_sequence(const Json& j) {
  SpacePtr space = parse_space(field(j, "space"));
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) malformed("'terms' must be an array");
  SequenceFile out{space, {}, parse_measure(field(j, "limit"), space)};
  for (const auto& t : terms) out.terms.push_back(parse_measure(t, space));
  return out;
}

void write_matrix_csv(std::ostream& os, const FiniteMetricSpace& space) {
  os << "id";
  for (const auto& id : space.ids()) os << ',' << id;
  os << '\n';
  for (std::size_t i = 0; i < space.size(); ++i) {
    os << space.id(i);
    for (std::size_t k = 0; k < space.size(); ++k) os << ',' << format_distance(space.dist(i, k));
    os << '\n';
  }
}

std::string format_distance(double d) {
  if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", d);
  return buf;
}

}  // namespace dynot::io
