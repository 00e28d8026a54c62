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


#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dynot/bottleneck.hpp"
#include "dynot/convergence.hpp"
#include "dynot/decomposition.hpp"
#include "dynot/error.hpp"
#include "dynot/io.hpp"
#include "dynot/plan.hpp"
#include "dynot/scenarios.hpp"
#include "dynot/stability.hpp"
#include "dynot/wasserstein.hpp"

namespace dynot::cli {

namespace {

using io::Json;

constexpr const char* kFooter =
    "Exit codes:\n"
    "  0  ok (valid, consistent, or stable at resolution)\n"
    "  2  malformed input or usage error\n"
    "  3  measures on different spaces\n"
    "  4  infeasible decomposition instance\n"
    "  5  sequence is not d-convergent (witness printed)\n"
    "  6  inconclusive on the given evidence\n"
    "  7  unstable (witness printed)\n";

struct Common {
  std::string format;
  std::string output;
  std::string export_matrix;
  std::uint64_t seed = 0;
};

struct Rendered {
  Json json;
  std::string table;
  std::string csv;
};

Json num(double d) {
  if (std::isinf(d)) return "inf";
  return std::stod(io::format_distance(d));
}

std::string str(double d) { return io::format_distance(d); }

Json labels(const FiniteMetricSpace& space, const AtomSet& atoms) {
  Json out = Json::array();
  for (const AtomIndex a : atoms) out.push_back(space.id(a));
  return out;
}

std::string label_list(const FiniteMetricSpace& space, const AtomSet& atoms) {
  std::string s = "{";
  for (std::size_t i = 0; i < atoms.size(); ++i) s += (i ? "," : "") + space.id(atoms[i]);
  return s + "}";
}

Json optional_index(const std::optional<std::size_t>& i) { return i ? Json(*i) : Json(nullptr); }

Json plan_json(const TransportPlan& plan) {
  const FiniteMetricSpace& space = *plan.mu().space();
  Json out = Json::array();
  for (const auto& e : plan.entries()) {
    out.push_back({{"from", space.id(e.from)},
                   {"to", space.id(e.to)},
                   {"mass", to_string(e.mass)},
                   {"distance", num(space.dist(e.from, e.to))}});
  }
  return out;
}

void plan_rows(const TransportPlan& plan, std::string& table, std::string& csv) {
  const FiniteMetricSpace& space = *plan.mu().space();
  std::ostringstream t, c;
  t << "from\tto\tmass\tdistance\n";
  c << "from,to,mass,distance\n";
  for (const auto& e : plan.entries()) {
    const std::string d = str(space.dist(e.from, e.to));
    t << space.id(e.from) << '\t' << space.id(e.to) << '\t' << to_string(e.mass) << '\t' << d << '\n';
    c << space.id(e.from) << ',' << space.id(e.to) << ',' << to_string(e.mass) << ',' << d << '\n';
  }
  table += t.str();
  csv += c.str();
}

void export_matrix(const Common& common, const FiniteMetricSpace& space) {
  if (common.export_matrix.empty()) return;
  std::ofstream f(common.export_matrix);
  if (!f) throw Error(ErrorCode::kMalformedInput, "cannot write '" + common.export_matrix + "'");
  io::write_matrix_csv(f, space);
}

void emit(const Common& common, const Rendered& r, std::ostream& out) {
  std::string text;
  if (common.format == "json") {
    text = r.json.dump(2) + "\n";
  } else if (common.format == "csv") {
    text = r.csv;
  } else {
    text = r.table;
  }
  if (common.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(common.output, std::ios::binary);
  if (!f) throw Error(ErrorCode::kMalformedInput, "cannot write '" + common.output + "'");
  f << text;
}

std::pair<DiscreteMeasure, DiscreteMeasure> load_pair(const std::string& a, const std::string& b) {
  DiscreteMeasure mu = io::load_measure_file(a);
  DiscreteMeasure nu = io::load_measure_file(b);
  require_same_space(mu, nu);
  return {std::move(mu), std::move(nu)};
}

// ---- dist / plan ----

int cmd_dist(const Common& common, const std::string& a, const std::string& b, const std::vector<int>& ps,
             bool with_plan, std::ostream& out) {
  const auto [mu, nu] = load_pair(a, b);
  export_matrix(common, *mu.space());
  const SolveReport rep = w_infinity(mu, nu);
  Rendered r;
  r.json["w_infinity"] = num(rep.value);
  r.table = "w_infinity\t" + str(rep.value) + "\n";
  r.csv = "metric,value\nw_infinity," + str(rep.value) + "\n";
  for (const int p : ps) {
    const double v = w_p(mu, nu, p);
    const std::string key = "w" + std::to_string(p);
    r.json[key] = num(v);
    r.table += key + "\t" + str(v) + "\n";
    r.csv += key + "," + str(v) + "\n";
  }
  if (with_plan) {
    r.json["plan"] = plan_json(rep.plan);
    r.table += "\n";
    std::string ignored;
    plan_rows(rep.plan, r.table, ignored);
  }
  emit(common, r, out);
  return kOk;
}

int cmd_plan(const Common& common, const std::string& a, const std::string& b, int p, std::ostream& out) {
  const auto [mu, nu] = load_pair(a, b);
  export_matrix(common, *mu.space());
  Rendered r;
  if (p == 0) {
    const SolveReport rep = w_infinity(mu, nu);
    r.json["objective"] = "w_infinity";
    r.json["value"] = num(rep.value);
    r.json["plan"] = plan_json(rep.plan);
    r.table = "w_infinity\t" + str(rep.value) + "\n";
    plan_rows(rep.plan, r.table, r.csv);
  } else {
    const TransportPlan plan = w_p_plan_flow(mu, nu, p);
    const double cost = plan_cost(plan, p);
    const std::string key = "w" + std::to_string(p);
    r.json["objective"] = key;
    r.json["value"] = num(cost);
    r.json["plan"] = plan_json(plan);
    r.table = key + "\t" + str(cost) + "\n";
    plan_rows(plan, r.table, r.csv);
  }
  emit(common, r, out);
  return kOk;
}

// ---- decompose ----

Json mask_json(IndexMask mask) {
  Json out = Json::array();
  for (std::size_t i = 0; i < 32; ++i) {
    if (mask >> i & 1) out.push_back(i + 1);
  }
  return out;
}

int cmd_decompose(const Common& common, const std::string& path, std::ostream& out) {
  const io::InstanceFile file = io::parse_instance(io::load_json_file(path));
  const DecompositionInstance inst{file.xi, file.sets, file.targets};
  const FiniteMetricSpace& space = *inst.xi.space();
  export_matrix(common, space);
  Rendered r;
  const FeasibilityVerdict fv = check_feasibility(inst);
  if (!fv.feasible) {
    r.json = {{"feasible", false},
              {"condition", fv.condition},
              {"witness", mask_json(fv.witness)},
              {"lhs", to_string(fv.lhs)},
              {"rhs", to_string(fv.rhs)}};
    r.table = "infeasible\t" + fv.condition + "\nwitness\t" + mask_to_string(fv.witness) + "\nlhs\t" +
              to_string(fv.lhs) + "\nrhs\t" + to_string(fv.rhs) + "\n";
    r.csv = "condition,witness,lhs,rhs\n" + fv.condition + ",\"" + mask_to_string(fv.witness) + "\"," +
            to_string(fv.lhs) + "," + to_string(fv.rhs) + "\n";
    emit(common, r, out);
    return kInfeasible;
  }
  const DecompositionResult res = decompose(inst);
  const VerifyVerdict vv = verify_decomposition(inst, res.components);
  Json comps = Json::array();
  std::ostringstream table, csv;
  table << "component\tatom\tmass\n";
  csv << "component,atom,mass\n";
  for (std::size_t i = 0; i < res.components.size(); ++i) {
    comps.push_back({{"set", i + 1},
                     {"target", to_string(inst.targets[i])},
                     {"weights", io::weights_to_json(res.components[i])}});
    for (const AtomIndex a : res.components[i].support()) {
      table << (i + 1) << '\t' << space.id(a) << '\t' << to_string(res.components[i].weight(a)) << '\n';
      csv << (i + 1) << ',' << space.id(a) << ',' << to_string(res.components[i].weight(a)) << '\n';
    }
  }
  Json trace = Json::array();
  std::string labels_line;
  for (const auto& step : res.trace) {
    trace.push_back({{"label", case_label_name(step.label)}, {"depth", step.depth}, {"m", step.m}});
    labels_line += (labels_line.empty() ? "" : " ") + std::string(case_label_name(step.label));
  }
  r.json = {{"feasible", true},
            {"components", comps},
            {"trace", trace},
            {"max_depth", res.max_depth},
            {"verification", {{"valid", vv.valid}, {"condition", vv.condition}, {"index", vv.index}}}};
  r.table = table.str() + "trace\t" + labels_line + "\nmax_depth\t" + std::to_string(res.max_depth) +
            "\nverification\t" + (vv.valid ? "valid" : "invalid " + vv.condition) + "\n";
  r.csv = csv.str();
  emit(common, r, out);
  return vv.valid ? kOk : 1;
}

// ---- converge / compare ----

MeasureSequence load_sequence(const std::string& path) {
  io::SequenceFile f = io::parse_sequence(io::load_json_file(path));
  return MeasureSequence{f.space, std::move(f.terms), std::move(f.limit)};
}

Json criterion_json(const CriterionResult& c) { return {{"pass", c.pass}, {"index", optional_index(c.index)}}; }

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::kConsistent: return kOk;
    case Verdict::kNotDConvergent: return kNotDConvergent;
    case Verdict::kInconclusive: return kInconclusive;
  }
  return kInconclusive;
}

int cmd_converge(const Common& common, const std::string& path, const ConvergenceOptions& options,
                 std::ostream& out) {
  const MeasureSequence seq = load_sequence(path);
  const FiniteMetricSpace& space = *seq.space;
  export_matrix(common, space);
  const ConvergenceReport rep = d_convergence_verdict(seq, options);
  Rendered r;
  r.json["verdict"] = verdict_name(rep.overall);
  r.json["evidence"] = "finite prefix of " + std::to_string(seq.terms.size()) + " terms";
  r.json["theorem_verdict"] = verdict_name(rep.theorem_verdict);
  r.json["direct_verdict"] = verdict_name(rep.direct_verdict);
  r.json["agreement"] = rep.agreement;
  r.json["resolution"] = num(rep.resolution);
  r.json["criteria"] = {{"w_proxy", criterion_json(rep.w_proxy)},
                        {"separating_mass", criterion_json(rep.separating_mass)},
                        {"support_hausdorff", criterion_json(rep.support_convergence)},
                        {"direct_delta", criterion_json(rep.direct_delta)}};
  if (rep.witness) {
    r.json["witness"] = {{"criterion", rep.witness->criterion},
                         {"index", rep.witness->index},
                         {"set", labels(space, rep.witness->atoms)},
                         {"value", num(rep.witness->value)}};
  } else {
    r.json["witness"] = nullptr;
  }
  Json sets = Json::array();
  for (const auto& sc : rep.set_checks) {
    sets.push_back({{"set", labels(space, sc.set.atoms)},
                    {"clearance", num(sc.set.clearance)},
                    {"eps", num(sc.eps)},
                    {"stabilized", sc.check.stabilized},
                    {"n0", sc.check.n0},
                    {"last_violation", optional_index(sc.check.last_violation)}});
  }
  r.json["separating_sets"] = sets;
  Json terms = Json::array();
  std::ostringstream csv;
  csv << "n,delta,w1,support_hausdorff\n";
  for (std::size_t n = 0; n < seq.terms.size(); ++n) {
    terms.push_back({{"n", n},
                     {"delta", num(rep.values.delta[n])},
                     {"w1", num(rep.values.w1[n])},
                     {"support_hausdorff", num(rep.support_hausdorff[n])}});
    csv << n << ',' << str(rep.values.delta[n]) << ',' << str(rep.values.w1[n]) << ','
        << str(rep.support_hausdorff[n]) << '\n';
  }
  r.json["terms"] = terms;
  r.csv = csv.str();

  std::ostringstream t;
  auto line = [&](const char* name, const CriterionResult& c) {
    t << name << '\t' << (c.pass ? "pass" : "fail") << '\t'
      << (c.index ? std::to_string(*c.index) : std::string("-")) << '\n';
  };
  t << "verdict\t" << verdict_name(rep.overall) << " (finite prefix of " << seq.terms.size() << " terms)\n";
  t << "theorem\t" << verdict_name(rep.theorem_verdict) << "\ndirect\t" << verdict_name(rep.direct_verdict)
    << "\n";
  line("w_proxy", rep.w_proxy);
  line("separating_mass", rep.separating_mass);
  line("support_hausdorff", rep.support_convergence);
  line("direct_delta", rep.direct_delta);
  if (rep.witness) {
    t << "witness\t" << rep.witness->criterion << " n=" << rep.witness->index << " set "
      << label_list(space, rep.witness->atoms) << " value " << str(rep.witness->value) << '\n';
  }
  r.table = t.str();
  emit(common, r, out);
  return verdict_exit(rep.overall);
}

int cmd_compare(const Common& common, const std::string& path, std::ostream& out) {
  const MeasureSequence seq = load_sequence(path);
  export_matrix(common, *seq.space);
  Rendered r;
  r.json = Json::array();
  std::ostringstream t, c;
  t << "n\tw1\tw2\tw_infinity\tsupport_hausdorff\n";
  c << "n,w1,w2,w_infinity,support_hausdorff\n";
  for (const auto& row : compare_sequence(seq)) {
    r.json.push_back({{"n", row.n},
                      {"w1", num(row.w1)},
                      {"w2", num(row.w2)},
                      {"w_infinity", num(row.w_infinity)},
                      {"support_hausdorff", num(row.support_hausdorff)}});
    t << row.n << '\t' << str(row.w1) << '\t' << str(row.w2) << '\t' << str(row.w_infinity) << '\t'
      << str(row.support_hausdorff) << '\n';
    c << row.n << ',' << str(row.w1) << ',' << str(row.w2) << ',' << str(row.w_infinity) << ','
      << str(row.support_hausdorff) << '\n';
  }
  r.table = t.str();
  r.csv = c.str();
  emit(common, r, out);
  return kOk;
}

// ---- stability ----

struct StabilityArgs {
  std::string target;
  std::string notion = "lyapunov";
  std::string measure;
  std::vector<std::string> set;
  std::vector<double> eps;
  std::vector<double> delta;
  std::optional<std::size_t> horizon;
  std::string probes = "auto";
  std::size_t probes_per_cell = 16;
  std::size_t n_basin = 4;
  double d_xy = 1.0;
  std::size_t grid = 32;
};

/// A system with named targets and its default grids.
struct Loaded {
  std::optional<MapSystem> system;
  std::optional<DiscreteMeasure> measure;
  AtomSet set;
  std::vector<double> eps;
  std::vector<double> delta;
  std::size_t horizon = 32;
  bool is_scenario = false;
  std::vector<Probe> scenario_probes;
};

AtomSet parse_labels(const FiniteMetricSpace& space, const std::vector<std::string>& ids) {
  std::vector<AtomIndex> atoms;
  for (const auto& id : ids) atoms.push_back(space.require_index(id));
  return make_atom_set(std::move(atoms));
}

void load_sink_source(const StabilityArgs& args, Loaded& l) {
  const SinkSource ss = scenario_sink_source(args.n_basin, args.d_xy);
  l.system = ss.system;
  l.is_scenario = true;
  l.eps = {args.d_xy / 2};
  l.delta = {args.d_xy};
  const std::string& m = args.measure;
  if (m == "sink") {
    l.measure = ss.delta_sink();
  } else if (m == "source") {
    l.measure = ss.delta_source();
  } else if (m.rfind("mu:", 0) == 0) {
    l.measure = ss.mu_eps(parse_rational(m.substr(3)));
  } else if (!m.empty()) {
    throw Error(ErrorCode::kMalformedInput, "sink_source measures are sink, source and mu:<eps>");
  }
  l.set = {ss.sink};
  l.scenario_probes = {{"mu:1/8", ss.mu_eps(make_rational(1, 8))}, {"mu:1/4", ss.mu_eps(make_rational(1, 4))}};
}

void load_torus(const StabilityArgs& args, Loaded& l) {
  const TorusShear t = scenario_torus_shear(args.grid);
  l.system = t.system;
  l.is_scenario = true;
  const double step = 1.0 / static_cast<double>(args.grid);
  l.eps = {2 * step};
  l.delta = {step};
  l.horizon = args.grid;
  if (args.measure == "lambda") {
    l.measure = t.lambda0();
  } else if (args.measure == "nu") {
    l.measure = t.nu0();
  } else if (!args.measure.empty()) {
    throw Error(ErrorCode::kMalformedInput, "torus measures are lambda and nu");
  }
  l.set = t.row(0);
  if (l.measure) {
    l.scenario_probes = {{"lift:1", t.lift(*l.measure, 1)}, {"lift:-1", t.lift(*l.measure, args.grid - 1)}};
  }
}

void load_system_file(const StabilityArgs& args, Loaded& l) {
  const Json j = io::load_json_file(args.target);
  if (!j.is_object() || !j.contains("space") || !j.contains("map")) {
    throw Error(ErrorCode::kMalformedInput, "a system file needs 'space' and 'map'");
  }
  const SpacePtr space = io::parse_space(j.at("space"));
  std::vector<AtomIndex> map(space->size());
  const Json& jm = j.at("map");
  auto label = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  if (jm.is_array()) {
    if (jm.size() != space->size()) throw Error(ErrorCode::kMalformedInput, "'map' must list one image per point");
    for (std::size_t i = 0; i < jm.size(); ++i) map[i] = space->require_index(label(jm[i]));
  } else if (jm.is_object()) {
    std::vector<bool> seen(space->size(), false);
    for (const auto& [k, v] : jm.items()) {
      const AtomIndex from = space->require_index(k);
      map[from] = space->require_index(label(v));
      seen[from] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw Error(ErrorCode::kMalformedInput, "'map' must cover every point");
    }
  } else {
    throw Error(ErrorCode::kMalformedInput, "'map' must be an array or an object");
  }
  l.system = MapSystem(space, std::move(map));
  if (j.contains("measure")) l.measure = io::parse_measure(j.at("measure"), space);
  if (j.contains("set")) {
    std::vector<std::string> ids;
    for (const auto& v : j.at("set")) ids.push_back(label(v));
    l.set = parse_labels(*space, ids);
  }
  const double d = space->size() > 1 ? space->min_positive_distance() : 1.0;
  l.delta = {d};
  l.eps = {2 * d};
}

const char* evidence(Notion n) {
  return n == Notion::kAttractor || n == Notion::kExponential ? "exact orbits at the tested radii and horizon"
                                                               : "sampled probes at the tested grid and horizon";
}

Json stability_json(const StabilityReport& rep, const FiniteMetricSpace& space) {
  Json j;
  j["notion"] = notion_name(rep.notion);
  j["verdict"] = stability_verdict_name(rep.verdict);
  j["evidence"] = evidence(rep.notion);
  j["seed"] = rep.seed;
  j["horizon"] = rep.horizon;
  Json eps = Json::array(), delta = Json::array();
  for (const double e : rep.eps_grid) eps.push_back(num(e));
  for (const double d : rep.delta_grid) delta.push_back(num(d));
  j["eps_grid"] = eps;
  j["delta_grid"] = delta;
  if (rep.target_measure) {
    j["target"] = {{"measure", io::weights_to_json(*rep.target_measure)}};
  } else {
    j["target"] = {{"set", labels(space, rep.target_set)}};
  }
  if (!rep.eps_outcomes.empty()) {
    Json outs = Json::array();
    for (const auto& o : rep.eps_outcomes) {
      outs.push_back({{"eps", num(o.eps)}, {"secured", o.secured}, {"delta", o.delta ? num(*o.delta) : Json()}});
    }
    j["eps_outcomes"] = outs;
  }
  if (!rep.fits.empty()) {
    Json fits = Json::array();
    for (const auto& f : rep.fits) {
      Json h = Json::array();
      for (const double v : f.hausdorff) h.push_back(num(v));
      fits.push_back({{"delta", num(f.delta)},
                      {"skipped", f.skipped},
                      {"pass", f.pass},
                      {"lambda", f.lambda ? num(*f.lambda) : Json("unbounded")},
                      {"c", num(f.c)},
                      {"r2", num(f.r2)},
                      {"lifted_identity", f.lifted_identity},
                      {"hausdorff", h}});
    }
    j["fits"] = fits;
  }
  if (rep.notion == Notion::kAttractor) {
    j["trapping_step"] = optional_index(rep.trapping_step);
    j["intersection"] = labels(space, rep.attractor_intersection);
  }
  if (rep.witness) {
    j["witness"] = {{"probe", rep.witness->probe},
                    {"measure", io::weights_to_json(rep.witness->measure)},
                    {"n", rep.witness->n},
                    {"distance", num(rep.witness->distance)},
                    {"eps", num(rep.witness->eps)}};
  } else {
    j["witness"] = nullptr;
  }
  Json traces = Json::array();
  for (const auto& t : rep.traces) {
    Json d = Json::array();
    for (const double v : t.distances) d.push_back(num(v));
    traces.push_back({{"probe", t.id}, {"cell", t.cell}, {"distances", d}});
  }
  j["traces"] = traces;
  return j;
}

int cmd_stability(const Common& common, const StabilityArgs& args, std::ostream& out) {
  Loaded l;
  if (args.target == "sink_source") {
    load_sink_source(args, l);
  } else if (args.target == "torus") {
    load_torus(args, l);
  } else {
    load_system_file(args, l);
  }
  const MapSystem& system = *l.system;
  const FiniteMetricSpace& space = *system.space();
  export_matrix(common, space);
  if (!args.set.empty()) {
    l.set = parse_labels(space, args.set);
    if (args.measure.empty()) l.measure.reset();
  }
  if (!args.eps.empty()) l.eps = args.eps;
  if (!args.delta.empty()) l.delta = args.delta;
  if (args.horizon) l.horizon = *args.horizon;
  for (const double v : l.eps) {
    if (!(v > 0)) throw Error(ErrorCode::kMalformedInput, "eps values must be positive");
  }
  for (const double v : l.delta) {
    if (!(v > 0)) throw Error(ErrorCode::kMalformedInput, "delta values must be positive");
  }

  ProbeOptions options;
  options.horizon = l.horizon;
  options.seed = common.seed;
  options.probes_per_cell = args.probes_per_cell;
  std::string mode = args.probes;
  if (mode == "auto") mode = l.is_scenario ? "scenario" : "random";
  options.random_probes = mode != "scenario";
  if (mode != "random") options.explicit_probes = l.scenario_probes;

  const bool measure_target = l.measure && args.set.empty();
  StabilityReport rep;
  if (args.notion == "lyapunov" && measure_target) {
    rep = probe_measure_lyapunov(system, *l.measure, l.eps, l.delta, options);
  } else if (args.notion == "lyapunov") {
    rep = probe_lyapunov(system, l.set, l.eps, l.delta, options);
  } else if (args.notion == "asymptotic") {
    rep = probe_asymptotic(system, l.set, l.eps.front(), options);
  } else if (args.notion == "attractor") {
    rep = probe_attractor(system, l.set, l.eps.front(), l.horizon);
  } else if (args.notion == "exponential") {
    rep = probe_exponential(system, l.set, l.delta, l.horizon);
  } else {
    throw Error(ErrorCode::kMalformedInput, "unknown notion '" + args.notion + "'");
  }

  Rendered r;
  r.json = stability_json(rep, space);
  std::ostringstream t, c;
  t << "notion\t" << notion_name(rep.notion) << "\nverdict\t" << stability_verdict_name(rep.verdict)
    << " (" << evidence(rep.notion) << ")\nprobes\t" << rep.traces.size() << "\nseed\t" << rep.seed
    << '\n';
  for (const auto& o : rep.eps_outcomes) {
    t << "eps " << str(o.eps) << '\t' << (o.secured ? "secured by delta " + str(*o.delta) : "not secured") << '\n';
  }
  for (const auto& f : rep.fits) {
    t << "delta " << str(f.delta) << '\t'
      << (f.skipped ? "skipped"
                    : std::string(f.pass ? "pass" : "fail") + " lambda " + (f.lambda ? str(*f.lambda) : "unbounded") +
                          " C " + str(f.c) + " R2 " + str(f.r2))
      << '\n';
  }
  if (rep.witness) {
    t << "witness\t" << rep.witness->probe << " n=" << rep.witness->n << " distance " << str(rep.witness->distance)
      << '\n';
  }
  c << "n,probe,distance\n";
  for (const auto& tr : rep.traces) {
    for (std::size_t n = 0; n < tr.distances.size(); ++n) c << n << ',' << tr.id << ',' << str(tr.distances[n]) << '\n';
  }
  r.table = t.str();
  r.csv = c.str();
  emit(common, r, out);
  switch (rep.verdict) {
    case StabilityVerdict::kStableAtResolution: return kOk;
    case StabilityVerdict::kUnstableWitness: return kUnstable;
    case StabilityVerdict::kInconclusive: return kInconclusive;
  }
  return kInconclusive;
}

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSpaceMismatch: return kSpaceMismatch;
    case ErrorCode::kInfeasibleInstance: return kInfeasible;
    default: return kMalformed;
  }
}

void add_common(CLI::App* sub, Common& common, const char* default_format) {
  common.format = default_format;
  sub->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->capture_default_str();
  sub->add_option("--output", common.output, "Write the report to this file instead of stdout");
  sub->add_option("--seed", common.seed, "Random seed")->capture_default_str();
  sub->add_option("--export-matrix", common.export_matrix, "Write the distance matrix as CSV");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"dynot: transport distances, decompositions and stability probes on finite metric spaces"};
  app.footer(kFooter);
  app.require_subcommand(1);

  Common dist_common, plan_common, dec_common, conv_common, cmp_common, stab_common;
  std::string a, b, instance, sequence;
  std::vector<int> ps;
  bool with_plan = false;
  int plan_p = 0;
  ConvergenceOptions conv_options;
  StabilityArgs stab;

  auto* dist = app.add_subcommand("dist", "Bottleneck distance, optionally W1/W2 and the optimal plan");
  dist->add_option("a", a, "First measure file")->required();
  dist->add_option("b", b, "Second measure file")->required();
  dist->add_option("--p", ps, "Also report W_p (repeatable; 1 or 2)")->check(CLI::IsMember({1, 2}));
  dist->add_flag("--plan", with_plan, "Print an optimal bottleneck plan");
  add_common(dist, dist_common, "json");

  auto* plan = app.add_subcommand("plan", "Optimal transport plan");
  plan->add_option("a", a, "First measure file")->required();
  plan->add_option("b", b, "Second measure file")->required();
  plan->add_option("--p", plan_p, "0 for the bottleneck plan, 1 or 2 for W_p")
      ->check(CLI::IsMember({0, 1, 2}))
      ->capture_default_str();
  add_common(plan, plan_common, "json");

  auto* dec = app.add_subcommand("decompose", "Decompose a measure under set and mass constraints");
  dec->add_option("instance", instance, "Instance file")->required();
  add_common(dec, dec_common, "json");

  auto* conv = app.add_subcommand("converge", "Judge d-convergence of a finite sequence prefix");
  conv->add_option("sequence", sequence, "Sequence file")->required();
  conv->add_option("--w-threshold", conv_options.w_threshold, "W1 level that passes the weak proxy outright")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  conv->add_option("--tail", conv_options.tail, "Trailing terms inspected for trends")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(conv, conv_common, "json");

  auto* cmp = app.add_subcommand("compare", "Per-term W1, W2, bottleneck and support distance against the limit");
  cmp->add_option("sequence", sequence, "Sequence file")->required();
  add_common(cmp, cmp_common, "table");

  auto* st = app.add_subcommand("stability", "Probe stability of a set or an invariant measure");
  st->add_option("target", stab.target, "sink_source, torus, or a system file")->required();
  st->add_option("--notion", stab.notion, "Stability notion")
      ->check(CLI::IsMember({"lyapunov", "asymptotic", "attractor", "exponential"}))
      ->capture_default_str();
  st->add_option("--measure", stab.measure, "Named measure (sink, source, mu:<eps>, lambda, nu)");
  st->add_option("--set", stab.set, "Target set as point labels");
  st->add_option("--eps", stab.eps, "eps grid");
  st->add_option("--delta", stab.delta, "delta grid");
  st->add_option("--horizon", stab.horizon, "Steps per orbit (attractor: largest trapping step)");
  st->add_option("--probes", stab.probes, "Probe family")
      ->check(CLI::IsMember({"auto", "scenario", "random", "all"}))
      ->capture_default_str();
  st->add_option("--probes-per-cell", stab.probes_per_cell, "Random probes per delta")->capture_default_str();
  st->add_option("--n-basin", stab.n_basin, "sink_source: basin points")->capture_default_str();
  st->add_option("--d-xy", stab.d_xy, "sink_source: sink-source distance")->capture_default_str();
  st->add_option("--grid", stab.grid, "torus: grid size N")->capture_default_str();
  add_common(st, stab_common, "json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kMalformed;
  }

  try {
    if (dist->parsed()) return cmd_dist(dist_common, a, b, ps, with_plan, out);
    if (plan->parsed()) return cmd_plan(plan_common, a, b, plan_p, out);
    if (dec->parsed()) return cmd_decompose(dec_common, instance, out);
    if (conv->parsed()) return cmd_converge(conv_common, sequence, conv_options, out);
    if (cmp->parsed()) return cmd_compare(cmp_common, sequence, out);
    if (st->parsed()) return cmd_stability(stab_common, stab, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kMalformed;
  }
  return kMalformed;
}

}  // namespace dynot::cli
