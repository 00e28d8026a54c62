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


// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "dynot/bottleneck.hpp"
#include "dynot/convergence.hpp"
#include "dynot/decomposition.hpp"
#include "dynot/geometry.hpp"
#include "dynot/scenarios.hpp"
#include "dynot/stability.hpp"
#include "dynot/wasserstein.hpp"
#include "gen.hpp"
#include "instances.hpp"

namespace dynot {
namespace {

// Pinned tolerances and budgets.
constexpr double kTriangleTol = 1e-12;
constexpr double kW1Tol = 1e-12;
constexpr double kHausdorffTol = 1e-12;
constexpr double kTorusFloor = 0.2;
constexpr int kOracleInstances = 500;
constexpr int kTriangleTriples = 200;
constexpr int kFeasibleInstances = 200;
constexpr int kInfeasibleInstances = 50;
constexpr int kLiftGridInstances = 300;

struct Outcome {
  bool pass;
  std::string detail;
};

using Pair = std::pair<DiscreteMeasure, DiscreteMeasure>;

std::vector<Pair> oracle_pairs() {
  Rng rng(20260101);
  std::vector<Pair> out;
  for (int i = 0; i < kOracleInstances; ++i) {
    const auto s = testing::random_euclidean(rng, 3 + rng.uniform_index(6));
    out.emplace_back(testing::random_probability(rng, s, 5, 16), testing::random_probability(rng, s, 5, 16));
  }
  return out;
}

Outcome c1_oracle(const std::vector<Pair>& pairs) {
  int mismatches = 0;
  for (const auto& [mu, nu] : pairs) {
    if (w_infinity(mu, nu).value != w_infinity_bruteforce(mu, nu)) ++mismatches;
  }
  return {mismatches == 0, std::to_string(pairs.size()) + " instances, " + std::to_string(mismatches) +
                               " mismatches against the brute-force oracle"};
}

Outcome c2_axioms() {
  Rng rng(20260102);
  int failures = 0;
  double worst = 0;
  for (int i = 0; i < kTriangleTriples; ++i) {
    const auto s = testing::random_euclidean(rng, 7);
    const auto a = testing::random_probability(rng, s, 4);
    const auto b = testing::random_probability(rng, s, 4);
    const auto c = testing::random_probability(rng, s, 4);
    const double ab = w_infinity(a, b).value, ba = w_infinity(b, a).value;
    const double bc = w_infinity(b, c).value, ac = w_infinity(a, c).value;
    if (ab != ba) ++failures;
    if (w_infinity(a, a).value != 0) ++failures;
    if ((ab == 0) != (a == b)) ++failures;
    worst = std::max(worst, ac - (ab + bc));
    if (ac > ab + bc + kTriangleTol) ++failures;
  }
  std::ostringstream d;
  d << kTriangleTriples << " triples, " << failures << " violations, worst triangle excess " << worst;
  return {failures == 0, d.str()};
}

Outcome c3_examp() {
  const auto s = testing::line_space({0.0, 1.7}, {"x", "y"});
  const double d = s->dist(0, 1);
  const auto dy = DiscreteMeasure::point_mass(s, 1);
  bool ok = true;
  std::ostringstream detail;
  for (const long n : {2L, 4L, 8L, 16L, 64L}) {
    const auto mu = make_measure(s, {{0, make_rational(1, n)}, {1, make_rational(n - 1, n)}});
    const double delta = w_infinity(mu, dy).value;
    const double w1 = w_p(mu, dy, 1);
    ok = ok && delta == d && std::abs(w1 - d / static_cast<double>(n)) <= kW1Tol;
    detail << " n=" << n << ":" << delta << "/" << w1;
  }
  return {ok, "Delta/W1 with d(x,y)=1.7:" + detail.str()};
}

Outcome c4_lopsided() {
  const auto s = testing::line_space({0.0, 2.3}, {"x", "y"});
  const double d = s->dist(0, 1);
  const auto mu = make_measure(s, {{0, make_rational(1, 2)}, {1, make_rational(1, 2)}});
  bool ok = true;
  for (const long n : {2L, 3L, 4L, 8L, 16L, 64L, 1000L}) {
    const auto mn = make_measure(s, {{0, make_rational(n + 1, 2 * n)}, {1, make_rational(n - 1, 2 * n)}});
    ok = ok && hausdorff(*s, mn.support(), mu.support()) == 0 && w_infinity(mn, mu).value == d;
  }
  return {ok, "n in {2,3,4,8,16,64,1000}: support distance 0, Delta = d(x,y) = 2.3"};
}

Outcome c5_hausdorff(const std::vector<Pair>& pairs) {
  int failures = 0;
  for (const auto& [mu, nu] : pairs) {
    if (hausdorff(*mu.space(), mu.support(), nu.support()) > w_infinity(mu, nu).value + kHausdorffTol) ++failures;
  }
  return {failures == 0, std::to_string(pairs.size()) + " pairs, " + std::to_string(failures) + " violations"};
}

Outcome c6_decomposition() {
  Rng rng(20260106);
  int feasible_ok = 0, feasible_bad = 0, infeasible_ok = 0, infeasible_bad = 0;
  std::size_t worst_ratio_num = 0, worst_ratio_den = 1;
  while (feasible_ok + feasible_bad < kFeasibleInstances) {
    const std::size_t m = 1 + rng.uniform_index(5);
    const auto s = testing::random_euclidean(rng, 2 + rng.uniform_index(9));
    const auto inst = testing::random_feasible_instance(rng, s, m);
    const auto res = decompose(inst);
    const std::size_t bound = m * ((std::size_t{1} << m) - 1);
    const bool ok = verify_decomposition(inst, res.components).valid && res.max_depth <= bound;
    if (res.max_depth * worst_ratio_den > worst_ratio_num * bound) {
      worst_ratio_num = res.max_depth;
      worst_ratio_den = bound;
    }
    (ok ? feasible_ok : feasible_bad)++;
  }
  while (infeasible_ok + infeasible_bad < kInfeasibleInstances) {
    const std::size_t m = 2 + rng.uniform_index(4);
    const auto s = testing::random_euclidean(rng, 2 + rng.uniform_index(9));
    auto inst = testing::random_feasible_instance(rng, s, m);
    if (!testing::perturb_to_infeasible(rng, inst)) continue;
    const auto v = check_feasibility(inst);
    bool ok = !v.feasible && !flow_feasible(inst) && v.lhs < v.rhs;
    if (ok && v.condition == "com1") {
      Rational sum = 0;
      AtomSet uni;
      for (std::size_t i = 0; i < inst.sets.size(); ++i) {
        if (v.witness >> i & 1) {
          sum += inst.targets[i];
          uni = set_union(uni, inst.sets[i]);
        }
      }
      ok = sum == v.rhs && inst.xi.mass_of(uni) == v.lhs;
    }
    (ok ? infeasible_ok : infeasible_bad)++;
  }
  std::ostringstream d;
  d << feasible_ok << "/" << kFeasibleInstances << " feasible decomposed and verified, " << infeasible_ok << "/"
    << kInfeasibleInstances << " infeasible with witness and flow agreement, deepest recursion " << worst_ratio_num
    << " of bound " << worst_ratio_den;
  return {feasible_bad == 0 && infeasible_bad == 0, d.str()};
}

MeasureSequence build_sequence(const SpacePtr& s, const std::vector<std::vector<std::pair<AtomIndex, Rational>>>& terms,
                               const std::vector<std::pair<AtomIndex, Rational>>& limit) {
  MeasureSequence seq{s, {}, make_measure(s, limit)};
  for (const auto& t : terms) seq.terms.push_back(make_measure(s, t));
  return seq;
}

Outcome c7_consistency() {
  using W = std::vector<std::pair<AtomIndex, Rational>>;
  std::vector<std::pair<std::string, MeasureSequence>> suite;
  const auto xy = testing::line_space({0.0, 1.0}, {"x", "y"});
  const auto r = [](long a, long b) { return make_rational(a, b); };

  suite.emplace_back("constant point mass", build_sequence(xy, {{{0, r(1, 1)}}, {{0, r(1, 1)}}, {{0, r(1, 1)}}},
                                                           {{0, r(1, 1)}}));
  suite.emplace_back("constant two atoms", build_sequence(xy, std::vector<W>(5, {{0, r(1, 3)}, {1, r(2, 3)}}),
                                                          {{0, r(1, 3)}, {1, r(2, 3)}}));
  std::vector<W> examp, lop;
  for (long n = 1; n <= 12; ++n) {
    examp.push_back({{0, r(1, n)}, {1, r(n - 1, n)}});
    lop.push_back({{0, r(n + 1, 2 * n)}, {1, r(n - 1, 2 * n)}});
  }
  suite.emplace_back("examp", build_sequence(xy, examp, {{1, r(1, 1)}}));
  suite.emplace_back("examp short", build_sequence(xy, std::vector<W>(examp.begin(), examp.begin() + 4), {{1, r(1, 1)}}));

  // Drifting copies of x = 0 and y = 10.
  std::vector<double> xs = {0.0, 10.0};
  for (int n = 0; n < 10; ++n) {
    xs.push_back(0.5 / (n + 1));
    xs.push_back(10.0 + 0.25 / (n + 1));
  }
  const auto drift = testing::line_space(xs);
  const auto at = [](int n, int k) { return static_cast<AtomIndex>(2 + 2 * n + k); };
  std::vector<W> stab5, stab2, drifting, mismatch;
  for (int n = 0; n < 10; ++n) {
    const Rational p5 = n < 5 ? r(1, 2 + n) : r(1, 3);
    const Rational p2 = n < 2 ? r(1, 2) : r(1, 3);
    stab5.push_back({{at(n, 0), p5}, {at(n, 1), 1 - p5}});
    stab2.push_back({{at(n, 0), p2}, {at(n, 1), 1 - p2}});
    drifting.push_back({{at(n, 0), r(1, 3)}, {at(n, 1), r(2, 3)}});
    mismatch.push_back({{at(n, 0), r(1, 4)}, {at(n, 1), r(3, 4)}});
  }
  const W limit = {{0, r(1, 3)}, {1, r(2, 3)}};
  suite.emplace_back("weights settle at 5", build_sequence(drift, stab5, limit));
  suite.emplace_back("weights settle at 2", build_sequence(drift, stab2, limit));
  suite.emplace_back("support drift", build_sequence(drift, drifting, limit));
  suite.emplace_back("drift, wrong weights", build_sequence(drift, mismatch, limit));
  suite.emplace_back("lopsided coin", build_sequence(xy, lop, {{0, r(1, 2)}, {1, r(1, 2)}}));
  const auto jump = testing::line_space({0.0, 1.0, 0.01});
  suite.emplace_back("late jump", build_sequence(jump, {{{0, r(1, 1)}}, {{0, r(1, 1)}}, {{0, r(1, 1)}},
                                                        {{0, r(1, 2)}, {1, r(1, 2)}}},
                                                 {{0, r(1, 1)}}));

  int agree = 0;
  std::ostringstream d;
  for (const auto& [name, seq] : suite) {
    const auto rep = d_convergence_verdict(seq);
    if (rep.agreement) ++agree;
    d << " " << name << "=" << verdict_name(rep.overall) << (rep.agreement ? "" : "(DISAGREE)") << ";";
  }
  return {agree == static_cast<int>(suite.size()),
          std::to_string(agree) + "/" + std::to_string(suite.size()) + " agree:" + d.str()};
}

Outcome c8_lifts() {
  Rng rng(20260108);
  const auto s = testing::random_euclidean(rng, 8);
  int checked = 0, failures = 0;
  for (AtomIndex x = 0; x < 8; ++x) {
    for (std::uint32_t mask = 1; mask < 256; ++mask) {
      if (__builtin_popcount(mask) > 3) continue;
      AtomSet v;
      for (AtomIndex i = 0; i < 8; ++i) {
        if (mask >> i & 1) v.push_back(i);
      }
      const auto px = DiscreteMeasure::point_mass(s, x);
      ++checked;
      if (dist_to_lift_bruteforce(px, v) != point_to_set(*s, x, v)) ++failures;
    }
  }
  int grid_failures = 0;
  for (int i = 0; i < kLiftGridInstances; ++i) {
    const auto sp = testing::random_euclidean(rng, 7);
    const std::size_t k = 1 + rng.uniform_index(3);
    const AtomSet atoms = testing::random_subset(rng, 7, k);
    const auto parts = testing::random_composition(rng, 8, k);
    std::vector<std::pair<AtomIndex, Rational>> pairs;
    for (std::size_t j = 0; j < k; ++j) pairs.emplace_back(atoms[j], make_rational(parts[j], 8));
    const auto mu = make_measure(sp, pairs);
    const AtomSet a = testing::random_subset(rng, 7, 1 + rng.uniform_index(3));
    if (dist_to_lift(mu, a) != dist_to_lift_bruteforce(mu, a, 8)) ++grid_failures;
  }
  std::ostringstream d;
  d << checked << " point/set pairs (" << failures << " off), " << kLiftGridInstances
    << " grid brute-force instances (" << grid_failures << " off)";
  return {failures == 0 && grid_failures == 0, d.str()};
}

Outcome c9_sink_source() {
  const auto ss = scenario_sink_source(6, 1.5);
  const double d = ss.system.space()->dist(ss.sink, ss.source);
  bool ok = true;
  for (const auto& eps : {make_rational(1, 8), make_rational(1, 4)}) {
    const auto mu = ss.mu_eps(eps);
    ok = ok && ss.system.fixes(mu) && w_infinity(mu, ss.delta_sink()).value == d &&
         std::abs(w_p(mu, ss.delta_sink(), 1) - to_double(eps) * d) <= kW1Tol;
  }
  ProbeOptions options;
  options.horizon = 16;
  options.explicit_probes = {{"mu:1/8", ss.mu_eps(make_rational(1, 8))}, {"mu:1/4", ss.mu_eps(make_rational(1, 4))}};
  const auto rep = probe_measure_lyapunov(ss.system, ss.delta_sink(), {d / 2}, {d}, options);
  const bool unstable = rep.verdict == StabilityVerdict::kUnstableWitness && replay_witness(ss.system, rep) == d;
  std::ostringstream det;
  det << "mixtures fixed, Delta = " << d << ", W1 = eps*d; measure Lyapunov on delta_sink: "
      << stability_verdict_name(rep.verdict);
  if (rep.witness) det << " (" << rep.witness->probe << ", n=" << rep.witness->n << ")";
  return {ok && unstable, det.str()};
}

Outcome c10_torus() {
  // Reduced grid first: the solver must match the brute-force oracle.
  const auto t8 = scenario_torus_shear(8);
  const auto m8 = t8.system.push(t8.lift(t8.nu0(), 1), 4);
  const double v8 = w_infinity(m8, t8.nu0()).value;
  const bool small_ok = v8 == w_infinity_bruteforce(m8, t8.nu0()) && v8 >= kTorusFloor;

  const std::size_t n = 32;
  const auto t = scenario_torus_shear(n);
  const auto l0 = t.lambda0();
  const auto n0 = t.nu0();
  auto l = t.lift(l0, 1);
  auto v = t.lift(n0, 1);
  double sup_l = 0, sup_v = 0, at16 = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    sup_l = std::max(sup_l, w_infinity(l, l0).value);
    const double dv = w_infinity(v, n0).value;
    sup_v = std::max(sup_v, dv);
    if (k == n / 2) at16 = dv;
    l = t.system.push(l);
    v = t.system.push(v);
  }
  const bool ok = small_ok && sup_l == 1.0 / 32 && sup_v >= kTorusFloor && at16 >= kTorusFloor;
  std::ostringstream d;
  d << "N=8 check " << v8 << " (oracle agrees: " << (small_ok ? "yes" : "no") << "); N=32: sup lambda " << sup_l
    << ", sup nu " << sup_v << ", nu at n=16 " << at16;
  return {ok, d.str()};
}

std::string capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), got);
  status = pclose(p);
  return out;
}

Outcome c11_determinism() {
  const std::string bin = DYNOT_CLI_BINARY;
  const std::string data = DYNOT_TEST_DATA;
  const std::vector<std::string> commands = {
      "dist " + data + "/examp_n4.json " + data + "/delta_y.json --p 1 --p 2 --plan",
      "plan " + data + "/a.json " + data + "/examp_n4.json --p 1",
      "plan " + data + "/examp_n4.json " + data + "/delta_y.json",
      "decompose " + data + "/instance_m3.json",
      "decompose " + data + "/instance_infeasible.json",
      "converge " + data + "/seq_stabilizing.json",
      "converge " + data + "/seq_examp.json --format table",
      "compare " + data + "/seq_drift.json --format csv",
      "stability sink_source --measure sink --seed 0",
      "stability torus --grid 16 --measure lambda --probes all --seed 3",
      "stability " + data + "/system_identity.json --seed 11 --format csv",
      "stability sink_source --notion exponential --delta 1",
  };
  int identical = 0;
  std::string first_diff;
  for (const auto& c : commands) {
    int s1 = 0, s2 = 0;
    const std::string cmd = "'" + bin + "' " + c + " 2>&1";
    const std::string a = capture(cmd, s1);
    const std::string b = capture(cmd, s2);
    if (a == b && s1 == s2 && !a.empty()) {
      ++identical;
    } else if (first_diff.empty()) {
      first_diff = c;
    }
  }
  std::string d = std::to_string(identical) + "/" + std::to_string(commands.size()) +
                  " commands byte-identical across two runs";
  if (!first_diff.empty()) d += "; first difference: " + first_diff;
  return {identical == static_cast<int>(commands.size()), d};
}

}  // namespace
}  // namespace dynot

int main() {
  using namespace dynot;
  using Clock = std::chrono::steady_clock;
  struct Criterion {
    const char* id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  std::vector<Pair> pairs;
  const std::vector<Criterion> criteria = {
      {"C1", "oracle equivalence", 30,
       [&] {
         pairs = oracle_pairs();
         return c1_oracle(pairs);
       }},
      {"C2", "metric axioms", 30, c2_axioms},
      {"C3", "examp non-equivalence", 1, c3_examp},
      {"C4", "lopsided coin", 1, c4_lopsided},
      {"C5", "Hausdorff bound", 30, [&] { return c5_hausdorff(pairs); }},
      {"C6", "decomposition", 60, c6_decomposition},
      {"C7", "convergence verdict agreement", 10, c7_consistency},
      {"C8", "lift identities", 30, c8_lifts},
      {"C9", "sink/source scenario", 5, c9_sink_source},
      {"C10", "torus scenario", 120, c10_torus},
      {"C11", "CLI determinism", 60, c11_determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s %-4s %-30s %.3fs (budget %.0fs)  %s%s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs,
                c.budget_s, o.detail.c_str(), in_time ? "" : " [over budget]");
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
