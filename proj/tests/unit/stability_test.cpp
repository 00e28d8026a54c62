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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "dynot/bottleneck.hpp"
#include "dynot/error.hpp"
#include "dynot/geometry.hpp"
#include "dynot/scenarios.hpp"
#include "dynot/stability.hpp"
#include "dynot/wasserstein.hpp"
#include "gen.hpp"

namespace dynot {
namespace {

using testing::line_space;

ProbeOptions opts(std::size_t horizon, std::size_t per_cell, std::uint64_t seed) {
  ProbeOptions o;
  o.horizon = horizon;
  o.probes_per_cell = per_cell;
  o.seed = seed;
  return o;
}

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kMalformedInput;
}

/// Points 0..2^m on a line, each halved (rounding down) by the map.
MapSystem halving(std::size_t m) {
  const std::size_t count = (std::size_t{1} << m) + 1;
  std::vector<double> xs(count);
  std::vector<AtomIndex> map(count);
  for (std::size_t k = 0; k < count; ++k) {
    xs[k] = static_cast<double>(k);
    map[k] = static_cast<AtomIndex>(k / 2);
  }
  return MapSystem(line_space(xs), map);
}

/// Random probability measure with weights in eighths on a random support.
DiscreteMeasure eighths(Rng& rng, const SpacePtr& s, std::size_t max_atoms) {
  const std::size_t k = 1 + rng.uniform_index(max_atoms);
  const AtomSet atoms = testing::random_subset(rng, s->size(), k);
  const auto parts = testing::random_composition(rng, 8, k);
  std::vector<std::pair<AtomIndex, Rational>> pairs;
  for (std::size_t i = 0; i < k; ++i) pairs.emplace_back(atoms[i], make_rational(parts[i], 8));
  return DiscreteMeasure::from_pairs(s, pairs);
}

TEST(MapSystem, RejectsBadMaps) {
  const auto s = line_space({0.0, 1.0});
  EXPECT_EQ(code_of([&] { MapSystem(s, {0}); }), ErrorCode::kMalformedInput);
  EXPECT_EQ(code_of([&] { MapSystem(s, {0, 2}); }), ErrorCode::kMalformedInput);
}

TEST(MapSystem, IteratesAndPushes) {
  const auto sys = halving(3);
  EXPECT_EQ(sys.iterate(8, 0), 8u);
  EXPECT_EQ(sys.iterate(8, 2), 2u);
  EXPECT_EQ(sys.image({5, 6, 7, 8}), AtomSet({2, 3, 4}));
  EXPECT_EQ(sys.image({5, 6, 7, 8}, 2), AtomSet({1, 2}));
  const auto mu = make_measure(sys.space(), {{7, make_rational(1, 4)}, {6, make_rational(3, 4)}});
  EXPECT_EQ(sys.push(mu), DiscreteMeasure::point_mass(sys.space(), 3));
  EXPECT_TRUE(sys.is_invariant({0, 1, 2}));
  EXPECT_FALSE(sys.is_invariant({2}));
  EXPECT_TRUE(sys.fixes(DiscreteMeasure::point_mass(sys.space(), 0)));
  EXPECT_FALSE(sys.fixes(DiscreteMeasure::point_mass(sys.space(), 1)));
}

TEST(DistToLift, Examples) {
  const auto s = line_space({0.0, 1.0, 3.0, 7.0});
  const auto mu = make_measure(s, {{0, make_rational(1, 2)}, {1, make_rational(1, 2)}});
  EXPECT_EQ(dist_to_lift(mu, {0, 1, 2}), 0.0);
  EXPECT_EQ(dist_to_lift(DiscreteMeasure::point_mass(s, 3), {0, 2}), 4.0);
  EXPECT_EQ(dist_to_lift(mu, {3}), 7.0);
  EXPECT_EQ(dist_to_lift_bruteforce(mu, {3}), 7.0);
  EXPECT_EQ(code_of([&] { dist_to_lift(mu, {}); }), ErrorCode::kEmptySet);
}

TEST(DistToLift, PointMassEqualsPointToSetEverywhere) {
  Rng rng(41);
  const auto s = testing::random_euclidean(rng, 8);
  for (AtomIndex x = 0; x < 8; ++x) {
    const auto px = DiscreteMeasure::point_mass(s, x);
    for (std::uint32_t mask = 1; mask < 256; ++mask) {
      if (__builtin_popcount(mask) > 3) continue;
      AtomSet v;
      for (AtomIndex i = 0; i < 8; ++i) {
        if (mask >> i & 1) v.push_back(i);
      }
      EXPECT_EQ(dist_to_lift_bruteforce(px, v), point_to_set(*s, x, v));
      EXPECT_EQ(dist_to_lift(px, v), point_to_set(*s, x, v));
    }
  }
}

TEST(DistToLift, ClosedFormMatchesGridBruteForce) {
  Rng rng(42);
  for (int trial = 0; trial < 400; ++trial) {
    const auto s = testing::random_euclidean(rng, 7);
    const auto mu = eighths(rng, s, 3);
    const AtomSet a = testing::random_subset(rng, 7, 1 + rng.uniform_index(3));
    EXPECT_EQ(dist_to_lift(mu, a), dist_to_lift_bruteforce(mu, a)) << trial;
  }
}

TEST(Lift, SubsetIffPointMassesAtZero) {
  Rng rng(43);
  const auto s = testing::random_euclidean(rng, 6);
  for (std::uint32_t am = 1; am < 64; ++am) {
    for (std::uint32_t bm = 1; bm < 64; bm += 5) {
      AtomSet a, b;
      for (AtomIndex i = 0; i < 6; ++i) {
        if (am >> i & 1) a.push_back(i);
        if (bm >> i & 1) b.push_back(i);
      }
      bool all_zero = true;
      for (const AtomIndex x : a) all_zero = all_zero && dist_to_lift(DiscreteMeasure::point_mass(s, x), b) == 0;
      EXPECT_EQ(all_zero, is_subset(a, b));
      EXPECT_EQ(LiftedSet{b}.contains(DiscreteMeasure::point_mass(s, a.front())),
                std::binary_search(b.begin(), b.end(), a.front()));
    }
  }
}

TEST(Lift, PushforwardOfLiftIsLiftOfImage) {
  Rng rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = testing::random_euclidean(rng, 8);
    std::vector<AtomIndex> map(8);
    for (auto& y : map) y = static_cast<AtomIndex>(rng.uniform_index(8));
    const MapSystem sys(s, map);
    const AtomSet a = testing::random_subset(rng, 8, 1 + rng.uniform_index(4));
    const AtomSet fa = sys.image(a);
    for (int k = 0; k < 10; ++k) {
      const auto nu = eighths(rng, s, a.size());
      std::vector<std::pair<AtomIndex, Rational>> pairs;
      for (std::size_t i = 0; i < nu.support().size(); ++i) pairs.emplace_back(a[i], nu.weight(nu.support()[i]));
      const auto on_a = DiscreteMeasure::from_pairs(s, pairs);
      EXPECT_TRUE(is_subset(sys.push(on_a).support(), fa));
    }
    for (const AtomIndex y : fa) {
      bool reached = false;
      for (const AtomIndex x : a) {
        reached = reached || sys.push(DiscreteMeasure::point_mass(s, x)) == DiscreteMeasure::point_mass(s, y);
      }
      EXPECT_TRUE(reached);
    }
  }
}

TEST(Lift, NeighborhoodCorrespondence) {
  Rng rng(45);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = testing::random_euclidean(rng, 8);
    const auto nu = testing::random_probability(rng, s, 4);
    const AtomSet a = testing::random_subset(rng, 8, 1 + rng.uniform_index(3));
    for (const double eps : {0.05, 0.2, 0.4, s->dist(0, 1)}) {
      EXPECT_EQ(dist_to_lift(nu, a) < eps, is_subset(nu.support(), open_neighborhood(*s, a, eps)));
    }
  }
}

TEST(LiftHausdorff, Examples) {
  const auto s = line_space({0.0, 2.0, 5.0});
  EXPECT_EQ(lift_hausdorff(s, {0, 1}, {0, 1}).direct, 0.0);
  EXPECT_EQ(lift_hausdorff(s, {0, 1}, {0, 1}).lifted, 0.0);
  EXPECT_EQ(lift_hausdorff(s, {0}, {2}).direct, 5.0);
  EXPECT_EQ(lift_hausdorff(s, {0}, {2}).lifted, 5.0);
  EXPECT_EQ(code_of([&] { lift_hausdorff(s, {}, {0}); }), ErrorCode::kEmptySet);
}

TEST(LiftHausdorff, RandomTriplesAgree) {
  Rng rng(46);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = testing::random_euclidean(rng, 9);
    const AtomSet u = testing::random_subset(rng, 9, 3);
    const AtomSet v = testing::random_subset(rng, 9, 3);
    const auto h = lift_hausdorff(s, u, v);
    EXPECT_NEAR(h.direct, h.lifted, 1e-12);
  }
}

TEST(Scenario, SinkSourceShape) {
  const auto ss = scenario_sink_source(4, 2.0);
  EXPECT_EQ(ss.system.space()->size(), 6u);
  EXPECT_EQ(ss.system.space()->dist(ss.sink, ss.source), 2.0);
  EXPECT_EQ(ss.system.iterate(4, 4), ss.sink);
  EXPECT_EQ(ss.system.apply(ss.source), ss.source);
  EXPECT_EQ(code_of([] { scenario_sink_source(0, 1.0); }), ErrorCode::kMalformedInput);
}

TEST(Scenario, SinkSourceMixtureIsFixedAndFar) {
  const auto ss = scenario_sink_source(5, 3.0);
  for (const auto& eps : {make_rational(1, 8), make_rational(1, 4), make_rational(1, 2), make_rational(1, 1)}) {
    const auto mu = ss.mu_eps(eps);
    EXPECT_TRUE(ss.system.fixes(mu));
    EXPECT_EQ(w_infinity(mu, ss.delta_sink()).value, 3.0);
    EXPECT_NEAR(w_p(mu, ss.delta_sink(), 1), to_double(eps) * 3.0, 1e-12);
  }
}

TEST(Scenario, TorusRowZeroFixedAndShear) {
  const auto t = scenario_torus_shear(8);
  EXPECT_TRUE(t.system.fixes(t.lambda0()));
  EXPECT_TRUE(t.system.fixes(t.nu0()));
  EXPECT_EQ(t.system.apply(t.at(7, 3)), t.at(2, 3));
  EXPECT_EQ(t.system.image(t.row(5)), t.row(5));
  EXPECT_EQ(code_of([] { scenario_torus_shear(6); }), ErrorCode::kMalformedInput);
}

TEST(Scenario, TorusUniformLiftStaysOneRowAway) {
  const auto t = scenario_torus_shear(16);
  const auto l0 = t.lambda0();
  auto l = t.lift(l0, 1);
  for (std::size_t n = 0; n <= 16; ++n) {
    EXPECT_EQ(w_infinity(l, l0).value, 1.0 / 16);
    l = t.system.push(l);
  }
}

TEST(Scenario, TorusLopsidedLiftSpreadsAtHalfTurn) {
  // N = 8 first, where the brute-force oracle is cheap.
  const auto t8 = scenario_torus_shear(8);
  const auto moved8 = t8.system.push(t8.lift(t8.nu0(), 1), 4);
  const double v8 = w_infinity(moved8, t8.nu0()).value;
  EXPECT_EQ(v8, w_infinity_bruteforce(moved8, t8.nu0()));
  EXPECT_NEAR(v8, std::sqrt(1.0 / 16 + 1.0 / 64), 1e-15);
  EXPECT_GE(v8, 0.25 - 1.0 / 8);

  const auto t = scenario_torus_shear(32);
  const double v = w_infinity(t.system.push(t.lift(t.nu0(), 1), 16), t.nu0()).value;
  EXPECT_GE(v, 0.25 - 1.0 / 32);
  EXPECT_NEAR(v, std::sqrt(1.0 / 16 + 1.0 / 1024), 1e-15);
}

TEST(Lyapunov, IdentityIsStable) {
  Rng rng(47);
  const auto s = testing::random_euclidean(rng, 9);
  const auto sys = MapSystem::identity(s);
  const auto r = probe_lyapunov(sys, {0, 1}, {0.3, 0.6}, {0.15, 0.3}, opts(8, 6, 1));
  EXPECT_EQ(r.verdict, StabilityVerdict::kStableAtResolution);
  for (const auto& e : r.eps_outcomes) EXPECT_TRUE(e.secured);
}

TEST(Lyapunov, RequiresInvariantSet) {
  const auto ss = scenario_sink_source(3, 1.0);
  EXPECT_EQ(code_of([&] { probe_lyapunov(ss.system, {2}, {0.5}, {0.25}); }), ErrorCode::kNotInvariant);
}

TEST(Lyapunov, SinkStableAtFineDeltaWitnessWhenSourceReached) {
  const auto ss = scenario_sink_source(4, 1.0);
  const auto fine = probe_lyapunov(ss.system, {ss.sink}, {0.5}, {0.45}, opts(10, 8, 3));
  EXPECT_EQ(fine.verdict, StabilityVerdict::kStableAtResolution);
  const auto coarse = probe_lyapunov(ss.system, {ss.sink}, {0.5}, {1.0}, opts(10, 8, 3));
  ASSERT_EQ(coarse.verdict, StabilityVerdict::kUnstableWitness);
  EXPECT_EQ(coarse.witness->distance, 1.0);
  EXPECT_EQ(replay_witness(ss.system, coarse), coarse.witness->distance);
}

TEST(Lyapunov, TorusRowIsStable) {
  const auto t = scenario_torus_shear(16);
  const auto r = probe_lyapunov(t.system, t.row(0), {2.0 / 16}, {1.0 / 16}, opts(16, 8, 4));
  EXPECT_EQ(r.verdict, StabilityVerdict::kStableAtResolution);
}

TEST(Lyapunov, OnlyTrivialProbesIsInconclusive) {
  const auto s = line_space({0.0, 1.0});
  const auto r = probe_lyapunov(MapSystem::identity(s), {0}, {0.5}, {0.5}, opts(4, 4, 0));
  EXPECT_EQ(r.verdict, StabilityVerdict::kInconclusive);
}

TEST(Lyapunov, PointProbesTrackOrbits) {
  Rng rng(48);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = testing::random_euclidean(rng, 10);
    std::vector<AtomIndex> map(10);
    for (auto& y : map) y = static_cast<AtomIndex>(rng.uniform_index(10));
    map[0] = 0;
    const MapSystem sys(s, map);
    const AtomSet a = {0};
    const auto r = probe_lyapunov(sys, a, {0.2}, {0.6}, opts(6, 10, static_cast<std::uint64_t>(trial)));
    std::vector<std::vector<double>> point(10);
    for (const auto& tr : r.traces) {
      if (tr.id.find(":point:") == std::string::npos) continue;
      const AtomIndex x = s->require_index(tr.id.substr(tr.id.rfind(':') + 1));
      for (std::size_t n = 0; n < tr.distances.size(); ++n) {
        EXPECT_EQ(tr.distances[n], point_to_set(*s, sys.iterate(x, n), a));
      }
      point[x] = tr.distances;
    }
  }
}

TEST(Lyapunov, MixtureNeverExceedsItsPointProbes) {
  Rng rng(49);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = testing::random_euclidean(rng, 10);
    std::vector<AtomIndex> map(10);
    for (auto& y : map) y = static_cast<AtomIndex>(rng.uniform_index(10));
    map[0] = 0;
    const MapSystem sys(s, map);
    Rng probe_rng(static_cast<std::uint64_t>(trial));
    const auto probes = set_probes(s, closed_neighborhood(*s, {0}, 0.7), 12, probe_rng, "t");
    ProbeOptions options = opts(5, 0, 0);
    options.random_probes = false;
    options.explicit_probes = probes;
    const auto r = probe_lyapunov(sys, {0}, {0.2}, {0.7}, options);
    for (std::size_t p = 0; p < probes.size(); ++p) {
      const auto& tr = r.traces[r.traces.size() - probes.size() + p];
      for (std::size_t n = 0; n < tr.distances.size(); ++n) {
        double worst = 0;
        for (const AtomIndex x : probes[p].measure.support()) {
          worst = std::max(worst, point_to_set(*s, sys.iterate(x, n), {0}));
        }
        EXPECT_EQ(tr.distances[n], worst);
      }
    }
  }
}

TEST(MeasureLyapunov, IdentityIsStable) {
  Rng rng(50);
  const auto s = testing::random_euclidean(rng, 8);
  const auto mu = testing::random_probability(rng, s, 4);
  const auto r = probe_measure_lyapunov(MapSystem::identity(s), mu, {0.5}, {0.25}, opts(6, 12, 2));
  EXPECT_NE(r.verdict, StabilityVerdict::kUnstableWitness);
  for (const auto& tr : r.traces) {
    for (const double d : tr.distances) EXPECT_LE(d, 0.25);
  }
}

TEST(MeasureLyapunov, RequiresFixedMeasure) {
  const auto ss = scenario_sink_source(3, 1.0);
  EXPECT_EQ(code_of([&] {
              probe_measure_lyapunov(ss.system, DiscreteMeasure::point_mass(ss.system.space(), 2), {0.5}, {0.5});
            }),
            ErrorCode::kNotInvariantMeasure);
}

TEST(MeasureLyapunov, SinkHasReplayableWitness) {
  const auto ss = scenario_sink_source(4, 2.0);
  ProbeOptions options;
  options.horizon = 12;
  options.explicit_probes = {{"mu_1/8", ss.mu_eps(make_rational(1, 8))}, {"mu_1/4", ss.mu_eps(make_rational(1, 4))}};
  const auto r = probe_measure_lyapunov(ss.system, ss.delta_sink(), {1.0}, {2.0}, options);
  ASSERT_EQ(r.verdict, StabilityVerdict::kUnstableWitness);
  EXPECT_EQ(r.witness->distance, 2.0);
  EXPECT_EQ(replay_witness(ss.system, r), 2.0);

  options.random_probes = false;
  const auto only_mixtures = probe_measure_lyapunov(ss.system, ss.delta_sink(), {1.0}, {2.0}, options);
  ASSERT_EQ(only_mixtures.verdict, StabilityVerdict::kUnstableWitness);
  EXPECT_EQ(only_mixtures.witness->distance, 2.0);
  EXPECT_EQ(only_mixtures.witness->n, 0u);
}

TEST(MeasureLyapunov, TorusUniformStableLopsidedNot) {
  const std::size_t n = 16;
  const auto t = scenario_torus_shear(n);
  ProbeOptions options;
  options.horizon = n;
  options.random_probes = false;
  options.explicit_probes = {{"lift:1", t.lift(t.lambda0(), 1)}, {"lift:-1", t.lift(t.lambda0(), n - 1)}};
  const double res = 1.0 / n;
  const auto lam = probe_measure_lyapunov(t.system, t.lambda0(), {2 * res}, {res}, options);
  EXPECT_EQ(lam.verdict, StabilityVerdict::kStableAtResolution);
  for (const auto& tr : lam.traces) {
    for (const double d : tr.distances) EXPECT_EQ(d, res);
  }

  options.explicit_probes = {{"lift:1", t.lift(t.nu0(), 1)}};
  const auto nu = probe_measure_lyapunov(t.system, t.nu0(), {2 * res}, {res}, options);
  ASSERT_EQ(nu.verdict, StabilityVerdict::kUnstableWitness);
  EXPECT_EQ(replay_witness(t.system, nu), nu.witness->distance);
  const auto& d = nu.traces.front().distances;
  EXPECT_GE(*std::max_element(d.begin(), d.end()), 0.25 - res);
}

TEST(MeasureLyapunov, ProbesStayWithinDelta) {
  Rng rng(51);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = testing::random_euclidean(rng, 9);
    const auto mu = testing::random_probability(rng, s, 4);
    Rng probe_rng(static_cast<std::uint64_t>(trial));
    for (const auto& p : measure_probes(mu, 0.3, 10, probe_rng, "t")) {
      EXPECT_LE(w_infinity(mu, p.measure).value, 0.3);
      EXPECT_TRUE(p.measure.is_probability());
    }
  }
}

TEST(Asymptotic, BasinContracts) {
  const auto ss = scenario_sink_source(5, 1.2);
  const auto r = probe_asymptotic(ss.system, {ss.sink}, 1.0, opts(6, 8, 0));
  EXPECT_EQ(r.verdict, StabilityVerdict::kStableAtResolution);
}

TEST(Asymptotic, SourceMassFloors) {
  const auto ss = scenario_sink_source(5, 1.2);
  const auto r = probe_asymptotic(ss.system, {ss.sink}, 1.2, opts(20, 8, 0));
  ASSERT_EQ(r.verdict, StabilityVerdict::kUnstableWitness);
  EXPECT_EQ(r.witness->distance, 1.2);
  EXPECT_EQ(replay_witness(ss.system, r), 1.2);
}

TEST(Asymptotic, IdentityOffTheSetFails) {
  const auto s = line_space({0.0, 1.0, 2.0});
  const auto r = probe_asymptotic(MapSystem::identity(s), {0}, 1.0, opts(3, 0, 0));
  ASSERT_EQ(r.verdict, StabilityVerdict::kUnstableWitness);
  EXPECT_EQ(r.witness->distance, 1.0);
}

TEST(Attractor, IdentityWholeSpace) {
  const auto s = line_space({0.0, 1.0, 2.0});
  const auto r = probe_attractor(MapSystem::identity(s), {0, 1, 2}, 0.5, 4);
  EXPECT_EQ(r.verdict, StabilityVerdict::kStableAtResolution);
  EXPECT_EQ(r.attractor_intersection, AtomSet({0, 1, 2}));
}

TEST(Attractor, SinkAttracts) {
  const auto ss = scenario_sink_source(4, 1.0);
  const auto r = probe_attractor(ss.system, {ss.sink}, 0.5, 8);
  EXPECT_EQ(r.verdict, StabilityVerdict::kStableAtResolution);
  EXPECT_EQ(r.trapping_step, 1u);
  EXPECT_EQ(r.attractor_intersection, AtomSet({ss.sink}));
}

TEST(Attractor, SourceDoesNot) {
  const auto ss = scenario_sink_source(4, 1.0);
  const auto r = probe_attractor(ss.system, {ss.source}, 0.5, 8);
  ASSERT_EQ(r.verdict, StabilityVerdict::kUnstableWitness);
  EXPECT_GT(r.witness->distance, 0.0);
  EXPECT_EQ(replay_witness(ss.system, r), r.witness->distance);
}

TEST(Exponential, OneStepCollapse) {
  const auto s = line_space({0.0, 1.0, 2.0});
  const MapSystem sys(s, {0, 0, 0});
  const auto r = probe_exponential(sys, {0}, {2.0}, 5);
  EXPECT_EQ(r.verdict, StabilityVerdict::kStableAtResolution);
  ASSERT_EQ(r.fits.size(), 1u);
  EXPECT_FALSE(r.fits[0].lambda);
  EXPECT_TRUE(r.fits[0].lifted_identity);
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_EQ(r.fits[0].hausdorff[n], 0.0);
}

TEST(Exponential, HalvingFitsLog2) {
  const auto sys = halving(6);
  const auto r = probe_exponential(sys, {0}, {64.0, 16.0}, 10);
  EXPECT_EQ(r.verdict, StabilityVerdict::kStableAtResolution);
  for (const auto& fit : r.fits) {
    ASSERT_TRUE(fit.lambda);
    EXPECT_NEAR(*fit.lambda, std::log(2.0), 1e-12);
    EXPECT_GE(fit.r2, 0.99);
    EXPECT_NEAR(fit.c, 1.0, 1e-12);
    EXPECT_TRUE(fit.lifted_identity);
    for (std::size_t n = 0; n < fit.hausdorff.size(); ++n) {
      EXPECT_LE(fit.hausdorff[n], fit.c * std::exp(-*fit.lambda * static_cast<double>(n)) * fit.hausdorff[0] + 1e-9);
    }
  }
}

TEST(Exponential, RotationBandIsNotExponential) {
  const auto t = scenario_torus_shear(8);
  const auto r = probe_exponential(t.system, t.row(0), {1.0 / 8}, 8);
  ASSERT_EQ(r.verdict, StabilityVerdict::kUnstableWitness);
  for (const double h : r.fits[0].hausdorff) EXPECT_EQ(h, 1.0 / 8);
  EXPECT_TRUE(r.fits[0].lifted_identity);
  EXPECT_EQ(replay_witness(t.system, r), r.witness->distance);
}

TEST(Exponential, ZeroRadiusIsInconclusive) {
  const auto ss = scenario_sink_source(3, 1.0);
  const auto r = probe_exponential(ss.system, {ss.sink}, {0.1}, 4);
  EXPECT_EQ(r.verdict, StabilityVerdict::kInconclusive);
  EXPECT_TRUE(r.fits[0].skipped);
}

TEST(Reports, SameSeedSameTraces) {
  const auto t = scenario_torus_shear(8);
  const ProbeOptions options = opts(8, 6, 99);
  const auto a = probe_measure_lyapunov(t.system, t.lambda0(), {0.25}, {0.125}, options);
  const auto b = probe_measure_lyapunov(t.system, t.lambda0(), {0.25}, {0.125}, options);
  ASSERT_EQ(a.traces.size(), b.traces.size());
  for (std::size_t i = 0; i < a.traces.size(); ++i) {
    EXPECT_EQ(a.traces[i].id, b.traces[i].id);
    EXPECT_EQ(a.traces[i].distances, b.traces[i].distances);
  }
}

}  // namespace
}  // namespace dynot
