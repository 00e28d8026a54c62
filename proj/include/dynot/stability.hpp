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

// Stability of sets and measures under the induced map on measures.
//
// Probes are sampled, so stable verdicts hold at the tested resolution only.
// Witnesses are exact and replayable from the report.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dynot/measure.hpp"
#include "dynot/random.hpp"
#include "dynot/space.hpp"

namespace dynot {

/// A self-map of a finite metric space.
class MapSystem {
 public:
  /// Throws kMalformedInput unless `map` has one in-range image per point.
  MapSystem(SpacePtr space, std::vector<AtomIndex> map);
  static MapSystem identity(SpacePtr space);

  const SpacePtr& space() const { return space_; }
  const std::vector<AtomIndex>& map() const { return map_; }

  AtomIndex apply(AtomIndex x) const { return map_[x]; }
  AtomIndex iterate(AtomIndex x, std::size_t n) const;
  /// f^n(A).
  AtomSet image(const AtomSet& a, std::size_t n = 1) const;
  /// f^n pushed forward.
  DiscreteMeasure push(const DiscreteMeasure& mu, std::size_t n = 1) const;

  /// f(A) is a subset of A.
  bool is_invariant(const AtomSet& a) const;
  /// The pushforward of mu equals mu.
  bool fixes(const DiscreteMeasure& mu) const;

 private:
  SpacePtr space_;
  std::vector<AtomIndex> map_;
};

/// The set of measures supported in `atoms`. Membership only; never listed.
struct LiftedSet {
  AtomSet atoms;
  bool contains(const DiscreteMeasure& mu) const { return is_subset(mu.support(), atoms); }
};

/// Delta from mu to the lift of A: max over supp(mu) of d(x, A).
/// Throws kEmptySet.
double dist_to_lift(const DiscreteMeasure& mu, const AtomSet& a);

/// Minimum of w_infinity(mu, nu) over nu on A with weights in 1/den steps.
/// Throws kEmptySet, kTooLarge when the grid exceeds 200000 candidates.
double dist_to_lift_bruteforce(const DiscreteMeasure& mu, const AtomSet& a, std::int64_t den = 8);

struct LiftHausdorff {
  /// Hausdorff distance of the sets.
  double direct;
  /// Same quantity from dist_to_lift over point masses on U and V.
  double lifted;
};

/// Throws kEmptySet.
LiftHausdorff lift_hausdorff(const SpacePtr& space, const AtomSet& u, const AtomSet& v);

struct Probe {
  std::string id;
  DiscreteMeasure measure;
};

/// Point masses on `cell`, then `random_count` measures on random subsets of
/// it with weights on a grid of denominator at most 16.
std::vector<Probe> set_probes(const SpacePtr& space, const AtomSet& cell, std::size_t random_count,
                              Rng& rng, const std::string& tag);

/// Split and shift perturbations of mu with w_infinity(mu, nu) <= delta.
std::vector<Probe> measure_probes(const DiscreteMeasure& mu, double delta, std::size_t random_count, Rng& rng,
                                  const std::string& tag);

enum class Notion { kLyapunov, kMeasureLyapunov, kAsymptotic, kAttractor, kExponential };
const char* notion_name(Notion n);

enum class StabilityVerdict { kStableAtResolution, kUnstableWitness, kInconclusive };
const char* stability_verdict_name(StabilityVerdict v);

struct ProbeTrace {
  std::string id;
  /// Index into the report's delta grid; 0 for single-cell notions.
  std::size_t cell;
  /// Distance to the target after n steps, n = 0..horizon.
  std::vector<double> distances;
};

struct StabilityWitness {
  std::string probe;
  DiscreteMeasure measure;
  std::size_t n;
  double distance;
  double eps;
};

struct EpsOutcome {
  double eps;
  bool secured;
  /// The smallest tested delta that secures eps.
  std::optional<double> delta;
};

struct ExponentialFit {
  double delta;
  /// d_H(A, f^n(U)) for n = 0..horizon.
  std::vector<double> hausdorff;
  /// Every term agreed with its lifted counterpart.
  bool lifted_identity;
  /// d_H(A, U) = 0, so the cell carries no information.
  bool skipped;
  bool pass;
  /// Empty when the orbit collapses onto A after one step.
  std::optional<double> lambda;
  double c;
  double r2;
};

struct StabilityReport {
  Notion notion;
  std::uint64_t seed = 0;
  std::size_t horizon = 0;
  std::vector<double> eps_grid;
  std::vector<double> delta_grid;
  /// Target set (set notions) or measure (measure Lyapunov).
  AtomSet target_set;
  std::optional<DiscreteMeasure> target_measure;

  std::vector<ProbeTrace> traces;
  std::vector<EpsOutcome> eps_outcomes;
  std::vector<ExponentialFit> fits;
  /// Attractor: some f^N(U) lies in U, and the intersection of all f^n(U).
  std::optional<std::size_t> trapping_step;
  AtomSet attractor_intersection;

  StabilityVerdict verdict = StabilityVerdict::kInconclusive;
  std::optional<StabilityWitness> witness;
};

struct ProbeOptions {
  std::size_t horizon = 32;
  std::size_t probes_per_cell = 16;
  std::uint64_t seed = 0;
  /// Draw random probes; when false only point masses and explicit probes run.
  bool random_probes = true;
  /// Extra probes, used in every delta-cell they fit in.
  std::vector<Probe> explicit_probes;
};

/// Set-level Lyapunov stability of A. Throws kNotInvariant, kEmptySet.
StabilityReport probe_lyapunov(const MapSystem& system, const AtomSet& a, const std::vector<double>& eps_grid,
                               const std::vector<double>& delta_grid, const ProbeOptions& options = {});

/// Lyapunov stability of {mu} in the Delta topology. Throws kNotInvariantMeasure.
StabilityReport probe_measure_lyapunov(const MapSystem& system, const DiscreteMeasure& mu,
                                       const std::vector<double>& eps_grid, const std::vector<double>& delta_grid,
                                       const ProbeOptions& options = {});

/// Probes in the closed eps-neighborhood of A must land in the lift of A by
/// the horizon. Throws kNotInvariant.
StabilityReport probe_asymptotic(const MapSystem& system, const AtomSet& a, double eps,
                                 const ProbeOptions& options = {});

/// U = closed eps-neighborhood of A must be trapped by some f^N, N <= n_max,
/// and the intersection of all f^n(U) must equal A. Throws kNotInvariant.
StabilityReport probe_attractor(const MapSystem& system, const AtomSet& a, double eps, std::size_t n_max);

/// Fits d_H(A, f^n(U)) <= C exp(-lambda n) d_H(A, U) per delta-cell.
/// Throws kNotInvariant.
StabilityReport probe_exponential(const MapSystem& system, const AtomSet& a, const std::vector<double>& delta_grid,
                                  std::size_t horizon);

/// Recomputes the witness distance from scratch.
double replay_witness(const MapSystem& system, const StabilityReport& report);

}  // namespace dynot
