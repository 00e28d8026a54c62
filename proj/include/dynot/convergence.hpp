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

// Finite-prefix diagnostics for convergence in the bottleneck metric.
// Verdicts are evidence about the given terms only; a NotDConvergent
// verdict always carries an exact witness.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dynot/measure.hpp"

namespace dynot {

inline constexpr std::size_t kMaxSeparatingSupport = 12;

struct MeasureSequence {
  SpacePtr space;
  std::vector<DiscreteMeasure> terms;
  DiscreteMeasure limit;

  /// Throws kSpaceMismatch, kNotProbability, kMalformedInput (no terms).
  void validate() const;
};

struct SeparatingSet {
  AtomSet atoms;
  /// Distance from the set to the rest of the limit's support; for the whole
  /// support, the space diameter (+inf for a one-point space).
  double clearance;
};

/// All nonempty subsets of supp(mu), ordered by bitmask over the support.
/// Throws kSupportTooLarge beyond kMaxSeparatingSupport atoms.
std::vector<SeparatingSet> separating_subsets(const DiscreteMeasure& mu);

struct MassCheck {
  bool stabilized;
  /// First index from which mu_n(N_eps(A)) = mu(A) holds through the end.
  std::size_t n0;
  /// Last index where it fails.
  std::optional<std::size_t> last_violation;
  /// Number of trailing terms that violate.
  std::size_t trailing_violations;
};

/// Compares mu_n of the open eps-neighborhood of A with mu(A), exactly.
/// Throws kEpsilonTooLarge unless 0 < eps < A.clearance.
MassCheck separating_mass_check(const MeasureSequence& seq, const SeparatingSet& a, double eps);

struct DeltaSequence {
  std::vector<double> delta;
  std::vector<double> w1;
};

DeltaSequence delta_sequence(const MeasureSequence& seq);

enum class Verdict { kConsistent, kNotDConvergent, kInconclusive };

const char* verdict_name(Verdict v);

struct Witness {
  /// "separating-mass", "support-hausdorff" or "direct-delta".
  std::string criterion;
  std::size_t index;
  AtomSet atoms;
  double value;
};

struct SetCheck {
  SeparatingSet set;
  double eps;
  MassCheck check;
};

struct CriterionResult {
  bool pass;
  /// Stabilization index when passing, first failing index otherwise.
  std::optional<std::size_t> index;
};

struct ConvergenceReport {
  DeltaSequence values;
  std::vector<double> support_hausdorff;
  /// Half the smallest clearance: the scale below which Delta counts as small.
  double resolution;
  std::vector<SetCheck> set_checks;

  CriterionResult w_proxy;
  CriterionResult separating_mass;
  CriterionResult support_convergence;
  CriterionResult direct_delta;

  Verdict theorem_verdict;
  Verdict direct_verdict;
  Verdict overall;
  bool agreement;
  std::optional<Witness> witness;
};

struct ConvergenceOptions {
  /// W1 at or below this counts as converged.
  double w_threshold = 1e-6;
  /// Delta or d_H at or below this counts as zero.
  double zero_tolerance = 1e-12;
  /// Terms inspected for trends and persistent failures.
  std::size_t tail = 3;
};

/// Requires at least two terms. Throws kSupportTooLarge, kMalformedInput.
ConvergenceReport d_convergence_verdict(const MeasureSequence& seq, const ConvergenceOptions& options = {});

struct CompareRow {
  std::size_t n;
  double w1;
  double w2;
  double w_infinity;
  double support_hausdorff;
};

std::vector<CompareRow> compare_sequence(const MeasureSequence& seq);

}  // namespace dynot
