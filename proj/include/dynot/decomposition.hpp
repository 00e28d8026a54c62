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

// Splitting a measure xi into components nu_1..nu_m with nu_i concentrated
// on B_i and of mass x_i, by the inductive case analysis on the number of
// sets and their arrangement.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dynot/measure.hpp"
#include "dynot/rational.hpp"

namespace dynot {

/// Hard caps on the number of sets.
inline constexpr std::size_t kMaxFeasibilitySets = 14;
inline constexpr std::size_t kMaxDecompositionSets = 12;

/// Subsets of set indices are bitmasks: bit i stands for B_{i+1}.
using IndexMask = std::uint32_t;

struct DecompositionInstance {
  DiscreteMeasure xi;
  std::vector<AtomSet> sets;
  std::vector<Rational> targets;
};

struct FeasibilityVerdict {
  bool feasible = true;
  /// "com1" (union condition) or "com2" (total mass); empty when feasible.
  std::string condition;
  IndexMask witness = 0;
  /// xi of the union (or of X for com2) and the sum of targets.
  Rational lhs;
  Rational rhs;
};

/// Checks every nonempty index subset, smallest cardinality first, then the
/// total-mass condition. Throws kTooManySets, kMalformedInput.
FeasibilityVerdict check_feasibility(const DecompositionInstance& instance);

/// Independent check via max-flow on the set-atom bipartite graph.
bool flow_feasible(const DecompositionInstance& instance);

/// Components read off the max-flow; empty if infeasible.
std::optional<std::vector<DiscreteMeasure>> flow_components(const DecompositionInstance& instance);

struct Arrangement {
  std::size_t rho = 0;
  /// per_k[k] = number of occupied cells cut out by exactly k sets.
  std::vector<std::size_t> per_k;
  /// Occupied cell masks in increasing order.
  std::vector<IndexMask> cells;
};

/// Throws kTooManySets.
Arrangement arrangement(const DecompositionInstance& instance);

enum class CaseLabel { kBase, kCase1, kCase2, kCase3_1, kCase3_2, kCase3_3 };

const char* case_label_name(CaseLabel label);

struct TraceStep {
  CaseLabel label;
  std::size_t depth;
  /// Number of sets in the subproblem.
  std::size_t m;
};

struct DecompositionResult {
  std::vector<DiscreteMeasure> components;
  std::vector<TraceStep> trace;
  std::size_t max_depth = 0;
};

/// Throws kInfeasibleInstance (message carries the witness), kTooManySets.
DecompositionResult decompose(const DecompositionInstance& instance);

struct VerifyVerdict {
  bool valid = true;
  /// "length", "com3.2", "com3.3" or "com3.4".
  std::string condition;
  /// 1-based component index, or the offending atom for com3.4.
  std::size_t index = 0;
};

VerifyVerdict verify_decomposition(const DecompositionInstance& instance,
                                   const std::vector<DiscreteMeasure>& components);

/// Slack of the index subset phi: xi(union of B_i, i in phi) - sum of x_i.
Rational slack(const DecompositionInstance& instance, IndexMask phi);

/// Largest eps that keeps every proper subset condition after moving eps of
/// the cell psi onto target p (0-based): the minimum slack over proper
/// nonempty phi meeting psi and missing p. Empty means unbounded.
/// Throws kCasePreconditionViolated unless every x_i > 0, every proper
/// subset is strict, p is in psi and the cell psi carries mass.
std::optional<Rational> epsilon_zero(const DecompositionInstance& instance, IndexMask psi,
                                     std::size_t p);

/// "{1,3}" style rendering of an index mask.
std::string mask_to_string(IndexMask mask);

}  // namespace dynot
