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


#include "dynot/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dynot/bottleneck.hpp"
#include "dynot/error.hpp"
#include "dynot/geometry.hpp"
#include "dynot/wasserstein.hpp"

namespace dynot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

AtomSet neighborhood(const FiniteMetricSpace& space, const AtomSet& a, double eps) {
  if (std::isinf(eps)) {
    AtomSet all(space.size());
    for (AtomIndex i = 0; i < space.size(); ++i) all[i] = i;
    return all;
  }
  return open_neighborhood(space, a, eps);
}

std::size_t tail_start(std::size_t n, std::size_t tail) { return n > tail ? n - tail : 0; }

bool non_increasing_from(const std::vector<double>& v, std::size_t start) {
  for (std::size_t i = start + 1; i < v.size(); ++i) {
    if (v[i] > v[i - 1]) return false;
  }
  return true;
}

/// Start of the trailing run of values below r, clipped to the tail window.
std::size_t settled_start(const std::vector<double>& v, std::size_t tail, double r) {
  std::size_t start = v.size();
  while (start > 0 && v[start - 1] < r) --start;
  return std::max(start, tail_start(v.size(), tail));
}

bool floor_tail(const std::vector<double>& v, std::size_t tail, double r) {
  for (std::size_t i = tail_start(v.size(), tail); i < v.size(); ++i) {
    if (v[i] < r) return false;
  }
  return true;
}

/// Small at the end of the prefix: zero, or below r with no increase since
/// the values dropped below r (looking back at most `tail` terms).
bool vanishing(const std::vector<double>& v, std::size_t tail, double r, double zero) {
  return v.back() <= zero || (v.back() < r && non_increasing_from(v, settled_start(v, tail, r)));
}

/// First index from which every value satisfies `ok`; empty if the last fails.
template <typename Pred>
std::optional<std::size_t> settles_at(const std::vector<double>& v, Pred ok) {
  std::size_t n = v.size();
  while (n > 0 && ok(v[n - 1])) --n;
  if (n == v.size()) return std::nullopt;
  return n;
}

}  // namespace

void MeasureSequence::validate() const {
  if (terms.empty()) throw Error(ErrorCode::kMalformedInput, "sequence has no terms");
  require_probability(limit);
  if (!same_space(space, limit.space())) throw Error(ErrorCode::kSpaceMismatch, "limit lives on another space");
  for (const auto& t : terms) {
    require_same_space(t, limit);
    require_probability(t);
  }
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kConsistent: return "ConsistentWithDConvergence";
    case Verdict::kNotDConvergent: return "NotDConvergent";
    case Verdict::kInconclusive: return "Inconclusive";
  }
  return "?";
}

std::vector<SeparatingSet> separating_subsets(const DiscreteMeasure& mu) {
  const AtomSet supp = mu.support();
  const std::size_t k = supp.size();
  if (k > kMaxSeparatingSupport) {
    throw Error(ErrorCode::kSupportTooLarge, std::to_string(k) + " support atoms exceed the limit of " +
                                                 std::to_string(kMaxSeparatingSupport));
  }
  const FiniteMetricSpace& space = *mu.space();
  const double diameter = space.diameter();
  std::vector<SeparatingSet> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    AtomSet a, rest;
    for (std::size_t b = 0; b < k; ++b) (mask >> b & 1 ? a : rest).push_back(supp[b]);
    double clearance = kInf;
    if (rest.empty()) {
      if (diameter > 0) clearance = diameter;
    } else {
      for (const AtomIndex x : a) clearance = std::min(clearance, point_to_set(space, x, rest));
    }
    out.push_back({std::move(a), clearance});
  }
  return out;
}

MassCheck separating_mass_check(const MeasureSequence& seq, const SeparatingSet& a, double eps) {
  seq.validate();
  const bool ok_eps = eps > 0 && (eps < a.clearance || (std::isinf(a.clearance) && std::isinf(eps)));
  if (!ok_eps) {
    throw Error(ErrorCode::kEpsilonTooLarge, "eps must lie in (0, clearance)");
  }
  const AtomSet nbhd = neighborhood(*seq.space, a.atoms, eps);
  const Rational target = seq.limit.mass_of(a.atoms);
  MassCheck out{true, 0, std::nullopt, 0};
  for (std::size_t n = 0; n < seq.terms.size(); ++n) {
    if (seq.terms[n].mass_of(nbhd) == target) {
      out.trailing_violations = 0;
    } else {
      out.last_violation = n;
      ++out.trailing_violations;
    }
  }
  out.stabilized = out.trailing_violations == 0;
  out.n0 = out.last_violation ? *out.last_violation + 1 : 0;
  return out;
}

DeltaSequence delta_sequence(const MeasureSequence& seq) {
  seq.validate();
  DeltaSequence out;
  for (const auto& t : seq.terms) {
    out.delta.push_back(w_infinity(t, seq.limit).value);
    out.w1.push_back(w_p(t, seq.limit, 1));
  }
  return out;
}

ConvergenceReport d_convergence_verdict(const MeasureSequence& seq, const ConvergenceOptions& options) {
  seq.validate();
  if (seq.terms.size() < 2) throw Error(ErrorCode::kMalformedInput, "a verdict needs at least two terms");
  const FiniteMetricSpace& space = *seq.space;
  const std::size_t last = seq.terms.size() - 1;
  const std::size_t tail = std::max<std::size_t>(options.tail, 1);
  const double zero = options.zero_tolerance;

  ConvergenceReport r;
  r.values = delta_sequence(seq);
  const AtomSet limit_support = seq.limit.support();
  for (const auto& t : seq.terms) r.support_hausdorff.push_back(hausdorff(space, t.support(), limit_support));

  double min_clearance = kInf;
  for (auto& set : separating_subsets(seq.limit)) {
    min_clearance = std::min(min_clearance, set.clearance);
    const double eps = set.clearance / 2;
    MassCheck check = separating_mass_check(seq, set, eps);
    r.set_checks.push_back({std::move(set), eps, check});
  }
  r.resolution = min_clearance / 2;
  const double res = r.resolution;

  // (b) masses near separating sets.
  r.separating_mass.pass = true;
  std::size_t n0 = 0;
  const SetCheck* persistent = nullptr;
  for (const auto& sc : r.set_checks) {
    if (!sc.check.stabilized) {
      if (r.separating_mass.pass) r.separating_mass.index = sc.check.last_violation;
      r.separating_mass.pass = false;
      if (!persistent && sc.check.trailing_violations >= std::min(tail, seq.terms.size())) persistent = &sc;
    }
    n0 = std::max(n0, sc.check.n0);
  }
  if (r.separating_mass.pass) r.separating_mass.index = n0;

  // (a) weak* proxy, judged on the terms where every mass check holds.
  const auto& w1 = r.values.w1;
  std::size_t run = seq.terms.size() - n0;
  if (!r.separating_mass.pass) run = 0;
  const std::size_t window = std::min(tail, run == 0 ? seq.terms.size() : run);
  const std::size_t w_start = seq.terms.size() - window;
  r.w_proxy.pass = w1.back() <= options.w_threshold ||
                   (non_increasing_from(w1, w_start) && (window < 2 || w1.back() < w1[w_start]));
  r.w_proxy.index = r.w_proxy.pass ? settles_at(w1, [&](double v) { return v <= options.w_threshold; })
                                   : std::optional<std::size_t>(last);

  // (c) support convergence.
  const auto& hd = r.support_hausdorff;
  r.support_convergence.pass = vanishing(hd, tail, res, zero);
  r.support_convergence.index = r.support_convergence.pass
                                    ? settles_at(hd, [&](double v) { return v < res; })
                                    : std::optional<std::size_t>(last);
  const bool hd_floor = floor_tail(hd, tail, res);

  // (d) the Delta sequence itself.
  const auto& delta = r.values.delta;
  r.direct_delta.pass = vanishing(delta, tail, res, zero);
  r.direct_delta.index = r.direct_delta.pass ? settles_at(delta, [&](double v) { return v < res; })
                                             : std::optional<std::size_t>(last);
  const bool delta_floor = floor_tail(delta, tail, res);

  if (persistent) {
    const DiscreteMeasure& term = seq.terms[*persistent->check.last_violation];
    const AtomSet nbhd = neighborhood(space, persistent->set.atoms, persistent->eps);
    const Rational gap = term.mass_of(nbhd) - seq.limit.mass_of(persistent->set.atoms);
    r.theorem_verdict = Verdict::kNotDConvergent;
    r.witness = Witness{"separating-mass", *persistent->check.last_violation, persistent->set.atoms,
                        std::abs(to_double(gap))};
  } else if (hd_floor) {
    r.theorem_verdict = Verdict::kNotDConvergent;
    r.witness = Witness{"support-hausdorff", last, seq.terms[last].support(), hd[last]};
  } else if (r.w_proxy.pass && r.separating_mass.pass && r.support_convergence.pass) {
    r.theorem_verdict = Verdict::kConsistent;
  } else {
    r.theorem_verdict = Verdict::kInconclusive;
  }

  if (r.direct_delta.pass) {
    r.direct_verdict = Verdict::kConsistent;
  } else if (delta_floor) {
    r.direct_verdict = Verdict::kNotDConvergent;
  } else {
    r.direct_verdict = Verdict::kInconclusive;
  }

  r.agreement = r.theorem_verdict == r.direct_verdict;
  if (r.agreement) {
    r.overall = r.theorem_verdict;
  } else if (r.theorem_verdict == Verdict::kNotDConvergent || r.direct_verdict == Verdict::kNotDConvergent) {
    r.overall = Verdict::kNotDConvergent;
  } else {
    r.overall = Verdict::kInconclusive;
  }
  if (r.overall == Verdict::kNotDConvergent && !r.witness) {
    r.witness = Witness{"direct-delta", last, limit_support, delta[last]};
  }
  return r;
}

std::vector<CompareRow> compare_sequence(const MeasureSequence& seq) {
  seq.validate();
  const AtomSet limit_support = seq.limit.support();
  std::vector<CompareRow> rows;
  for (std::size_t n = 0; n < seq.terms.size(); ++n) {
    const auto& t = seq.terms[n];
    rows.push_back({n, w_p(t, seq.limit, 1), w_p(t, seq.limit, 2), w_infinity(t, seq.limit).value,
                    hausdorff(*seq.space, t.support(), limit_support)});
  }
  return rows;
}

}  // namespace dynot
