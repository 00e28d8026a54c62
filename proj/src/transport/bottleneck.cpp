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


#include "dynot/bottleneck.hpp"

#include <algorithm>
#include <optional>
#include <type_traits>
#include <vector>

#include "dynot/detail/flow.hpp"
#include "dynot/error.hpp"

namespace dynot {

namespace {

class ThresholdFlow {
 public:
  ThresholdFlow(const DiscreteMeasure& mu, const DiscreteMeasure& nu)
      : space_(*mu.space()), rows_(mu.support()), cols_(nu.support()) {
    std::vector<const Rational*> all;
    for (const auto& [a, w] : mu.weights()) {
      row_mass_.push_back(w);
      all.push_back(&w);
    }
    for (const auto& [a, w] : nu.weights()) {
      col_mass_.push_back(w);
      all.push_back(&w);
    }
    scale_ = detail::integer_scale(all);
  }

  /// Plan entries if feasible at t.
  std::optional<std::vector<PlanEntry>> solve(double t) const {
    if (scale_) return solve_as<std::int64_t>(t);
    return solve_as<Rational>(t);
  }

  std::vector<double> candidates() const {
    std::vector<double> out{0.0};
    for (const AtomIndex i : rows_) {
      for (const AtomIndex j : cols_) out.push_back(space_.dist(i, j));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  template <typename Cap>
  Cap capacity(const Rational& w) const {
    if constexpr (std::is_same_v<Cap, Rational>) {
      return w;
    } else {
      return detail::scale_to_int(w, *scale_);
    }
  }

  template <typename Cap>
  std::optional<std::vector<PlanEntry>> solve_as(double t) const {
    const std::size_t r = rows_.size();
    const std::size_t c = cols_.size();
    const std::size_t source = r + c;
    const std::size_t sink = source + 1;
    detail::MaxFlow<Cap> net(r + c + 2);
    Cap total(0);
    for (std::size_t i = 0; i < r; ++i) {
      const Cap w = capacity<Cap>(row_mass_[i]);
      net.add_edge(source, i, w);
      total += w;
    }
    for (std::size_t j = 0; j < c; ++j) net.add_edge(r + j, sink, capacity<Cap>(col_mass_[j]));
    struct Arc {
      std::size_t edge, i, j;
    };
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < r; ++i) {
      const Cap w = capacity<Cap>(row_mass_[i]);
      for (std::size_t j = 0; j < c; ++j) {
        if (space_.dist(rows_[i], cols_[j]) <= t) arcs.push_back({net.add_edge(i, r + j, w), i, j});
      }
    }
    if (net.run(source, sink) != total) return std::nullopt;
    std::vector<PlanEntry> entries;
    for (const Arc& a : arcs) {
      const Cap& f = net.flow_on(a.edge);
      if (!(f > 0)) continue;
      Rational mass;
      if constexpr (std::is_same_v<Cap, Rational>) {
        mass = f;
      } else {
        mass = Rational(mpz_class(static_cast<long>(f)), mpz_class(static_cast<long>(*scale_)));
        mass.canonicalize();
      }
      entries.push_back({rows_[a.i], cols_[a.j], mass});
    }
    return entries;
  }

  const FiniteMetricSpace& space_;
  AtomSet rows_;
  AtomSet cols_;
  std::vector<Rational> row_mass_;
  std::vector<Rational> col_mass_;
  std::optional<std::int64_t> scale_;
};

void check_inputs(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  require_same_space(mu, nu);
  require_probability(mu);
  require_probability(nu);
}

}  // namespace

bool feasible_at_threshold(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double t) {
  check_inputs(mu, nu);
  return ThresholdFlow(mu, nu).solve(t).has_value();
}

SolveReport w_infinity(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  check_inputs(mu, nu);
  const ThresholdFlow flow(mu, nu);
  const std::vector<double> cand = flow.candidates();
  // The largest candidate admits every pair, so it is always feasible.
  std::size_t lo = 0;
  std::size_t hi = cand.size() - 1;
  std::size_t calls = 0;
  std::optional<std::vector<PlanEntry>> best;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    ++calls;
    if (auto entries = flow.solve(cand[mid])) {
      hi = mid;
      best = std::move(entries);
    } else {
      lo = mid + 1;
    }
  }
  if (!best) {
    ++calls;
    best = flow.solve(cand[lo]);
  }
  TransportPlan plan = TransportPlan::make(mu, nu, std::move(*best));
  const double value = bottleneck_of_plan(plan);
  return SolveReport{value, std::move(plan), cand.size(), calls};
}

double w_infinity_bruteforce(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  check_inputs(mu, nu);
  const FiniteMetricSpace& space = *mu.space();
  AtomSet small = mu.support();
  AtomSet large = nu.support();
  const DiscreteMeasure* ms = &mu;
  const DiscreteMeasure* ml = &nu;
  if (small.size() * large.size() > 36) {
    throw Error(ErrorCode::kTooLarge, "brute force is limited to 36 support pairs");
  }
  if (small.size() > large.size()) {
    std::swap(small, large);
    std::swap(ms, ml);
  }
  std::vector<double> cand{0.0};
  for (const AtomIndex i : small) {
    for (const AtomIndex j : large) cand.push_back(space.dist(i, j));
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  const std::size_t k = small.size();
  for (const double t : cand) {
    bool ok = true;
    for (std::size_t mask = 1; ok && mask < (std::size_t{1} << k); ++mask) {
      Rational lhs(0);
      AtomSet reach;
      for (std::size_t b = 0; b < k; ++b) {
        if (!(mask >> b & 1)) continue;
        lhs += ms->weight(small[b]);
        for (const AtomIndex j : large) {
          if (space.dist(small[b], j) <= t) reach.push_back(j);
        }
      }
      ok = lhs <= ml->mass_of(make_atom_set(std::move(reach)));
    }
    if (ok) return t;
  }
  return cand.back();
}

}  // namespace dynot
