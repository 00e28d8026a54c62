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


#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dynot/bottleneck.hpp"
#include "dynot/error.hpp"
#include "dynot/geometry.hpp"
#include "dynot/stability.hpp"

namespace dynot {

namespace {

/// Independent stream per delta-cell so cells do not depend on each other.
std::uint64_t cell_seed(std::uint64_t seed, std::size_t cell) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (cell + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void require_invariant(const MapSystem& system, const AtomSet& a) {
  if (a.empty()) throw Error(ErrorCode::kEmptySet, "target set is empty");
  if (!system.is_invariant(a)) throw Error(ErrorCode::kNotInvariant, "f(A) is not contained in A");
}

AtomSet random_subset(Rng& rng, const AtomSet& from, std::size_t k) {
  std::vector<AtomIndex> pool = from;
  for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.uniform_index(pool.size() - i)]);
  pool.resize(k);
  return make_atom_set(std::move(pool));
}

/// Positive parts summing to `total`.
std::vector<std::int64_t> random_parts(Rng& rng, std::int64_t total, std::size_t slots) {
  std::vector<std::int64_t> parts(slots, 1);
  for (std::int64_t r = total - static_cast<std::int64_t>(slots); r > 0; --r) ++parts[rng.uniform_index(slots)];
  return parts;
}

AtomSet closed_ball(const FiniteMetricSpace& space, AtomIndex x, double r) {
  AtomSet out;
  for (AtomIndex y = 0; y < space.size(); ++y) {
    if (space.dist(x, y) <= r) out.push_back(y);
  }
  return out;
}

using Distance = double (*)(const DiscreteMeasure&, const StabilityReport&);

double set_distance(const DiscreteMeasure& nu, const StabilityReport& r) { return dist_to_lift(nu, r.target_set); }

double measure_distance(const DiscreteMeasure& nu, const StabilityReport& r) {
  return w_infinity(nu, *r.target_measure).value;
}

std::vector<double> orbit_distances(const MapSystem& system, const DiscreteMeasure& nu, std::size_t horizon,
                                    const StabilityReport& r, Distance distance) {
  std::vector<double> out;
  DiscreteMeasure cur = nu;
  for (std::size_t n = 0;; ++n) {
    out.push_back(distance(cur, r));
    if (n == horizon) break;
    cur = system.push(cur);
  }
  return out;
}

struct CellRun {
  double delta;
  std::vector<Probe> probes;
  std::vector<double> sups;
  bool nontrivial = false;
};

/// Per-eps verdicts shared by the two Lyapunov probes.
void lyapunov_verdict(StabilityReport& r, const std::vector<CellRun>& cells) {
  std::vector<std::size_t> informative;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (cells[c].nontrivial) informative.push_back(c);
  }
  std::sort(informative.begin(), informative.end(),
            [&](std::size_t x, std::size_t y) { return cells[x].delta < cells[y].delta; });
  for (const double eps : r.eps_grid) {
    EpsOutcome out{eps, false, std::nullopt};
    for (const std::size_t c : informative) {
      const auto& sups = cells[c].sups;
      if (std::all_of(sups.begin(), sups.end(), [&](double s) { return s <= eps; })) {
        out.secured = true;
        out.delta = cells[c].delta;
        break;
      }
    }
    r.eps_outcomes.push_back(out);
  }
  if (informative.empty()) {
    r.verdict = StabilityVerdict::kInconclusive;
    return;
  }
  for (const auto& out : r.eps_outcomes) {
    if (out.secured) continue;
    // The most severe probe of the finest informative cell.
    const std::size_t c = informative.front();
    const CellRun& cell = cells[c];
    std::size_t first_trace = 0;
    while (r.traces[first_trace].cell != c) ++first_trace;
    const std::size_t p = static_cast<std::size_t>(std::max_element(cell.sups.begin(), cell.sups.end()) -
                                                   cell.sups.begin());
    const auto& d = r.traces[first_trace + p].distances;
    std::size_t n = 0;
    while (d[n] <= out.eps) ++n;
    r.verdict = StabilityVerdict::kUnstableWitness;
    r.witness = StabilityWitness{cell.probes[p].id, cell.probes[p].measure, n, d[n], out.eps};
    return;
  }
  r.verdict = StabilityVerdict::kStableAtResolution;
}

void run_cells(const MapSystem& system, StabilityReport& r, std::vector<CellRun>& cells, Distance distance) {
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (const auto& probe : cells[c].probes) {
      auto d = orbit_distances(system, probe.measure, r.horizon, r, distance);
      cells[c].sups.push_back(*std::max_element(d.begin(), d.end()));
      if (d.front() > 0) cells[c].nontrivial = true;
      r.traces.push_back({probe.id, c, std::move(d)});
    }
  }
}

std::string cell_tag(std::size_t c) { return "c" + std::to_string(c); }

}  // namespace

const char* notion_name(Notion n) {
  switch (n) {
    case Notion::kLyapunov: return "lyapunov";
    case Notion::kMeasureLyapunov: return "measure-lyapunov";
    case Notion::kAsymptotic: return "asymptotic";
    case Notion::kAttractor: return "attractor";
    case Notion::kExponential: return "exponential";
  }
  return "?";
}

const char* stability_verdict_name(StabilityVerdict v) {
  switch (v) {
    case StabilityVerdict::kStableAtResolution: return "StableAtResolution";
    case StabilityVerdict::kUnstableWitness: return "UnstableWitness";
    case StabilityVerdict::kInconclusive: return "Inconclusive";
  }
  return "?";
}

std::vector<Probe> set_probes(const SpacePtr& space, const AtomSet& cell, std::size_t random_count, Rng& rng,
                              const std::string& tag) {
  std::vector<Probe> out;
  for (const AtomIndex x : cell) {
    out.push_back({tag + ":point:" + space->id(x), DiscreteMeasure::point_mass(space, x)});
  }
  if (cell.empty()) return out;
  for (std::size_t i = 0; i < random_count; ++i) {
    const std::size_t k = 1 + rng.uniform_index(std::min<std::size_t>(cell.size(), 4));
    const AtomSet atoms = random_subset(rng, cell, k);
    const std::int64_t den = rng.uniform_int(static_cast<std::int64_t>(k), 16);
    const auto parts = random_parts(rng, den, k);
    std::vector<std::pair<AtomIndex, Rational>> pairs;
    for (std::size_t j = 0; j < k; ++j) pairs.emplace_back(atoms[j], make_rational(parts[j], den));
    out.push_back({tag + ":random:" + std::to_string(i), DiscreteMeasure::from_pairs(space, pairs)});
  }
  return out;
}

std::vector<Probe> measure_probes(const DiscreteMeasure& mu, double delta, std::size_t random_count, Rng& rng,
                                  const std::string& tag) {
  const FiniteMetricSpace& space = *mu.space();
  const AtomSet supp = mu.support();
  std::vector<Probe> out;
  for (std::size_t i = 0; i < random_count; ++i) {
    DiscreteMeasure nu(mu.space());
    std::string kind;
    if (i % 2 == 0) {
      // Split: move a grid fraction of one atom to a point within delta.
      kind = "split";
      const AtomIndex a = supp[rng.uniform_index(supp.size())];
      AtomSet ball = closed_ball(space, a, delta);
      ball.erase(std::find(ball.begin(), ball.end(), a));
      if (ball.empty()) continue;
      const AtomIndex b = ball[rng.uniform_index(ball.size())];
      const Rational moved = make_rational(rng.uniform_int(1, 8), 8) * mu.weight(a);
      nu = mu;
      nu -= DiscreteMeasure::from_pairs(mu.space(), {{a, moved}});
      nu += DiscreteMeasure::from_pairs(mu.space(), {{b, moved}});
    } else {
      // Shift: every atom moves to a point of its closed delta-ball.
      kind = "shift";
      std::vector<std::pair<AtomIndex, Rational>> pairs;
      for (const AtomIndex a : supp) {
        const AtomSet ball = closed_ball(space, a, delta);
        pairs.emplace_back(ball[rng.uniform_index(ball.size())], mu.weight(a));
      }
      nu = DiscreteMeasure::from_pairs(mu.space(), pairs);
    }
    if (w_infinity(mu, nu).value > delta) continue;
    out.push_back({tag + ":" + kind + ":" + std::to_string(i), std::move(nu)});
  }
  return out;
}

StabilityReport probe_lyapunov(const MapSystem& system, const AtomSet& a, const std::vector<double>& eps_grid,
                               const std::vector<double>& delta_grid, const ProbeOptions& options) {
  require_invariant(system, a);
  StabilityReport r;
  r.notion = Notion::kLyapunov;
  r.seed = options.seed;
  r.horizon = options.horizon;
  r.eps_grid = eps_grid;
  r.delta_grid = delta_grid;
  r.target_set = a;
  const SpacePtr& space = system.space();
  std::vector<CellRun> cells;
  for (std::size_t c = 0; c < delta_grid.size(); ++c) {
    Rng rng(cell_seed(options.seed, c));
    CellRun cell{delta_grid[c], {}, {}};
    const AtomSet nbhd = closed_neighborhood(*space, a, delta_grid[c]);
    cell.probes = set_probes(space, nbhd, options.random_probes ? options.probes_per_cell : 0, rng, cell_tag(c));
    for (const auto& p : options.explicit_probes) {
      if (dist_to_lift(p.measure, a) <= delta_grid[c]) cell.probes.push_back(p);
    }
    cells.push_back(std::move(cell));
  }
  run_cells(system, r, cells, set_distance);
  lyapunov_verdict(r, cells);
  return r;
}

StabilityReport probe_measure_lyapunov(const MapSystem& system, const DiscreteMeasure& mu,
                                       const std::vector<double>& eps_grid, const std::vector<double>& delta_grid,
                                       const ProbeOptions& options) {
  require_probability(mu);
  if (!system.fixes(mu)) throw Error(ErrorCode::kNotInvariantMeasure, "the pushforward of mu differs from mu");
  StabilityReport r;
  r.notion = Notion::kMeasureLyapunov;
  r.seed = options.seed;
  r.horizon = options.horizon;
  r.eps_grid = eps_grid;
  r.delta_grid = delta_grid;
  r.target_measure = mu;
  std::vector<CellRun> cells;
  for (std::size_t c = 0; c < delta_grid.size(); ++c) {
    Rng rng(cell_seed(options.seed, c));
    CellRun cell{delta_grid[c], {}, {}};
    if (options.random_probes) {
      cell.probes = measure_probes(mu, delta_grid[c], options.probes_per_cell, rng, cell_tag(c));
    }
    for (const auto& p : options.explicit_probes) {
      if (w_infinity(mu, p.measure).value <= delta_grid[c]) cell.probes.push_back(p);
    }
    cells.push_back(std::move(cell));
  }
  run_cells(system, r, cells, measure_distance);
  lyapunov_verdict(r, cells);
  return r;
}

StabilityReport probe_asymptotic(const MapSystem& system, const AtomSet& a, double eps,
                                 const ProbeOptions& options) {
  require_invariant(system, a);
  StabilityReport r;
  r.notion = Notion::kAsymptotic;
  r.seed = options.seed;
  r.horizon = options.horizon;
  r.eps_grid = {eps};
  r.target_set = a;
  const SpacePtr& space = system.space();
  Rng rng(cell_seed(options.seed, 0));
  const AtomSet nbhd = closed_neighborhood(*space, a, eps);
  std::vector<Probe> probes =
      set_probes(space, nbhd, options.random_probes ? options.probes_per_cell : 0, rng, cell_tag(0));
  for (const auto& p : options.explicit_probes) {
    if (dist_to_lift(p.measure, a) <= eps) probes.push_back(p);
  }
  bool nontrivial = false;
  for (const auto& p : probes) {
    auto d = orbit_distances(system, p.measure, r.horizon, r, set_distance);
    if (d.front() > 0) nontrivial = true;
    if (!r.witness && d.back() > 0) {
      r.witness = StabilityWitness{p.id, p.measure, r.horizon, d.back(), 0.0};
    }
    r.traces.push_back({p.id, 0, std::move(d)});
  }
  if (r.witness) {
    r.verdict = StabilityVerdict::kUnstableWitness;
  } else {
    r.verdict = nontrivial ? StabilityVerdict::kStableAtResolution : StabilityVerdict::kInconclusive;
  }
  return r;
}

StabilityReport probe_attractor(const MapSystem& system, const AtomSet& a, double eps, std::size_t n_max) {
  require_invariant(system, a);
  StabilityReport r;
  r.notion = Notion::kAttractor;
  r.horizon = n_max;
  r.eps_grid = {eps};
  r.target_set = a;
  const SpacePtr& space = system.space();
  const AtomSet u = closed_neighborhood(*space, a, eps);

  for (std::size_t n = 1; n <= n_max; ++n) {
    if (is_subset(system.image(u, n), u)) {
      r.trapping_step = n;
      break;
    }
  }

  // Images of a finite set are eventually periodic; stop at the first repeat.
  std::vector<AtomSet> seen;
  AtomSet cur = u;
  AtomSet meet = u;
  std::size_t steps = 0;
  for (;;) {
    cur = system.image(cur);
    if (std::find(seen.begin(), seen.end(), cur) != seen.end()) break;
    seen.push_back(cur);
    ++steps;
    AtomSet next;
    std::set_intersection(meet.begin(), meet.end(), cur.begin(), cur.end(), std::back_inserter(next));
    meet = std::move(next);
  }
  r.attractor_intersection = meet;

  for (const AtomIndex x : u) {
    const DiscreteMeasure px = DiscreteMeasure::point_mass(space, x);
    r.traces.push_back({"point:" + space->id(x), 0, orbit_distances(system, px, n_max, r, set_distance)});
  }

  if (r.trapping_step && meet == a) {
    r.verdict = StabilityVerdict::kStableAtResolution;
    return r;
  }
  if (!r.trapping_step) {
    for (const AtomIndex x : u) {
      const AtomIndex y = system.iterate(x, n_max);
      if (!std::binary_search(u.begin(), u.end(), y)) {
        r.witness = StabilityWitness{"point:" + space->id(x), DiscreteMeasure::point_mass(space, x), n_max,
                                     dist_to_lift(DiscreteMeasure::point_mass(space, y), a), eps};
        break;
      }
    }
  } else {
    const AtomSet extra = set_difference(meet, a);
    if (!extra.empty()) {
      for (const AtomIndex x : u) {
        if (system.iterate(x, steps) == extra.front()) {
          r.witness = StabilityWitness{"point:" + space->id(x), DiscreteMeasure::point_mass(space, x), steps,
                                       dist_to_lift(DiscreteMeasure::point_mass(space, extra.front()), a), eps};
          break;
        }
      }
    }
  }
  // A strictly larger than the intersection is not an attractor either, but
  // no measure starting near A stays away from A's lift, so no witness exists.
  r.verdict = r.witness ? StabilityVerdict::kUnstableWitness : StabilityVerdict::kInconclusive;
  return r;
}

StabilityReport probe_exponential(const MapSystem& system, const AtomSet& a, const std::vector<double>& delta_grid,
                                  std::size_t horizon) {
  require_invariant(system, a);
  StabilityReport r;
  r.notion = Notion::kExponential;
  r.horizon = horizon;
  r.delta_grid = delta_grid;
  r.target_set = a;
  const SpacePtr& space = system.space();
  std::optional<std::size_t> failed;
  bool informative = false;
  for (std::size_t c = 0; c < delta_grid.size(); ++c) {
    const AtomSet u = closed_neighborhood(*space, a, delta_grid[c]);
    ExponentialFit fit{delta_grid[c], {}, true, false, false, std::nullopt, 1.0, 1.0};
    AtomSet cur = u;
    for (std::size_t n = 0;; ++n) {
      const LiftHausdorff h = lift_hausdorff(space, a, cur);
      fit.hausdorff.push_back(h.direct);
      if (h.lifted != h.direct) fit.lifted_identity = false;
      if (n == horizon) break;
      cur = system.image(cur);
    }
    const auto& h = fit.hausdorff;
    fit.skipped = h.front() == 0;
    if (!fit.skipped) {
      informative = true;
      std::vector<double> xs, ys;
      for (std::size_t n = 0; n < h.size(); ++n) {
        if (h[n] > 0) {
          xs.push_back(static_cast<double>(n));
          ys.push_back(std::log(h[n]));
        }
      }
      if (xs.size() == 1) {
        fit.pass = true;
      } else {
        const double k = static_cast<double>(xs.size());
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
          mx += xs[i];
          my += ys[i];
        }
        mx /= k;
        my /= k;
        double sxx = 0, sxy = 0, syy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
          sxx += (xs[i] - mx) * (xs[i] - mx);
          sxy += (xs[i] - mx) * (ys[i] - my);
          syy += (ys[i] - my) * (ys[i] - my);
        }
        const double slope = sxy / sxx;
        const double lambda = -slope;
        double ss_res = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
          const double e = ys[i] - (my + slope * (xs[i] - mx));
          ss_res += e * e;
        }
        fit.lambda = lambda;
        fit.r2 = syy == 0 ? 1.0 : 1.0 - ss_res / syy;
        fit.c = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
          fit.c = std::max(fit.c, h[static_cast<std::size_t>(xs[i])] * std::exp(lambda * xs[i]) / h.front());
        }
        // A finite collapse onto A admits every rate.
        fit.pass = h.back() == 0 || (lambda > 0 && fit.r2 >= 0.99);
      }
      if (!fit.pass && !failed) failed = c;
    }
    r.traces.push_back({"cell:" + std::to_string(c), c, h});
    r.fits.push_back(std::move(fit));
  }
  if (!informative) {
    r.verdict = StabilityVerdict::kInconclusive;
  } else if (!failed) {
    r.verdict = StabilityVerdict::kStableAtResolution;
  } else {
    const AtomSet u = closed_neighborhood(*space, a, delta_grid[*failed]);
    AtomIndex best = u.front();
    double far = -1;
    for (const AtomIndex x : u) {
      const double d = dist_to_lift(DiscreteMeasure::point_mass(space, system.iterate(x, horizon)), a);
      if (d > far) {
        far = d;
        best = x;
      }
    }
    if (far > 0) {
      r.witness = StabilityWitness{"point:" + space->id(best), DiscreteMeasure::point_mass(space, best), horizon,
                                   far, 0.0};
    }
    r.verdict = r.witness ? StabilityVerdict::kUnstableWitness : StabilityVerdict::kInconclusive;
  }
  return r;
}

double replay_witness(const MapSystem& system, const StabilityReport& report) {
  if (!report.witness) throw Error(ErrorCode::kMalformedInput, "report carries no witness");
  const DiscreteMeasure moved = system.push(report.witness->measure, report.witness->n);
  return report.notion == Notion::kMeasureLyapunov ? measure_distance(moved, report)
                                                   : set_distance(moved, report);
}

}  // namespace dynot
