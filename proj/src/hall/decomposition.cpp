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


#include "dynot/decomposition.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "dynot/detail/flow.hpp"
#include "dynot/error.hpp"

namespace dynot {

namespace {

std::size_t popcount(IndexMask m) { return static_cast<std::size_t>(std::popcount(m)); }

void validate(const DecompositionInstance& inst, std::size_t cap) {
  const std::size_t m = inst.sets.size();
  if (m == 0) throw Error(ErrorCode::kMalformedInput, "an instance needs at least one set");
  if (inst.targets.size() != m) {
    throw Error(ErrorCode::kMalformedInput, "sets and targets differ in length");
  }
  if (m > cap) {
    throw Error(ErrorCode::kTooManySets,
                std::to_string(m) + " sets exceed the limit of " + std::to_string(cap));
  }
  for (const auto& x : inst.targets) {
    if (x < 0) throw Error(ErrorCode::kMalformedInput, "negative target " + to_string(x));
  }
  for (const auto& b : inst.sets) {
    for (const AtomIndex a : b) {
      if (a >= inst.xi.space()->size()) {
        throw Error(ErrorCode::kUnknownAtom, "set member " + std::to_string(a) + " outside the space");
      }
    }
  }
}

IndexMask membership(const std::vector<AtomSet>& sets, AtomIndex atom) {
  IndexMask mask = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (contains(sets[i], atom)) mask |= IndexMask{1} << i;
  }
  return mask;
}

/// xi mass per membership mask; only occupied cells are stored.
std::map<IndexMask, Rational> cell_masses(const DecompositionInstance& inst) {
  std::map<IndexMask, Rational> cells;
  for (const auto& [atom, w] : inst.xi.weights()) cells[membership(inst.sets, atom)] += w;
  return cells;
}

Rational union_mass(const std::map<IndexMask, Rational>& cells, IndexMask phi) {
  Rational m(0);
  for (const auto& [mask, w] : cells) {
    if (mask & phi) m += w;
  }
  return m;
}

Rational target_sum(const std::vector<Rational>& targets, IndexMask phi) {
  Rational s(0);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (phi >> i & 1) s += targets[i];
  }
  return s;
}

/// Nonempty masks over m indices with popcount <= max_k, ordered by
/// cardinality and then lexicographically on the sorted index lists.
std::vector<IndexMask> ordered_subsets(std::size_t m, std::size_t max_k) {
  std::vector<IndexMask> out;
  for (IndexMask mask = 1; mask < (IndexMask{1} << m); ++mask) {
    if (popcount(mask) <= max_k) out.push_back(mask);
  }
  auto indices = [](IndexMask mask) {
    std::vector<int> v;
    for (int i = 0; mask; ++i, mask >>= 1) {
      if (mask & 1) v.push_back(i);
    }
    return v;
  };
  std::sort(out.begin(), out.end(), [&](IndexMask a, IndexMask b) {
    if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
    return indices(a) < indices(b);
  });
  return out;
}

std::optional<Rational> eps0_unchecked(const std::map<IndexMask, Rational>& cells,
                                       const std::vector<Rational>& targets, IndexMask psi,
                                       std::size_t p) {
  const std::size_t m = targets.size();
  const IndexMask full = (IndexMask{1} << m) - 1;
  std::optional<Rational> best;
  for (IndexMask phi = 1; phi < full; ++phi) {
    if (!(phi & psi) || (phi >> p & 1)) continue;
    Rational s = union_mass(cells, phi) - target_sum(targets, phi);
    if (!best || s < *best) best = std::move(s);
  }
  return best;
}

DecompositionInstance without(const DecompositionInstance& inst, std::size_t k) {
  DecompositionInstance out{inst.xi, {}, {}};
  for (std::size_t i = 0; i < inst.sets.size(); ++i) {
    if (i == k) continue;
    out.sets.push_back(inst.sets[i]);
    out.targets.push_back(inst.targets[i]);
  }
  return out;
}

class Decomposer {
 public:
  DecompositionResult run(const DecompositionInstance& inst) {
    result_.components = solve(inst, 0);
    return std::move(result_);
  }

 private:
  void note(CaseLabel label, std::size_t depth, std::size_t m) {
    result_.trace.push_back({label, depth, m});
    result_.max_depth = std::max(result_.max_depth, depth);
  }

  std::vector<DiscreteMeasure> solve(const DecompositionInstance& inst, std::size_t depth) {
    const std::size_t m = inst.sets.size();
    if (m == 1) {
      note(CaseLabel::kBase, depth, m);
      return {inst.xi};
    }

    for (std::size_t k = 0; k < m; ++k) {
      if (inst.targets[k] != 0) continue;
      note(CaseLabel::kCase2, depth, m);
      auto sub = solve(without(inst, k), depth + 1);
      sub.insert(sub.begin() + static_cast<std::ptrdiff_t>(k), DiscreteMeasure(inst.xi.space()));
      return sub;
    }

    const auto cells = cell_masses(inst);
    for (const IndexMask iota : ordered_subsets(m, m - 1)) {
      if (union_mass(cells, iota) != target_sum(inst.targets, iota)) continue;
      note(CaseLabel::kCase1, depth, m);
      return split(inst, iota, depth);
    }

    // Every proper subset is strict and every target positive. Cell 0 (outside
    // all sets) is empty by the total-mass condition, so the first occupied
    // cell is a nonempty index set.
    IndexMask psi = 0;
    for (const auto& [mask, w] : cells) {
      if (mask != 0) {
        psi = mask;
        break;
      }
    }
    const std::size_t p = static_cast<std::size_t>(std::countr_zero(psi));
    const Rational cell = cells.at(psi);
    const std::optional<Rational> e0 = eps0_unchecked(cells, inst.targets, psi, p);
    Rational eps = std::min(inst.targets[p], cell);
    if (e0 && *e0 < eps) eps = *e0;
    CaseLabel label = CaseLabel::kCase3_3;
    if (e0 && eps == *e0) {
      label = CaseLabel::kCase3_1;
    } else if (eps == inst.targets[p]) {
      label = CaseLabel::kCase3_2;
    }
    note(label, depth, m);

    AtomSet cell_atoms;
    for (const auto& [atom, w] : inst.xi.weights()) {
      if (membership(inst.sets, atom) == psi) cell_atoms.push_back(atom);
    }
    const DiscreteMeasure slice = inst.xi.restricted(cell_atoms).scaled(eps / cell);
    DecompositionInstance next{inst.xi - slice, inst.sets, inst.targets};
    next.targets[p] -= eps;
    auto sub = solve(next, depth + 1);
    sub[p] += slice;
    return sub;
  }

  std::vector<DiscreteMeasure> split(const DecompositionInstance& inst, IndexMask iota, std::size_t depth) {
    const std::size_t m = inst.sets.size();
    AtomSet u;
    for (std::size_t i = 0; i < m; ++i) {
      if (iota >> i & 1) u = set_union(u, inst.sets[i]);
    }
    DecompositionInstance inner{inst.xi.restricted(u), {}, {}};
    AtomSet outside;
    for (const auto& [atom, w] : inst.xi.weights()) {
      if (!contains(u, atom)) outside.push_back(atom);
    }
    DecompositionInstance outer{inst.xi.restricted(outside), {}, {}};
    std::vector<std::size_t> inner_idx, outer_idx;
    for (std::size_t i = 0; i < m; ++i) {
      if (iota >> i & 1) {
        inner.sets.push_back(inst.sets[i]);
        inner.targets.push_back(inst.targets[i]);
        inner_idx.push_back(i);
      } else {
        outer.sets.push_back(set_difference(inst.sets[i], u));
        outer.targets.push_back(inst.targets[i]);
        outer_idx.push_back(i);
      }
    }
    auto a = solve(inner, depth + 1);
    auto b = solve(outer, depth + 1);
    std::vector<DiscreteMeasure> out(m, DiscreteMeasure(inst.xi.space()));
    for (std::size_t k = 0; k < inner_idx.size(); ++k) out[inner_idx[k]] = std::move(a[k]);
    for (std::size_t k = 0; k < outer_idx.size(); ++k) out[outer_idx[k]] = std::move(b[k]);
    return out;
  }

  DecompositionResult result_;
};

}  // namespace

std::string mask_to_string(IndexMask mask) {
  std::string s = "{";
  bool first = true;
  for (std::size_t i = 0; mask >> i; ++i) {
    if (!(mask >> i & 1)) continue;
    if (!first) s += ',';
    s += std::to_string(i + 1);
    first = false;
  }
  return s + "}";
}

const char* case_label_name(CaseLabel label) {
  switch (label) {
    case CaseLabel::kBase: return "Base";
    case CaseLabel::kCase1: return "Case1";
    case CaseLabel::kCase2: return "Case2";
    case CaseLabel::kCase3_1: return "Case3.1";
    case CaseLabel::kCase3_2: return "Case3.2";
    case CaseLabel::kCase3_3: return "Case3.3";
  }
  return "?";
}

FeasibilityVerdict check_feasibility(const DecompositionInstance& instance) {
  validate(instance, kMaxFeasibilitySets);
  const std::size_t m = instance.sets.size();
  const auto cells = cell_masses(instance);
  for (const IndexMask phi : ordered_subsets(m, m)) {
    Rational lhs = union_mass(cells, phi);
    Rational rhs = target_sum(instance.targets, phi);
    if (lhs < rhs) return {false, "com1", phi, std::move(lhs), std::move(rhs)};
  }
  const IndexMask full = (IndexMask{1} << m) - 1;
  const Rational total = target_sum(instance.targets, full);
  if (instance.xi.total_mass() != total) return {false, "com2", full, instance.xi.total_mass(), total};
  return {};
}

Arrangement arrangement(const DecompositionInstance& instance) {
  validate(instance, kMaxFeasibilitySets);
  Arrangement out;
  out.per_k.assign(instance.sets.size() + 1, 0);
  for (const auto& [mask, w] : cell_masses(instance)) {
    if (mask == 0) continue;
    ++out.rho;
    ++out.per_k[popcount(mask)];
    out.cells.push_back(mask);
  }
  return out;
}

Rational slack(const DecompositionInstance& instance, IndexMask phi) {
  return union_mass(cell_masses(instance), phi) - target_sum(instance.targets, phi);
}

std::optional<Rational> epsilon_zero(const DecompositionInstance& instance, IndexMask psi, std::size_t p) {
  validate(instance, kMaxFeasibilitySets);
  const std::size_t m = instance.sets.size();
  auto violated = [](const std::string& what) { throw Error(ErrorCode::kCasePreconditionViolated, what); };
  if (p >= m || !(psi >> p & 1)) violated("p is not a member of psi");
  if (psi >> m) violated("psi names a set beyond m");
  const auto cells = cell_masses(instance);
  const auto it = cells.find(psi);
  if (it == cells.end()) violated("cell " + mask_to_string(psi) + " carries no mass");
  for (std::size_t k = 0; k < m; ++k) {
    if (!(instance.targets[k] > 0)) violated("target " + std::to_string(k + 1) + " is not positive");
  }
  const IndexMask full = (IndexMask{1} << m) - 1;
  for (IndexMask phi = 1; phi < full; ++phi) {
    if (!(union_mass(cells, phi) > target_sum(instance.targets, phi))) {
      violated("subset " + mask_to_string(phi) + " is tight");
    }
  }
  return eps0_unchecked(cells, instance.targets, psi, p);
}

DecompositionResult decompose(const DecompositionInstance& instance) {
  validate(instance, kMaxDecompositionSets);
  const FeasibilityVerdict v = check_feasibility(instance);
  if (!v.feasible) {
    throw Error(ErrorCode::kInfeasibleInstance, v.condition + " fails for " + mask_to_string(v.witness) +
                                                    ": " + to_string(v.lhs) + " < " + to_string(v.rhs));
  }
  return Decomposer().run(instance);
}

VerifyVerdict verify_decomposition(const DecompositionInstance& instance,
                                   const std::vector<DiscreteMeasure>& components) {
  if (components.size() != instance.sets.size() || instance.targets.size() != instance.sets.size()) {
    return {false, "length", components.size()};
  }
  DiscreteMeasure sum(instance.xi.space());
  for (std::size_t i = 0; i < components.size(); ++i) {
    const DiscreteMeasure& nu = components[i];
    if (!same_space(nu.space(), instance.xi.space())) return {false, "com3.4", i + 1};
    if (!is_subset(nu.support(), instance.sets[i])) return {false, "com3.2", i + 1};
    if (nu.total_mass() != instance.targets[i]) return {false, "com3.3", i + 1};
    sum += nu;
  }
  if (!(sum == instance.xi)) {
    const AtomSet both = set_union(sum.support(), instance.xi.support());
    for (const AtomIndex a : both) {
      if (sum.weight(a) != instance.xi.weight(a)) return {false, "com3.4", a};
    }
  }
  return {};
}

namespace {

struct FlowRun {
  bool feasible;
  std::vector<DiscreteMeasure> components;
};

FlowRun run_flow(const DecompositionInstance& inst) {
  validate(inst, SIZE_MAX);
  const std::size_t m = inst.sets.size();
  const AtomSet atoms = inst.xi.support();
  const std::size_t source = m + atoms.size();
  const std::size_t sink = source + 1;
  detail::MaxFlow<Rational> net(sink + 1);
  Rational want(0);
  for (std::size_t i = 0; i < m; ++i) {
    net.add_edge(source, i, inst.targets[i]);
    want += inst.targets[i];
  }
  for (std::size_t k = 0; k < atoms.size(); ++k) net.add_edge(m + k, sink, inst.xi.weight(atoms[k]));
  struct Arc {
    std::size_t edge, set, atom;
  };
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      if (contains(inst.sets[i], atoms[k])) arcs.push_back({net.add_edge(i, m + k, inst.targets[i]), i, atoms[k]});
    }
  }
  const Rational got = net.run(source, sink);
  FlowRun out{got == want && want == inst.xi.total_mass(), {}};
  if (!out.feasible) return out;
  std::vector<std::vector<std::pair<AtomIndex, Rational>>> parts(m);
  for (const Arc& a : arcs) parts[a.set].emplace_back(a.atom, net.flow_on(a.edge));
  for (auto& p : parts) out.components.push_back(DiscreteMeasure::from_pairs(inst.xi.space(), p));
  return out;
}

}  // namespace

bool flow_feasible(const DecompositionInstance& instance) { return run_flow(instance).feasible; }

std::optional<std::vector<DiscreteMeasure>> flow_components(const DecompositionInstance& instance) {
  FlowRun r = run_flow(instance);
  if (!r.feasible) return std::nullopt;
  return std::move(r.components);
}

}  // namespace dynot
