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


#include "dynot/wasserstein.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <vector>

#include "dynot/detail/flow.hpp"
#include "dynot/error.hpp"

namespace dynot {

namespace {

void check_inputs(const DiscreteMeasure& mu, const DiscreteMeasure& nu, int p) {
  if (p != 1 && p != 2) throw Error(ErrorCode::kUnsupportedP, "p must be 1 or 2, got " + std::to_string(p));
  require_same_space(mu, nu);
  require_probability(mu);
  require_probability(nu);
}

double cost_of(double d, int p) { return p == 1 ? d : d * d; }

struct Problem {
  AtomSet rows;
  AtomSet cols;
  std::vector<Rational> row_mass;
  std::vector<Rational> col_mass;
  std::optional<std::int64_t> scale;

  Problem(const DiscreteMeasure& mu, const DiscreteMeasure& nu)
      : rows(mu.support()), cols(nu.support()) {
    std::vector<const Rational*> all;
    for (const auto& [a, w] : mu.weights()) row_mass.push_back(w);
    for (const auto& [a, w] : nu.weights()) col_mass.push_back(w);
    for (const auto& w : row_mass) all.push_back(&w);
    for (const auto& w : col_mass) all.push_back(&w);
    scale = detail::integer_scale(all);
  }

  Rational unscale(std::int64_t v) const {
    Rational q(mpz_class(static_cast<long>(v)), mpz_class(static_cast<long>(*scale)));
    q.canonicalize();
    return q;
  }
};

class Enumerator {
 public:
  Enumerator(const Problem& prob, const FiniteMetricSpace& space, int p) : prob_(prob) {
    const std::size_t r = prob.rows.size();
    const std::size_t c = prob.cols.size();
    cost_.resize(r * c);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) cost_[i * c + j] = cost_of(space.dist(prob.rows[i], prob.cols[j]), p);
    }
  }

  std::vector<PlanEntry> run() {
    std::vector<std::int64_t> state;
    for (const auto& w : prob_.row_mass) state.push_back(detail::scale_to_int(w, *prob_.scale));
    for (const auto& w : prob_.col_mass) state.push_back(detail::scale_to_int(w, *prob_.scale));
    best(state);
    std::vector<PlanEntry> entries;
    const std::size_t r = prob_.rows.size();
    while (true) {
      const auto it = memo_.find(key(state));
      if (it->second.choice < 0) break;
      const std::size_t i = static_cast<std::size_t>(it->second.choice) / prob_.cols.size();
      const std::size_t j = static_cast<std::size_t>(it->second.choice) % prob_.cols.size();
      const std::int64_t q = std::min(state[i], state[r + j]);
      entries.push_back({prob_.rows[i], prob_.cols[j], prob_.unscale(q)});
      state[i] -= q;
      state[r + j] -= q;
    }
    return entries;
  }

 private:
  struct Memo {
    double value;
    long choice;
  };

  static std::string key(const std::vector<std::int64_t>& s) {
    return std::string(reinterpret_cast<const char*>(s.data()), s.size() * sizeof(std::int64_t));
  }

  // Minimum of sum q * cost over elimination sequences from `state`. Each
  // step moves min(residual row, residual column) along one alive pair,
  // which zeroes at least one line; every vertex of the polytope arises
  // this way because the support of a vertex is a forest and always has a
  // leaf line.
  double best(std::vector<std::int64_t>& state) {
    std::string k = key(state);
    if (const auto it = memo_.find(k); it != memo_.end()) return it->second.value;
    const std::size_t r = prob_.rows.size();
    const std::size_t c = prob_.cols.size();
    double value = std::numeric_limits<double>::infinity();
    long choice = -1;
    bool any = false;
    for (std::size_t i = 0; i < r; ++i) {
      if (state[i] == 0) continue;
      for (std::size_t j = 0; j < c; ++j) {
        if (state[r + j] == 0) continue;
        any = true;
        const std::int64_t q = std::min(state[i], state[r + j]);
        state[i] -= q;
        state[r + j] -= q;
        const double v = static_cast<double>(q) * cost_[i * c + j] + best(state);
        state[i] += q;
        state[r + j] += q;
        if (v < value) {
          value = v;
          choice = static_cast<long>(i * c + j);
        }
      }
    }
    if (!any) value = 0.0;
    memo_.emplace(std::move(k), Memo{value, choice});
    return value;
  }

  const Problem& prob_;
  std::vector<double> cost_;
  std::unordered_map<std::string, Memo> memo_;
};

template <typename Cap>
std::vector<PlanEntry> ssp(const Problem& prob, const FiniteMetricSpace& space, int p) {
  const std::size_t r = prob.rows.size();
  const std::size_t c = prob.cols.size();
  const std::size_t n = r + c + 2;
  const std::size_t source = r + c;
  const std::size_t sink = source + 1;
  auto cap_of = [&](const Rational& w) -> Cap {
    if constexpr (std::is_same_v<Cap, Rational>) {
      return w;
    } else {
      return detail::scale_to_int(w, *prob.scale);
    }
  };
  struct Edge {
    std::size_t to;
    Cap residual;
    double cost;
  };
  std::vector<Edge> edges;
  std::vector<std::vector<std::size_t>> adj(n);
  auto add = [&](std::size_t u, std::size_t v, const Cap& cap, double cost) {
    adj[u].push_back(edges.size());
    edges.push_back({v, cap, cost});
    adj[v].push_back(edges.size());
    edges.push_back({u, Cap(0), -cost});
    return edges.size() - 2;
  };
  Cap remaining(0);
  for (std::size_t i = 0; i < r; ++i) {
    add(source, i, cap_of(prob.row_mass[i]), 0.0);
    remaining += cap_of(prob.row_mass[i]);
  }
  for (std::size_t j = 0; j < c; ++j) add(r + j, sink, cap_of(prob.col_mass[j]), 0.0);
  std::vector<std::size_t> arc(r * c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      arc[i * c + j] = add(i, r + j, cap_of(prob.row_mass[i]), cost_of(space.dist(prob.rows[i], prob.cols[j]), p));
    }
  }
  const double inf = std::numeric_limits<double>::infinity();
  while (remaining > 0) {
    // Bellman-Ford; residual costs may be negative.
    std::vector<double> dist(n, inf);
    std::vector<std::size_t> via(n, SIZE_MAX);
    dist[source] = 0.0;
    for (std::size_t round = 0; round + 1 < n; ++round) {
      bool changed = false;
      for (std::size_t u = 0; u < n; ++u) {
        if (dist[u] == inf) continue;
        for (const std::size_t id : adj[u]) {
          const Edge& e = edges[id];
          if (!(e.residual > 0)) continue;
          const double nd = dist[u] + e.cost;
          if (nd < dist[e.to] - 1e-15 * (1.0 + std::abs(nd))) {
            dist[e.to] = nd;
            via[e.to] = id;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    if (via[sink] == SIZE_MAX) throw Error(ErrorCode::kMalformedInput, "no augmenting path");
    Cap push = remaining;
    for (std::size_t v = sink; v != source; v = edges[via[v] ^ 1].to) {
      if (edges[via[v]].residual < push) push = edges[via[v]].residual;
    }
    for (std::size_t v = sink; v != source; v = edges[via[v] ^ 1].to) {
      edges[via[v]].residual -= push;
      edges[via[v] ^ 1].residual += push;
    }
    remaining -= push;
  }
  std::vector<PlanEntry> entries;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      const Cap& f = edges[arc[i * c + j] ^ 1].residual;
      if (!(f > 0)) continue;
      Rational mass;
      if constexpr (std::is_same_v<Cap, Rational>) {
        mass = f;
      } else {
        mass = prob.unscale(f);
      }
      entries.push_back({prob.rows[i], prob.cols[j], mass});
    }
  }
  return entries;
}

}  // namespace

double plan_cost(const TransportPlan& plan, int p) {
  if (p != 1 && p != 2) throw Error(ErrorCode::kUnsupportedP, "p must be 1 or 2, got " + std::to_string(p));
  const FiniteMetricSpace& space = *plan.mu().space();
  // Neumaier summation.
  double sum = 0.0;
  double comp = 0.0;
  for (const auto& e : plan.entries()) {
    const double term = to_double(e.mass) * cost_of(space.dist(e.from, e.to), p);
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
  }
  const double total = sum + comp;
  return p == 1 ? total : std::sqrt(total);
}

TransportPlan w_p_plan_enumerate(const DiscreteMeasure& mu, const DiscreteMeasure& nu, int p) {
  check_inputs(mu, nu, p);
  const Problem prob(mu, nu);
  if (prob.rows.size() > kEnumerationLimit || prob.cols.size() > kEnumerationLimit) {
    throw Error(ErrorCode::kTooLarge, "vertex enumeration is limited to 5 atoms per side");
  }
  if (!prob.scale) throw Error(ErrorCode::kTooLarge, "weights have no 62-bit common denominator");
  Enumerator en(prob, *mu.space(), p);
  return TransportPlan::make(mu, nu, en.run());
}

TransportPlan w_p_plan_flow(const DiscreteMeasure& mu, const DiscreteMeasure& nu, int p) {
  check_inputs(mu, nu, p);
  const Problem prob(mu, nu);
  if (prob.scale) return TransportPlan::make(mu, nu, ssp<std::int64_t>(prob, *mu.space(), p));
  return TransportPlan::make(mu, nu, ssp<Rational>(prob, *mu.space(), p));
}

double w_p(const DiscreteMeasure& mu, const DiscreteMeasure& nu, int p) {
  check_inputs(mu, nu, p);
  const bool small = mu.weights().size() <= kEnumerationLimit && nu.weights().size() <= kEnumerationLimit;
  const Problem prob(mu, nu);
  if (small && prob.scale) return plan_cost(w_p_plan_enumerate(mu, nu, p), p);
  return plan_cost(w_p_plan_flow(mu, nu, p), p);
}

}  // namespace dynot
