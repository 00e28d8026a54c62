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

// Network-flow primitives shared by the transport and decomposition code.
// Capacities are either exact integers (after scaling rational masses by a
// common denominator) or exact rationals.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "dynot/rational.hpp"

namespace dynot::detail {

/// Dinic's algorithm. Terminates for integer and rational capacities.
template <typename Cap>
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t nodes) : adj_(nodes) {}

  /// Returns an edge handle usable with flow_on().
  std::size_t add_edge(std::size_t u, std::size_t v, const Cap& cap) {
    const std::size_t id = edges_.size();
    edges_.push_back({v, cap, Cap(0)});
    adj_[u].push_back(id);
    edges_.push_back({u, Cap(0), Cap(0)});
    adj_[v].push_back(id + 1);
    return id;
  }

  Cap run(std::size_t s, std::size_t t) {
    Cap total(0);
    while (build_levels(s, t)) {
      next_.assign(adj_.size(), 0);
      while (true) {
        std::optional<Cap> pushed = augment(s, t, std::nullopt);
        if (!pushed || *pushed == 0) break;
        total += *pushed;
      }
    }
    return total;
  }

  const Cap& flow_on(std::size_t edge) const { return edges_[edge].flow; }

  /// Nodes reachable from s in the residual graph after run().
  std::vector<bool> source_side(std::size_t s) const {
    std::vector<bool> seen(adj_.size(), false);
    std::deque<std::size_t> queue{s};
    seen[s] = true;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (const std::size_t id : adj_[u]) {
        const Edge& e = edges_[id];
        if (!seen[e.to] && e.cap - e.flow > 0) {
          seen[e.to] = true;
          queue.push_back(e.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Edge {
    std::size_t to;
    Cap cap;
    Cap flow;
  };

  bool build_levels(std::size_t s, std::size_t t) {
    level_.assign(adj_.size(), -1);
    std::deque<std::size_t> queue{s};
    level_[s] = 0;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (const std::size_t id : adj_[u]) {
        const Edge& e = edges_[id];
        if (level_[e.to] < 0 && e.cap - e.flow > 0) {
          level_[e.to] = level_[u] + 1;
          queue.push_back(e.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  // Depth-first blocking-flow step; `limit` empty means unbounded.
  std::optional<Cap> augment(std::size_t u, std::size_t t, const std::optional<Cap>& limit) {
    if (u == t) return limit;
    for (std::size_t& k = next_[u]; k < adj_[u].size(); ++k) {
      const std::size_t id = adj_[u][k];
      Edge& e = edges_[id];
      const Cap residual = e.cap - e.flow;
      if (level_[e.to] != level_[u] + 1 || !(residual > 0)) continue;
      const Cap cap_here = limit ? std::min<Cap>(*limit, residual) : residual;
      std::optional<Cap> got = augment(e.to, t, cap_here);
      if (got && *got > 0) {
        e.flow += *got;
        edges_[id ^ 1].flow -= *got;
        return got;
      }
    }
    return Cap(0);
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Edge> edges_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

/// Common denominator of `values` when the scaled total stays below 2^62;
/// empty otherwise.
inline std::optional<std::int64_t> integer_scale(const std::vector<const Rational*>& values) {
  mpz_class lcm(1);
  mpq_class total(0);
  for (const Rational* v : values) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v->get_den().get_mpz_t());
    total += *v;
  }
  const mpz_class limit = mpz_class(1) << 62;
  if (lcm >= limit) return std::nullopt;
  const mpq_class scaled = total * mpq_class(lcm);
  if (scaled >= mpq_class(limit)) return std::nullopt;
  return lcm.get_si();
}

/// v * scale, known to be integral.
inline std::int64_t scale_to_int(const Rational& v, std::int64_t scale) {
  const mpq_class s = v * mpq_class(mpz_class(static_cast<long>(scale)));
  return mpz_class(s.get_num()).get_si();
}

}  // namespace dynot::detail
