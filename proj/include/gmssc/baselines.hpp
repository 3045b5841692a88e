// Copyright 2026 The gmssc Authors
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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "gmssc/core.hpp"
#include "gmssc/sampling.hpp"

namespace gmssc {

// Reference competitors for the experiment harness: the classical greedy
// for offline demand-1 instances, exact enumeration at tiny n, the uniform
// random player, and multiplicative weights over all permutations (the
// no-regret gold standard, exponential in n).

/// Greedy for demand-1 instances: repeatedly place the item contained in
/// the most not-yet-covered requests (ties to the smallest id); remaining
/// items follow in ascending id. Classical 4-approximation.
inline Permutation flt_greedy(const Instance& inst) {
  for (std::size_t i = 0; i < inst.requests.size(); ++i)
    if (inst.requests[i].demand != 1)
      throw InvalidInput("greedy baseline supports demand 1 only; request " +
                         std::to_string(i + 1) + " has demand " +
                         std::to_string(inst.requests[i].demand));
  const int n = inst.n;
  std::vector<bool> covered(inst.requests.size(), false);
  std::vector<bool> placed(n + 1, false);
  std::vector<int> order;
  order.reserve(n);
  std::size_t remaining = inst.requests.size();
  while (remaining > 0) {
    std::vector<int> gain(n + 1, 0);
    for (std::size_t t = 0; t < inst.requests.size(); ++t) {
      if (covered[t]) continue;
      for (int e : inst.requests[t].items) ++gain[e];
    }
    int best = 0;
    for (int e = 1; e <= n; ++e)
      if (!placed[e] && (best == 0 || gain[e] > gain[best])) best = e;
    if (gain[best] == 0) break;  // leftover requests reference placed items only
    placed[best] = true;
    order.push_back(best);
    for (std::size_t t = 0; t < inst.requests.size(); ++t) {
      if (covered[t]) continue;
      if (std::binary_search(inst.requests[t].items.begin(),
                             inst.requests[t].items.end(), best)) {
        covered[t] = true;
        --remaining;
      }
    }
  }
  for (int e = 1; e <= n; ++e)
    if (!placed[e]) order.push_back(e);
  return Permutation(std::move(order));
}

inline double total_access_cost(const Permutation& pi, const Instance& inst) {
  double total = 0.0;
  for (const Request& r : inst.requests) total += access_cost(pi, r);
  return total;
}

struct BruteForceResult {
  Permutation pi;
  double total_cost = 0.0;
};

/// Exact offline optimum by enumerating all n! permutations in
/// lexicographic order; ties keep the lexicographically smallest.
inline BruteForceResult brute_force_opt(const Instance& inst) {
  if (inst.n > 8)
    throw DeskScaleError("exhaustive optimum capped at n <= 8, got n = " +
                         std::to_string(inst.n));
  std::vector<int> order(inst.n);
  std::iota(order.begin(), order.end(), 1);
  BruteForceResult best{Permutation(order),
                        total_access_cost(Permutation(order), inst)};
  while (std::next_permutation(order.begin(), order.end())) {
    const Permutation candidate(order);
    const double cost = total_access_cost(candidate, inst);
    if (cost < best.total_cost) best = {candidate, cost};
  }
  return best;
}

struct RandomBaselineResult {
  std::vector<Permutation> per_round;
  std::vector<double> costs;
  double total_cost = 0.0;
};

/// Fresh uniform permutation each round.
inline RandomBaselineResult random_perm_baseline(const Instance& inst,
                                                 std::uint64_t seed) {
  Rng rng = Rng::derive(seed, "random_perm_baseline");
  RandomBaselineResult out;
  out.per_round.reserve(inst.requests.size());
  for (const Request& r : inst.requests) {
    out.per_round.push_back(random_permutation(inst.n, rng));
    out.costs.push_back(access_cost(out.per_round.back(), r));
    out.total_cost += out.costs.back();
  }
  return out;
}

struct MwuResult {
  std::vector<double> expected_costs;       // per round, under the pre-round mix
  std::vector<double> final_distribution;   // over perms in lexicographic order
  std::vector<Permutation> permutations;    // the expert order used above
  double total_expected_cost = 0.0;
};

/// Exponential-weights mix over all n! permutations, losses scaled to
/// [0, 1] by 1/n. eta <= 0 selects sqrt(ln(n!) / T).
inline MwuResult mwu_permutations(const Instance& inst, double eta = 0.0) {
  if (inst.n > 6)
    throw DeskScaleError("weights over all permutations capped at n <= 6, "
                         "got n = " + std::to_string(inst.n));
  std::vector<Permutation> perms;
  std::vector<int> order(inst.n);
  std::iota(order.begin(), order.end(), 1);
  do {
    perms.emplace_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  const std::size_t count = perms.size();
  if (eta <= 0.0) {
    const double horizon = std::max<std::size_t>(1, inst.requests.size());
    eta = std::sqrt(std::log(double(count)) / horizon);
  }

  std::vector<double> log_weight(count, 0.0);
  MwuResult out;
  out.permutations = perms;
  for (const Request& r : inst.requests) {
    const double shift = *std::max_element(log_weight.begin(), log_weight.end());
    double mass = 0.0, expected = 0.0;
    std::vector<double> prob(count);
    for (std::size_t p = 0; p < count; ++p) {
      prob[p] = std::exp(log_weight[p] - shift);
      mass += prob[p];
    }
    for (std::size_t p = 0; p < count; ++p) {
      prob[p] /= mass;
      expected += prob[p] * access_cost(perms[p], r);
    }
    out.expected_costs.push_back(expected);
    out.total_expected_cost += expected;
    for (std::size_t p = 0; p < count; ++p)
      log_weight[p] -= eta * access_cost(perms[p], r) / double(inst.n);
  }

  const double shift = *std::max_element(log_weight.begin(), log_weight.end());
  double mass = 0.0;
  out.final_distribution.resize(count);
  for (std::size_t p = 0; p < count; ++p) {
    out.final_distribution[p] = std::exp(log_weight[p] - shift);
    mass += out.final_distribution[p];
  }
  for (double& v : out.final_distribution) v /= mass;
  return out;
}

}  // namespace gmssc
