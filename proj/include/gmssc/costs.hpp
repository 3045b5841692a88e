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
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gmssc/core.hpp"
#include "gmssc/lp.hpp"

namespace gmssc {

// Relaxed costs of a doubly stochastic matrix against one request. Two
// relaxations are provided:
//
//  * fractional_access_cost: the value of a configuration LP over all
//    injective placements of the request's items, with an n^4/epsilon
//    penalty on the mismatch between the matrix and the placement
//    marginals. Exact, but desk-scale only (configurations are enumerated).
//
//  * cover_cost: a position-wise coverage LP whose constraints range over
//    subsets of the request. It separates per position, so the exact
//    optimum is computed directly; for demand 1 it collapses to the closed
//    form cover_cost_k1.

/// Injective placement of one request's items into positions; `slots` is
/// sorted by item.
struct Configuration {
  std::vector<std::pair<int, int>> slots;  // (item, position)

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.slots == b.slots;
  }
  friend bool operator<(const Configuration& a, const Configuration& b) {
    return a.slots < b.slots;
  }
};

/// Access cost any ranking consistent with `f` pays: the demand-th smallest
/// assigned position.
inline int config_cost(const Configuration& f, int demand) {
  if (demand < 1 || demand > static_cast<int>(f.slots.size()))
    throw InvalidInput("demand " + std::to_string(demand) +
                       " exceeds configuration size " +
                       std::to_string(f.slots.size()));
  std::vector<int> positions;
  positions.reserve(f.slots.size());
  for (const auto& [item, pos] : f.slots) positions.push_back(pos);
  std::nth_element(positions.begin(), positions.begin() + (demand - 1),
                   positions.end());
  return positions[demand - 1];
}

constexpr std::uint64_t kDefaultConfigCap = 1000000;

/// Number of injective placements of |R| items into n positions,
/// n (n-1) ... (n-|R|+1), or UINT64_MAX on overflow.
inline std::uint64_t count_configs(int request_size, int n) {
  std::uint64_t count = 1;
  for (int i = 0; i < request_size; ++i) {
    const std::uint64_t factor = std::uint64_t(n - i);
    if (count > std::uint64_t(-1) / factor) return std::uint64_t(-1);
    count *= factor;
  }
  return count;
}

/// All configurations of `r` in {1..n}, in lexicographic order of the
/// position tuple taken along r's sorted items. Refuses above `cap`.
inline std::vector<Configuration> enumerate_configs(
    const Request& r, int n, std::uint64_t cap = kDefaultConfigCap) {
  r.check_universe(n);
  const std::uint64_t count = count_configs(r.size(), n);
  if (count > cap)
    throw DeskScaleError("configuration count " + std::to_string(count) +
                         " exceeds desk-scale cap " + std::to_string(cap));
  std::vector<Configuration> out;
  out.reserve(count);
  std::vector<int> positions(r.size(), 0);
  std::vector<bool> used(n + 1, false);
  const int k = r.size();
  int depth = 0;
  int next = 1;
  while (depth >= 0) {
    if (depth == k) {
      Configuration f;
      f.slots.reserve(k);
      for (int i = 0; i < k; ++i) f.slots.emplace_back(r.items[i], positions[i]);
      out.push_back(std::move(f));
      --depth;
      next = positions[depth] + 1;
      used[positions[depth]] = false;
      continue;
    }
    while (next <= n && used[next]) ++next;
    if (next > n) {
      --depth;
      if (depth < 0) break;
      next = positions[depth] + 1;
      used[positions[depth]] = false;
      continue;
    }
    positions[depth] = next;
    used[next] = true;
    ++depth;
    next = 1;
  }
  return out;
}

/// Optimal solution of the penalized configuration LP.
struct FacResult {
  double value = 0.0;
  std::vector<std::pair<Configuration, double>> primal_weights;  // nonzero y_F
  double penalty = 0.0;       // n^4/epsilon times the total marginal mismatch
  double epsilon = 0.0;
  double max_mismatch = 0.0;  // largest |A_ej - sum_{F covering (e,j)} y_F|
};

/// Fractional access cost: minimize sum_F C_F y_F plus (n^4/eps) times the
/// total deviation between A's entries on R's rows and the placement
/// marginals of y, over the probability simplex in y. Solved exactly as a
/// dense LP with the absolute values linearized through auxiliary
/// variables.
inline FacResult fractional_access_cost(const DsMatrix& a, const Request& r,
                                        double epsilon,
                                        std::uint64_t cap = kDefaultConfigCap) {
  if (epsilon <= 0.0) throw InvalidInput("epsilon must be positive");
  const int n = a.size();
  r.check_universe(n);
  const std::vector<Configuration> configs = enumerate_configs(r, n, cap);
  const int nc = static_cast<int>(configs.size());
  const int k = r.size();
  const double kappa = std::pow(double(n), 4) / epsilon;

  // Variables: y_F (nc of them), then s_ej for e in R, j in 1..n.
  const int num_vars = nc + k * n;
  const auto s_index = [&](int ei, int j) { return nc + ei * n + (j - 1); };

  std::vector<double> cost(num_vars, 0.0);
  for (int f = 0; f < nc; ++f) cost[f] = config_cost(configs[f], r.demand);
  for (int v = nc; v < num_vars; ++v) cost[v] = kappa;

  std::vector<LpRow> rows;
  rows.reserve(1 + 2 * k * n);
  {
    LpRow sum_to_one{std::vector<double>(num_vars, 0.0), Rel::kEq, 1.0};
    for (int f = 0; f < nc; ++f) sum_to_one.coeffs[f] = 1.0;
    rows.push_back(std::move(sum_to_one));
  }
  // Which configurations place item e at position j.
  for (int ei = 0; ei < k; ++ei) {
    const int item = r.items[ei];
    for (int j = 1; j <= n; ++j) {
      std::vector<double> covering(num_vars, 0.0);
      for (int f = 0; f < nc; ++f)
        if (configs[f].slots[ei].second == j) covering[f] = 1.0;
      // s_ej >= A_ej - sum y_F  and  s_ej >= sum y_F - A_ej.
      LpRow lower{covering, Rel::kLe, a(item, j)};
      for (int f = 0; f < nc; ++f) lower.coeffs[f] = -lower.coeffs[f];
      lower.coeffs[s_index(ei, j)] = -1.0;
      lower.rhs = -a(item, j);
      rows.push_back(std::move(lower));

      LpRow upper{std::move(covering), Rel::kLe, a(item, j)};
      upper.coeffs[s_index(ei, j)] = -1.0;
      rows.push_back(std::move(upper));
    }
  }

  const LpResult lp = solve_lp(cost, rows);
  if (lp.status != LpStatus::kOptimal)
    throw std::logic_error("configuration LP must be solvable");  // simplex in y is nonempty

  FacResult out;
  out.value = lp.objective;
  out.epsilon = epsilon;
  for (int f = 0; f < nc; ++f)
    if (lp.x[f] > 1e-12) out.primal_weights.emplace_back(configs[f], lp.x[f]);
  double penalty = 0.0;
  double worst = 0.0;
  for (int ei = 0; ei < k; ++ei) {
    for (int j = 1; j <= n; ++j) {
      double marginal = 0.0;
      for (int f = 0; f < nc; ++f)
        if (configs[f].slots[ei].second == j) marginal += lp.x[f];
      const double mismatch = std::abs(a(r.items[ei], j) - marginal);
      penalty += kappa * mismatch;
      worst = std::max(worst, mismatch);
    }
  }
  out.penalty = penalty;
  out.max_mismatch = worst;
  return out;
}

/// Optimal solution of the position-wise coverage LP.
struct CoverResult {
  double value = 0.0;
  std::vector<double> z;  // z_i in [0,1] per position
};

constexpr std::uint64_t kDefaultSubsetCap = std::uint64_t(1) << 20;

/// Coverage LP cost: minimize sum_i (1 - z_i) subject to, for every
/// M subseteq R and position i,
///   (K - |M|) z_i <= sum_{j<i} sum_{e in R minus M} A_ej,   z_i in [0,1].
/// Constraints with K - |M| <= 0 are vacuous. Each z_i appears in its own
/// constraints only, so the LP separates per position and the exact optimum
/// is the positionwise maximum of z_i under all instantiated subsets.
inline CoverResult cover_cost(const DsMatrix& a, const Request& r,
                              std::uint64_t subset_cap = kDefaultSubsetCap) {
  const int n = a.size();
  r.check_universe(n);
  const int k = r.size();
  if (k >= 63 || (std::uint64_t(1) << k) > subset_cap)
    throw DeskScaleError("2^" + std::to_string(k) +
                         " request subsets exceed desk-scale cap " +
                         std::to_string(subset_cap));
  // prefix[ei] = mass of item e before the current position.
  std::vector<double> prefix(k, 0.0);
  CoverResult out;
  out.z.resize(n);
  const std::uint64_t masks = std::uint64_t(1) << k;
  for (int i = 1; i <= n; ++i) {
    double z = 1.0;
    for (std::uint64_t m = 0; m < masks; ++m) {
      const int excluded = __builtin_popcountll(m);
      if (r.demand - excluded <= 0) continue;  // vacuous constraint
      double mass = 0.0;
      for (int ei = 0; ei < k; ++ei)
        if (!(m & (std::uint64_t(1) << ei))) mass += prefix[ei];
      z = std::min(z, mass / double(r.demand - excluded));
    }
    z = std::clamp(z, 0.0, 1.0);
    out.z[i - 1] = z;
    out.value += 1.0 - z;
    for (int ei = 0; ei < k; ++ei) prefix[ei] += a(r.items[ei], i);
  }
  return out;
}

/// Demand-1 closed form of cover_cost:
///   sum_i (1 - sum_{j<i} sum_{e in R} A_ej)_+ ,  in O(n |R|).
inline double cover_cost_k1(const DsMatrix& a, const Request& r) {
  if (r.demand != 1)
    throw InvalidInput("closed form requires demand 1, got " +
                       std::to_string(r.demand));
  const int n = a.size();
  r.check_universe(n);
  double prefix = 0.0;
  double total = 0.0;
  for (int i = 1; i <= n; ++i) {
    total += std::max(0.0, 1.0 - prefix);
    for (int e : r.items) prefix += a(e, i);
  }
  return total;
}

}  // namespace gmssc
