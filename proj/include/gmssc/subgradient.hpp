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

#include <cmath>
#include <functional>
#include <vector>

#include "gmssc/costs.hpp"
#include "gmssc/sampling.hpp"

namespace gmssc {

// Subgradient oracles for the relaxed costs. A matrix g is a subgradient of
// a convex cost f at A when f(B) >= f(A) + <g, B - A> for every doubly
// stochastic B; that inequality fixes all sign conventions here.

/// Subgradient of cover_cost_k1 at `a`.
///
/// Let i* be the first position whose inclusive request-mass prefix reaches
/// 1 (clamped to n when the total stays below 1). Then
///   g_ej = -(i* - j)  for e in R and j < i*,  and 0 elsewhere.
/// On the piece containing a generic A the cost is
///   i* - sum_{j<i*} (i* - j) sum_{e in R} A_ej,
/// so g is its exact gradient there, and at kinks any tie choice of i*
/// with prefix(i*-1) <= 1 stays a valid subgradient.
inline Matrix cover_subgradient_k1(const DsMatrix& a, const Request& r) {
  if (r.demand != 1)
    throw InvalidInput("cover_subgradient_k1 requires demand 1");
  const int n = a.size();
  r.check_universe(n);
  int istar = n;
  double prefix = 0.0;
  for (int i = 1; i <= n; ++i) {
    for (int e : r.items) prefix += a(e, i);
    if (prefix >= 1.0) {
      istar = i;
      break;
    }
  }
  Matrix g(n, 0.0);
  for (int e : r.items)
    for (int j = 1; j < istar; ++j) g(e, j) = -double(istar - j);
  return g;
}

/// Dual solution backing fac_subgradient.
struct FacSubgradient {
  Matrix g;            // the lambda_ej block of the optimal dual solution
  double lambda = 0.0; // dual variable of the sum-to-one constraint
  double dual_value = 0.0;  // lambda + sum A_ej g_ej; equals the FAC value
};

/// Subgradient of fractional_access_cost at `a`, from the exact solution of
/// the dual LP over the enumerated configurations:
///   maximize  lambda + sum_{e in R, j} A_ej lambda_ej
///   s.t.      lambda + sum_{(e,j) in F} lambda_ej <= C_F   for every F,
///             |lambda_ej| <= n^4/epsilon.
/// The optimal lambda_ej, read as a matrix (zero outside R's rows), is a
/// subgradient, with |g_ej| <= n^4/eps and ||g||_2 <= n^5/eps.
inline FacSubgradient fac_subgradient(const DsMatrix& a, const Request& r,
                                      double epsilon,
                                      std::uint64_t cap = kDefaultConfigCap) {
  if (epsilon <= 0.0) throw InvalidInput("epsilon must be positive");
  const int n = a.size();
  r.check_universe(n);
  const std::vector<Configuration> configs = enumerate_configs(r, n, cap);
  const int nc = static_cast<int>(configs.size());
  const int k = r.size();
  const double bound = std::pow(double(n), 4) / epsilon;

  // Variables: lambda = lp - lm (2), then p_ej, q_ej >= 0 with
  // lambda_ej = p_ej - q_ej, each half capped at `bound`.
  const int num_vars = 2 + 2 * k * n;
  const auto p_index = [&](int ei, int j) { return 2 + 2 * (ei * n + (j - 1)); };

  std::vector<double> cost(num_vars, 0.0);  // minimize the negated objective
  cost[0] = -1.0;
  cost[1] = 1.0;
  for (int ei = 0; ei < k; ++ei)
    for (int j = 1; j <= n; ++j) {
      cost[p_index(ei, j)] = -a(r.items[ei], j);
      cost[p_index(ei, j) + 1] = a(r.items[ei], j);
    }

  std::vector<LpRow> rows;
  rows.reserve(nc + 2 * k * n);
  for (int f = 0; f < nc; ++f) {
    LpRow row{std::vector<double>(num_vars, 0.0), Rel::kLe,
              double(config_cost(configs[f], r.demand))};
    row.coeffs[0] = 1.0;
    row.coeffs[1] = -1.0;
    for (int ei = 0; ei < k; ++ei) {
      const int j = configs[f].slots[ei].second;
      row.coeffs[p_index(ei, j)] = 1.0;
      row.coeffs[p_index(ei, j) + 1] = -1.0;
    }
    rows.push_back(std::move(row));
  }
  for (int v = 2; v < num_vars; ++v) {
    LpRow cap_row{std::vector<double>(num_vars, 0.0), Rel::kLe, bound};
    cap_row.coeffs[v] = 1.0;
    rows.push_back(std::move(cap_row));
  }

  const LpResult lp = solve_lp(cost, rows);
  if (lp.status != LpStatus::kOptimal)
    throw std::logic_error("dual LP must be solvable");

  FacSubgradient out{Matrix(n, 0.0), lp.x[0] - lp.x[1], -lp.objective};
  for (int ei = 0; ei < k; ++ei)
    for (int j = 1; j <= n; ++j)
      out.g(r.items[ei], j) = lp.x[p_index(ei, j)] - lp.x[p_index(ei, j) + 1];
  return out;
}

struct VerifyReport {
  int trials = 0;
  int violations = 0;
  double worst_violation = 0.0;  // max of cost(A) + <g, B-A> - cost(B), >0 is bad
};

/// Samples random doubly stochastic matrices B and checks the subgradient
/// inequality cost(B) >= cost(A) + <g, B - A> - tol. Report only.
inline VerifyReport verify_subgradient(
    const std::function<double(const DsMatrix&)>& cost, const DsMatrix& a,
    const Matrix& g, int trials, double tol, Rng& rng) {
  VerifyReport report;
  report.trials = trials;
  const double at_a = cost(a);
  for (int trial = 0; trial < trials; ++trial) {
    const DsMatrix b = random_doubly_stochastic(a.size(), rng);
    double inner = 0.0;
    for (int e = 1; e <= a.size(); ++e)
      for (int j = 1; j <= a.size(); ++j)
        inner += g(e, j) * (b(e, j) - a(e, j));
    const double gap = at_a + inner - cost(b);
    if (gap > report.worst_violation) report.worst_violation = gap;
    if (gap > tol) ++report.violations;
  }
  return report;
}

}  // namespace gmssc
