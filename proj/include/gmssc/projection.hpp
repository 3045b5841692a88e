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
#include <vector>

#include "gmssc/core.hpp"

namespace gmssc {

struct ProjectionConfig {
  double tol = 1e-9;      // feasibility and fixed-point tolerance
  int max_iters = 100000;
};

/// Euclidean projection of v onto {x >= 0, sum x = target_sum} by
/// sort-and-threshold: with u the entries in decreasing order, the largest
/// rho with u_rho > (sum_{i<=rho} u_i - target)/rho determines the shift.
inline std::vector<double> simplex_project(const std::vector<double>& v,
                                           double target_sum) {
  if (target_sum <= 0.0) throw InvalidInput("target sum must be positive");
  for (double x : v)
    if (!std::isfinite(x)) throw InvalidInput("non-finite entry");
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double running = 0.0;
  double threshold = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    running += u[k];
    const double candidate = (running - target_sum) / double(k + 1);
    if (u[k] - candidate > 0.0) threshold = candidate;
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = std::max(v[i] - threshold, 0.0);
  return out;
}

struct ProjectionResult {
  DsMatrix matrix;
  bool converged = false;
  int iterations = 0;
};

/// Euclidean (Frobenius) projection onto the doubly stochastic polytope via
/// Dykstra's alternating projections between the row-simplex set and the
/// column-simplex set. Plain alternation would land somewhere in the
/// intersection; the Dykstra increments steer it to the nearest point,
/// which is what the gradient-descent analysis needs.
inline ProjectionResult project_birkhoff(const Matrix& m,
                                         const ProjectionConfig& cfg = {}) {
  if (cfg.tol <= 0.0) throw InvalidInput("projection tolerance must be positive");
  if (cfg.max_iters < 1) throw InvalidInput("projection needs max_iters >= 1");
  const int n = m.size();
  for (double x : m.values())
    if (!std::isfinite(x)) throw InvalidInput("non-finite matrix entry");

  std::vector<double> x(m.values());
  std::vector<double> p(std::size_t(n) * n, 0.0);  // row-step increment
  std::vector<double> q(std::size_t(n) * n, 0.0);  // column-step increment
  std::vector<double> prev(x.size());
  std::vector<double> scratch(n);

  bool converged = false;
  int iter = 0;
  for (; iter < cfg.max_iters; ++iter) {
    prev = x;
    // Rows of (x + p) onto the simplex.
    for (int e = 0; e < n; ++e) {
      for (int j = 0; j < n; ++j) scratch[j] = x[e * n + j] + p[e * n + j];
      const std::vector<double> projected = simplex_project(scratch, 1.0);
      for (int j = 0; j < n; ++j) {
        p[e * n + j] = scratch[j] - projected[j];
        x[e * n + j] = projected[j];
      }
    }
    // Columns of (x + q) onto the simplex.
    for (int j = 0; j < n; ++j) {
      for (int e = 0; e < n; ++e) scratch[e] = x[e * n + j] + q[e * n + j];
      const std::vector<double> projected = simplex_project(scratch, 1.0);
      for (int e = 0; e < n; ++e) {
        q[e * n + j] = scratch[e] - projected[e];
        x[e * n + j] = projected[e];
      }
    }
    double delta_sq = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - prev[i];
      delta_sq += d * d;
    }
    // Columns are exactly feasible after the second half-step; rows carry
    // the residual, so track it directly.
    double row_violation = 0.0;
    for (int e = 0; e < n; ++e) {
      double sum = 0.0;
      for (int j = 0; j < n; ++j) sum += x[e * n + j];
      row_violation = std::max(row_violation, std::abs(sum - 1.0));
    }
    if (std::sqrt(delta_sq) < cfg.tol && row_violation < cfg.tol) {
      converged = true;
      ++iter;
      break;
    }
  }

  double tolerance = std::max(cfg.tol, 1e-9);
  if (!converged) {  // return the iterate, widening the declared slack
    for (int e = 0; e < n; ++e) {
      double sum = 0.0;
      for (int j = 0; j < n; ++j) sum += x[e * n + j];
      tolerance = std::max(tolerance, 1.01 * std::abs(sum - 1.0) + 1e-15);
    }
  }
  Matrix out(n, 0.0);
  out.values() = std::move(x);
  return ProjectionResult{DsMatrix(std::move(out), tolerance), converged, iter};
}

}  // namespace gmssc
