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

#include <catch2/catch_amalgamated.hpp>

#include "gmssc/lp.hpp"
#include "gmssc/rng.hpp"

using namespace gmssc;

TEST_CASE("simplex solves inequality and equality forms") {
  // min -x - 2y  s.t.  x + y <= 4, x <= 2.
  LpResult r = solve_lp({-1.0, -2.0}, {{{1.0, 1.0}, Rel::kLe, 4.0},
                                       {{1.0, 0.0}, Rel::kLe, 2.0}});
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == Catch::Approx(-8.0).margin(1e-9));
  CHECK(r.x[1] == Catch::Approx(4.0).margin(1e-9));

  // min x + 2y  s.t.  x + y = 1.
  r = solve_lp({1.0, 2.0}, {{{1.0, 1.0}, Rel::kEq, 1.0}});
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == Catch::Approx(1.0).margin(1e-9));
  CHECK(r.x[0] == Catch::Approx(1.0).margin(1e-9));

  // Mixed: min 2x + 3y  s.t.  x + y >= 2, x - y <= 1.
  r = solve_lp({2.0, 3.0}, {{{1.0, 1.0}, Rel::kGe, 2.0},
                            {{1.0, -1.0}, Rel::kLe, 1.0}});
  REQUIRE(r.status == LpStatus::kOptimal);
  // Cheapest is x as large as allowed: x = 1.5, y = 0.5.
  CHECK(r.objective == Catch::Approx(4.5).margin(1e-9));
}

TEST_CASE("simplex detects infeasible and unbounded problems") {
  LpResult r = solve_lp({1.0}, {{{1.0}, Rel::kLe, -1.0}});
  CHECK(r.status == LpStatus::kInfeasible);

  r = solve_lp({-1.0}, {{{-1.0}, Rel::kLe, 1.0}});
  CHECK(r.status == LpStatus::kUnbounded);
}

TEST_CASE("simplex handles negative rhs normalization") {
  // x >= 3 written as -x <= -3; min x -> 3.
  LpResult r = solve_lp({1.0}, {{{-1.0}, Rel::kLe, -3.0}});
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == Catch::Approx(3.0).margin(1e-9));
}

TEST_CASE("simplex survives a degenerate vertex") {
  // Multiple constraints active at the optimum (0,0).
  LpResult r = solve_lp({-1.0, -1.0}, {{{1.0, 2.0}, Rel::kLe, 0.0},
                                       {{2.0, 1.0}, Rel::kLe, 0.0},
                                       {{1.0, 1.0}, Rel::kLe, 0.0}});
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("random primal/dual pairs satisfy strong duality") {
  Rng rng(555);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = int(rng.uniform_int(2, 6));
    const int n = int(rng.uniform_int(2, 6));
    std::vector<std::vector<double>> A(m, std::vector<double>(n));
    for (auto& row : A)
      for (double& v : row) v = rng.uniform01() * 2.0 - 0.5;
    // Feasible by construction: b = A x* with x* >= 0; c >= 0 keeps the
    // primal bounded.
    std::vector<double> xstar(n), b(m, 0.0), c(n);
    for (double& v : xstar) v = rng.uniform01();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) b[i] += A[i][j] * xstar[j];
    for (double& v : c) v = rng.uniform01() + 0.1;

    // Primal: min c x s.t. A x >= b, x >= 0.
    std::vector<LpRow> rows;
    for (int i = 0; i < m; ++i) rows.push_back({A[i], Rel::kGe, b[i]});
    const LpResult primal = solve_lp(c, rows);
    REQUIRE(primal.status == LpStatus::kOptimal);

    // Dual: max b y s.t. A^T y <= c, y >= 0, solved as min -b y.
    std::vector<LpRow> dual_rows;
    for (int j = 0; j < n; ++j) {
      std::vector<double> col(m);
      for (int i = 0; i < m; ++i) col[i] = A[i][j];
      dual_rows.push_back({col, Rel::kLe, c[j]});
    }
    std::vector<double> neg_b(m);
    for (int i = 0; i < m; ++i) neg_b[i] = -b[i];
    const LpResult dual = solve_lp(neg_b, dual_rows);
    REQUIRE(dual.status == LpStatus::kOptimal);

    CHECK(primal.objective == Catch::Approx(-dual.objective).margin(1e-6));
  }
}
