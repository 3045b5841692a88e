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

#include "gmssc/subgradient.hpp"

using namespace gmssc;

namespace {

Matrix blend(const DsMatrix& a, const DsMatrix& b, double lam) {
  Matrix out(a.size(), 0.0);
  for (int e = 1; e <= a.size(); ++e)
    for (int j = 1; j <= a.size(); ++j)
      out(e, j) = (1.0 - lam) * a(e, j) + lam * b(e, j);
  return out;
}

}  // namespace

TEST_CASE("cover subgradient on concentrated and uniform matrices") {
  // All request mass at position 1: the cost sits at its minimum and the
  // zero matrix is a valid subgradient.
  const DsMatrix front = perm_to_matrix(Permutation({2, 1, 3}));
  const Matrix g0 = cover_subgradient_k1(front, Request({2}, 1));
  for (double v : g0.values()) CHECK(v == 0.0);

  const Matrix gu = cover_subgradient_k1(DsMatrix::uniform(4), Request({2}, 1));
  for (int j = 1; j <= 3; ++j) CHECK(gu(2, j) == -double(4 - j));
  CHECK(gu(2, 4) == 0.0);
  for (int e : {1, 3, 4})
    for (int j = 1; j <= 4; ++j) CHECK(gu(e, j) == 0.0);

  CHECK_THROWS_AS(cover_subgradient_k1(DsMatrix::uniform(3), Request({1, 2}, 2)),
                  InvalidInput);
}

TEST_CASE("cover subgradient entries are small nonpositive integers") {
  Rng rng(808);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = int(rng.uniform_int(2, 8));
    const DsMatrix a = random_doubly_stochastic(n, rng);
    const Request r = random_request(n, int(rng.uniform_int(1, n)), rng, 1);
    const Matrix g = cover_subgradient_k1(a, r);
    std::vector<bool> in_request(n + 1, false);
    for (int e : r.items) in_request[e] = true;
    for (int e = 1; e <= n; ++e)
      for (int j = 1; j <= n; ++j) {
        const double v = g(e, j);
        CHECK(v == std::floor(v));
        CHECK(v <= 0.0);
        CHECK(v >= -double(n - 1));
        if (!in_request[e]) CHECK(v == 0.0);
      }
  }
}

TEST_CASE("cover subgradient satisfies the defining inequality") {
  Rng rng(909);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = int(rng.uniform_int(2, 6));
    const DsMatrix a = random_doubly_stochastic(n, rng);
    const DsMatrix b = random_doubly_stochastic(n, rng);
    const Request r = random_request(n, int(rng.uniform_int(1, n)), rng, 1);
    const Matrix g = cover_subgradient_k1(a, r);
    double inner = 0.0;
    for (int e = 1; e <= n; ++e)
      for (int j = 1; j <= n; ++j) inner += g(e, j) * (b(e, j) - a(e, j));
    CHECK(cover_cost_k1(b, r) >= cover_cost_k1(a, r) + inner - 1e-9);
  }
}

TEST_CASE("cover subgradient matches central finite differences") {
  Rng rng(1010);
  const double h = 1e-5;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = int(rng.uniform_int(2, 6));
    // Central differences straddle the evaluation point, so blend in a dash
    // of the uniform matrix: vertex combinations contain exact zeros that
    // would park prefix masses exactly on a kink of the piecewise-linear
    // cost, where a two-sided quotient undershoots every subgradient.
    const double dash = (0.5 + rng.uniform01()) * 1e-3;
    Matrix interior = random_doubly_stochastic(n, rng).matrix();
    for (double& v : interior.values())
      v = (1.0 - dash) * v + dash / n;
    const DsMatrix a(interior, 1e-9);
    const DsMatrix b = random_doubly_stochastic(n, rng);
    const Request r = random_request(n, int(rng.uniform_int(1, n)), rng, 1);
    const Matrix g = cover_subgradient_k1(a, r);
    double inner = 0.0;
    for (int e = 1; e <= n; ++e)
      for (int j = 1; j <= n; ++j) inner += g(e, j) * (b(e, j) - a(e, j));
    // The closed form evaluates on any matrix, so stepping slightly outside
    // the feasible set is fine.
    const auto eval = [&](double lam) {
      double prefix = 0.0, total = 0.0;
      const Matrix m = blend(a, b, lam);
      for (int i = 1; i <= n; ++i) {
        total += std::max(0.0, 1.0 - prefix);
        for (int e : r.items) prefix += m(e, i);
      }
      return total;
    };
    const double derivative = (eval(h) - eval(-h)) / (2.0 * h);
    CHECK(derivative >= inner - 1e-7);
  }
}

TEST_CASE("fac subgradient: strong duality and dual bounds") {
  Rng rng(1111);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = int(rng.uniform_int(2, 4));
    const DsMatrix a = random_doubly_stochastic(n, rng);
    const int size = int(rng.uniform_int(1, 2));
    const Request r = random_request(n, size, rng, int(rng.uniform_int(1, size)));
    const double eps = 0.1;
    const FacSubgradient dual = fac_subgradient(a, r, eps);
    const FacResult primal = fractional_access_cost(a, r, eps);
    CHECK(dual.dual_value == Catch::Approx(primal.value).margin(1e-7));

    const double entry_bound = std::pow(double(n), 4) / eps;
    double norm_sq = 0.0;
    for (double v : dual.g.values()) {
      CHECK(std::abs(v) <= entry_bound + 1e-9);
      norm_sq += v * v;
    }
    CHECK(std::sqrt(norm_sq) <= std::pow(double(n), 5) / eps + 1e-9);
    // Reconstruct the dual objective from its parts.
    double recon = dual.lambda;
    for (int e : r.items)
      for (int j = 1; j <= n; ++j) recon += a(e, j) * dual.g(e, j);
    CHECK(recon == Catch::Approx(dual.dual_value).margin(1e-9));
  }
}

TEST_CASE("fac subgradient satisfies the defining inequality") {
  Rng rng(1212);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = int(rng.uniform_int(2, 4));
    const DsMatrix a = random_doubly_stochastic(n, rng);
    const DsMatrix b = random_doubly_stochastic(n, rng);
    const int size = int(rng.uniform_int(1, 2));
    const Request r = random_request(n, size, rng, int(rng.uniform_int(1, size)));
    const double eps = 0.1;
    const Matrix g = fac_subgradient(a, r, eps).g;
    double inner = 0.0;
    for (int e = 1; e <= n; ++e)
      for (int j = 1; j <= n; ++j) inner += g(e, j) * (b(e, j) - a(e, j));
    const double at_a = fractional_access_cost(a, r, eps).value;
    const double at_b = fractional_access_cost(b, r, eps).value;
    CHECK(at_b >= at_a + inner - 1e-7);
  }
}

TEST_CASE("verify_subgradient flags bad candidates and accepts good ones") {
  Rng rng(1313);
  const DsMatrix a = DsMatrix::uniform(4);
  const Request r({2}, 1);
  const auto cost = [&](const DsMatrix& m) { return cover_cost_k1(m, r); };

  const Matrix good = cover_subgradient_k1(a, r);
  CHECK(verify_subgradient(cost, a, good, 200, 1e-9, rng).violations == 0);

  Matrix negated = good;
  for (double& v : negated.values()) v = -v;
  CHECK(verify_subgradient(cost, a, negated, 200, 1e-9, rng).violations > 0);

  // Zero candidate at a minimizer (request item in front) passes.
  const DsMatrix minimizer = perm_to_matrix(Permutation({2, 1, 3, 4}));
  const Matrix zero(4, 0.0);
  const auto report = verify_subgradient(cost, minimizer, zero, 200, 1e-9, rng);
  CHECK(report.violations == 0);
  CHECK(report.worst_violation <= 1e-12);
}
