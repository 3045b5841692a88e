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

#include "gmssc/opgd.hpp"
#include "gmssc/sampling.hpp"
#include "gmssc/subgradient.hpp"

using namespace gmssc;

namespace {

const CostOracle kCoverCost = [](const DsMatrix& a, const Request& r) {
  return cover_cost_k1(a, r);
};
const SubgradOracle kCoverSubgrad = [](const DsMatrix& a, const Request& r) {
  return cover_subgradient_k1(a, r);
};
const Rounder kIdentityRounder = [](const DsMatrix& a, Rng&) {
  return Permutation::identity(a.size());
};

}  // namespace

TEST_CASE("opgd_init starts at the uniform matrix") {
  const OpgdState s3 = opgd_init(3, 0.1);
  CHECK(s3.t == 1);
  for (int e = 1; e <= 3; ++e)
    for (int j = 1; j <= 3; ++j) CHECK(s3.a(e, j) == 1.0 / 3);
  CHECK(s3.a.tolerance() == 0.0);

  const OpgdState s1 = opgd_init(1, 0.1);
  CHECK(s1.a(1, 1) == 1.0);
  CHECK_THROWS_AS(opgd_init(0, 0.1), InvalidInput);
  CHECK_THROWS_AS(opgd_init(3, 0.0), InvalidInput);
}

TEST_CASE("step sizes follow the configured rule") {
  const StepRule fallback = StepRule::default_rule();
  // 2 * 0.1 / 2^4.5 at t = 1.
  CHECK(fallback.eta(1, 2, 0.1) == Catch::Approx(0.0088388).margin(1e-6));
  // The custom rule with D = 2 sqrt(n), G = n^5/eps matches the default.
  const int n = 3;
  const double eps = 0.25;
  const StepRule custom =
      StepRule::custom(2.0 * std::sqrt(double(n)), std::pow(double(n), 5) / eps);
  for (int t : {1, 2, 7, 90})
    CHECK(custom.eta(t, n, eps) == Catch::Approx(fallback.eta(t, n, eps)).margin(1e-15));
}

TEST_CASE("a zero subgradient leaves the iterate unchanged") {
  Rng rng(1);
  OpgdState state{1, random_doubly_stochastic(4, rng), 0.1,
                  StepRule::default_rule()};
  const OpgdState next = opgd_step(state, Matrix(4, 0.0));
  CHECK(next.t == 2);
  for (int e = 1; e <= 4; ++e)
    for (int j = 1; j <= 4; ++j)
      CHECK(next.a(e, j) == Catch::Approx(state.a(e, j)).margin(1e-9));
  CHECK_THROWS_AS(opgd_step(state, Matrix(3, 0.0)), InvalidInput);
}

TEST_CASE("iterates stay feasible across many steps") {
  Rng rng(2);
  OpgdState state = opgd_init(5, 0.1, StepRule::custom(2.0 * std::sqrt(5.0), 25.0));
  for (int t = 0; t < 50; ++t) {
    const Request r = random_request(5, int(rng.uniform_int(1, 5)), rng, 1);
    state = opgd_step(state, cover_subgradient_k1(state.a, r));
    double worst = 0.0;
    for (int e = 1; e <= 5; ++e) {
      double row = 0.0, col = 0.0;
      for (int j = 1; j <= 5; ++j) {
        row += state.a(e, j);
        col += state.a(j, e);
      }
      worst = std::max({worst, std::abs(row - 1.0), std::abs(col - 1.0)});
    }
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("run_online on an empty instance yields an empty trace") {
  const Instance inst(4, {});
  CHECK(run_online(inst, kCoverCost, kCoverSubgrad, kIdentityRounder, 0.1, 7)
            .empty());
}

TEST_CASE("desk-scale failures carry the round index") {
  // A capped oracle blows up immediately; the loop reports where.
  const CostOracle capped_cost = [](const DsMatrix& a, const Request& r) {
    return fractional_access_cost(a, r, 0.1, /*cap=*/1).value;
  };
  const Instance inst(4, {Request({1, 2}, 1)});
  CHECK_THROWS_MATCHES(
      run_online(inst, capped_cost, kCoverSubgrad, kIdentityRounder, 0.1, 7),
      DeskScaleError,
      Catch::Matchers::MessageMatches(
          Catch::Matchers::ContainsSubstring("round 1")));
}

TEST_CASE("a single repeated request concentrates its item in front") {
  std::vector<Request> requests(500, Request({1}, 1));
  const Instance inst(4, std::move(requests));
  // Gradient bound for the closed-form oracle is about n^2, far below the
  // configuration-LP constant, so use the matching custom rule.
  const StepRule rule = StepRule::custom(2.0 * std::sqrt(4.0), 16.0);
  const auto trace = run_online(inst, kCoverCost, kCoverSubgrad,
                                kIdentityRounder, 0.1, 99, rule);
  REQUIRE(trace.size() == 500);

  // Replay the steps to recover the final matrix.
  OpgdState state = opgd_init(4, 0.1, rule);
  for (int t = 0; t < 500; ++t)
    state = opgd_step(state, cover_subgradient_k1(state.a, Request({1}, 1)));
  CHECK(state.a(1, 1) >= 0.9);
  // Relaxed cost per round approaches the optimum (1.0).
  CHECK(trace.back().relaxed_cost <= 1.2);
}

TEST_CASE("the played permutation never looks at the incoming request") {
  Rng gen(55);
  std::vector<Request> requests;
  for (int t = 0; t < 60; ++t)
    requests.push_back(random_request(5, int(gen.uniform_int(1, 5)), gen, 1));
  const Instance full(5, requests);
  const Rounder sampling_rounder = [](const DsMatrix& a, Rng& rng) {
    return random_permutation(a.size(), rng);
  };
  const auto full_trace = run_online(full, kCoverCost, kCoverSubgrad,
                                     sampling_rounder, 0.1, 1234);
  for (int prefix : {10, 30, 59}) {
    const Instance cut(5, std::vector<Request>(requests.begin(),
                                               requests.begin() + prefix));
    const auto cut_trace = run_online(cut, kCoverCost, kCoverSubgrad,
                                      sampling_rounder, 0.1, 1234);
    for (int t = 0; t < prefix; ++t) {
      CHECK(cut_trace[t].rounded_cost == full_trace[t].rounded_cost);
      CHECK(cut_trace[t].relaxed_cost == full_trace[t].relaxed_cost);
    }
  }
}

TEST_CASE("time-averaged regret against the offline comparator shrinks") {
  Rng gen(77);
  std::vector<Request> requests;
  for (int t = 0; t < 600; ++t) requests.push_back(random_request(5, 2, gen, 1));
  const StepRule rule = StepRule::custom(2.0 * std::sqrt(5.0), 25.0);
  const auto trace =
      run_online(Instance(5, requests), kCoverCost, kCoverSubgrad,
                 kIdentityRounder, 0.1, 3, rule);

  const auto regret_at = [&](int horizon) {
    double played = 0.0;
    for (int t = 0; t < horizon; ++t) played += trace[t].relaxed_cost;
    played /= horizon;
    const std::vector<Request> prefix(requests.begin(),
                                      requests.begin() + horizon);
    const double comparator = offline_relaxed_optimum(
        5, prefix, kCoverCost, kCoverSubgrad, 1500, rule);
    return played - comparator;
  };
  const double at150 = regret_at(150);
  const double at300 = regret_at(300);
  const double at600 = regret_at(600);
  CHECK(at300 <= at150 + 1e-6);
  CHECK(at600 <= at300 + 1e-6);
  CHECK(at600 >= -1e-6);  // the comparator is a lower bound up to solver slack
}
