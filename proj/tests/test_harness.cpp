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
#include <set>

#include "gmssc/harness.hpp"

using namespace gmssc;

TEST_CASE("generate_anchored shapes and degenerate cases") {
  const Instance fixed = generate_anchored(5, {1}, 0, 50, 3);
  for (const Request& r : fixed.requests) {
    CHECK(r.items == std::vector<int>{1});
    CHECK(r.demand == 1);
  }

  const Instance sized = generate_anchored(12, {1, 2, 3}, 4, 200, 9);
  for (const Request& r : sized.requests) {
    CHECK(r.items.size() == 5);
    std::set<int> distinct(r.items.begin(), r.items.end());
    CHECK(distinct.size() == 5);
    int anchors_present = 0;
    for (int a : {1, 2, 3}) anchors_present += distinct.count(a);
    CHECK(anchors_present == 1);
  }

  CHECK_THROWS_AS(generate_anchored(5, {}, 1, 10, 1), InvalidInput);
  CHECK_THROWS_AS(generate_anchored(5, {6}, 1, 10, 1), InvalidInput);
  CHECK_THROWS_AS(generate_anchored(5, {1, 2}, 4, 10, 1), InvalidInput);
}

TEST_CASE("anchored frequencies are uniform over anchors") {
  const std::vector<int> anchors{1, 2, 3, 4};
  const Instance inst = generate_anchored(20, anchors, 4, 10000, 17);
  std::map<int, int> counts;
  for (const Request& r : inst.requests)
    for (int a : anchors)
      if (std::binary_search(r.items.begin(), r.items.end(), a)) ++counts[a];
  const double expected = 10000.0 / anchors.size();
  const double sigma = std::sqrt(10000.0 * 0.25 * 0.75);
  for (int a : anchors)
    CHECK(std::abs(counts[a] - expected) <= 3.0 * sigma);
}

TEST_CASE("run_experiment with the random baseline") {
  ExperimentConfig cfg;
  cfg.n = 10;
  cfg.rounds = 100;
  cfg.seeds = {42};
  cfg.generator.anchors = {1, 2};
  cfg.generator.extra = 3;
  AlgorithmSpec random;
  random.kind = AlgorithmSpec::Kind::kRandom;
  cfg.algorithms = {random};
  const ResultsTable table = run_experiment(cfg);
  CHECK(table.errors.empty());
  REQUIRE(table.rows.size() == 100);
  double running = 0.0;
  for (int t = 1; t <= 100; ++t) {
    const ResultRow& row = table.rows[t - 1];
    CHECK(row.algorithm == "random");
    CHECK(row.t == t);
    CHECK(row.cost >= 1.0);
    CHECK(row.cost <= 10.0);
    running += row.cost;
    CHECK(row.cum_cost == Catch::Approx(running).margin(1e-9));
    CHECK(row.avg_cost == Catch::Approx(running / t).margin(1e-9));
  }
}

TEST_CASE("identical configurations produce byte-identical csv") {
  ExperimentConfig cfg;
  cfg.n = 8;
  cfg.rounds = 40;
  cfg.seeds = {1, 2};
  cfg.generator.anchors = {1, 2};
  cfg.generator.extra = 2;
  cfg.step_rule = StepRule::custom(2.0 * std::sqrt(8.0), 64.0);
  AlgorithmSpec random, det, rand_round, flt;
  random.kind = AlgorithmSpec::Kind::kRandom;
  det.kind = AlgorithmSpec::Kind::kOpgdDet;
  det.solver = BlockSolver::Kind::kHeuristic;
  det.block_size = 3;
  rand_round.kind = AlgorithmSpec::Kind::kOpgdRand;
  flt.kind = AlgorithmSpec::Kind::kFlt;
  cfg.algorithms = {random, det, rand_round, flt};
  const std::string once = csv_to_string(run_experiment(cfg));
  const std::string twice = csv_to_string(run_experiment(cfg));
  CHECK(once == twice);
  CHECK(once.substr(0, 39) == "algorithm,seed,t,cost,cum_cost,avg_cost");

  // Round-trip through the parser preserves every row.
  const ResultsTable back = parse_csv(once);
  CHECK(back.rows.size() == 4 * 2 * 40);
  CHECK(csv_to_string(back) == once);
}

TEST_CASE("empty tables emit a header-only csv") {
  const ResultsTable empty;
  CHECK(csv_to_string(empty) == "algorithm,seed,t,cost,cum_cost,avg_cost\n");
  const ResultsTable parsed = parse_csv(csv_to_string(empty));
  CHECK(parsed.rows.empty());
  CHECK_THROWS_AS(parse_csv("bogus\n"), InvalidInput);
}

TEST_CASE("per-cell failures do not abort the experiment") {
  ExperimentConfig cfg;
  cfg.n = 9;  // exhaustive search refuses n = 9
  cfg.rounds = 10;
  cfg.seeds = {5};
  cfg.generator.anchors = {1};
  cfg.generator.extra = 2;
  AlgorithmSpec brute, random;
  brute.kind = AlgorithmSpec::Kind::kBrute;
  random.kind = AlgorithmSpec::Kind::kRandom;
  cfg.algorithms = {brute, random};
  const ResultsTable table = run_experiment(cfg);
  REQUIRE(table.errors.size() == 1);
  CHECK(table.errors[0].algorithm == "brute");
  CHECK(table.errors[0].kind == ExperimentError::Kind::kDeskScale);
  CHECK(table.rows.size() == 10);  // the random cell still ran
  const std::string summary = summarize(table);
  CHECK(summary.find("error: brute") != std::string::npos);
}

TEST_CASE("mwu and brute cells report expected-cost style rows") {
  ExperimentConfig cfg;
  cfg.n = 4;
  cfg.rounds = 30;
  cfg.seeds = {11};
  cfg.generator.anchors = {1, 2};
  cfg.generator.extra = 1;
  AlgorithmSpec mwu, brute;
  mwu.kind = AlgorithmSpec::Kind::kMwu;
  mwu.eta = 0.1;
  brute.kind = AlgorithmSpec::Kind::kBrute;
  cfg.algorithms = {mwu, brute};
  const ResultsTable table = run_experiment(cfg);
  CHECK(table.errors.empty());
  REQUIRE(table.rows.size() == 60);
  // The fixed optimum can only be beaten by the adaptive mix on average,
  // not the other way round.
  const double mwu_final = table.rows[29].avg_cost;
  const double brute_final = table.rows[59].avg_cost;
  CHECK(mwu_final >= brute_final - 1e-9);
}

TEST_CASE("config parsing accepts the documented schema") {
  const std::string text = R"({
    "n": 12, "T": 77, "epsilon": 0.2, "seeds": [3, 4],
    "generator": {"kind": "anchored", "anchors": [1, 2], "extra": 3},
    "step_rule": {"kind": "custom", "d": 6.9282, "g": 144.0},
    "algorithms": [
      {"kind": "random"},
      {"kind": "opgd_det", "solver": "fptas", "r": 4, "alpha": 0.5},
      {"kind": "opgd_rand", "scheme": "gmssc"},
      {"kind": "mwu", "eta": 0.05},
      {"kind": "flt"}, {"kind": "brute"}
    ],
    "output": "out.csv"})";
  const ExperimentConfig cfg = parse_config(text);
  CHECK(cfg.n == 12);
  CHECK(cfg.rounds == 77);
  CHECK(cfg.epsilon == 0.2);
  CHECK(cfg.seeds == std::vector<std::uint64_t>{3, 4});
  CHECK(cfg.step_rule.kind == StepRule::Kind::kCustom);
  REQUIRE(cfg.algorithms.size() == 6);
  CHECK(cfg.algorithms[1].solver == BlockSolver::Kind::kFptas);
  CHECK(cfg.algorithms[1].block_size == 4);
  CHECK(cfg.algorithms[2].params.scale_constant == 5.03);
  CHECK(cfg.output == "out.csv");

  CHECK_THROWS_AS(parse_config("{"), InvalidInput);
  CHECK_THROWS_AS(parse_config(R"({"algorithms": [{"kind": "nope"}]})"),
                  InvalidInput);
  CHECK_THROWS_AS(parse_config(R"({"n": 3})"), InvalidInput);
}

TEST_CASE("presets mirror the documented experiment setups") {
  const ExperimentConfig a = preset_two_anchors();
  CHECK(a.n == 20);
  CHECK(a.rounds == 5000);
  CHECK(a.generator.anchors == std::vector<int>{1, 2});
  CHECK(a.generator.extra == 4);
  CHECK(a.seeds.size() == 5);
  REQUIRE(a.algorithms.size() == 4);
  CHECK(a.algorithms[0].name() == "random");
  CHECK(a.algorithms[1].name() == "opgd_det");
  CHECK(a.algorithms[2].name() == "opgd_rand");
  CHECK(a.algorithms[3].name() == "flt");

  const ExperimentConfig b = preset_five_anchors();
  CHECK(b.generator.anchors.size() == 5);
  CHECK(b.generator.extra == 9);
}
