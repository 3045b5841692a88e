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

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gmssc/baselines.hpp"
#include "gmssc/costs.hpp"
#include "gmssc/instance_io.hpp"
#include "gmssc/opgd.hpp"
#include "gmssc/rounding_det.hpp"
#include "gmssc/rounding_rand.hpp"
#include "gmssc/subgradient.hpp"
#include "json.hpp"

namespace gmssc {

// Experiment orchestration: generate or load an instance per seed, run each
// configured algorithm through the online protocol, and emit per-round
// costs as CSV. Everything is a pure function of the configuration, so two
// invocations produce byte-identical output.

/// Anchored request stream: every request holds one uniformly chosen
/// anchor plus `extra` distinct companions drawn from the non-anchor pool,
/// demand 1.
inline Instance generate_anchored(int n, const std::vector<int>& anchors,
                                  int extra, int rounds, std::uint64_t seed) {
  if (n < 1) throw InvalidInput("generator needs n >= 1");
  if (anchors.empty()) throw InvalidInput("generator needs anchors");
  std::set<int> anchor_set(anchors.begin(), anchors.end());
  if (anchor_set.size() != anchors.size())
    throw InvalidInput("anchors must be distinct");
  if (*anchor_set.begin() < 1 || *anchor_set.rbegin() > n)
    throw InvalidInput("anchors outside {1.." + std::to_string(n) + "}");
  std::vector<int> pool;
  for (int e = 1; e <= n; ++e)
    if (!anchor_set.count(e)) pool.push_back(e);
  if (extra < 0 || extra > static_cast<int>(pool.size()))
    throw InvalidInput("cannot draw " + std::to_string(extra) +
                       " companions from " + std::to_string(pool.size()) +
                       " non-anchor items");
  Rng rng = Rng::derive(seed, "generate_anchored");
  std::vector<Request> requests;
  requests.reserve(rounds);
  for (int t = 0; t < rounds; ++t) {
    std::vector<int> items;
    items.push_back(anchors[rng.uniform_int(0, int(anchors.size()) - 1)]);
    for (int i = 0; i < extra; ++i) {
      std::swap(pool[i], pool[rng.uniform_int(i, int(pool.size()) - 1)]);
      items.push_back(pool[i]);
    }
    requests.emplace_back(std::move(items), 1);
  }
  return Instance(n, std::move(requests));
}

struct GeneratorSpec {
  enum class Kind { kAnchored, kFile };
  Kind kind = Kind::kAnchored;
  std::vector<int> anchors{1, 2};
  int extra = 4;
  std::string path;

  Instance build(int n, int rounds, std::uint64_t seed) const {
    if (kind == Kind::kAnchored)
      return generate_anchored(n, anchors, extra, rounds, seed);
    std::ifstream in(path);
    if (!in) throw IoError("cannot read instance file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_instance(buffer.str());
  }
};

struct AlgorithmSpec {
  enum class Kind { kRandom, kFlt, kBrute, kMwu, kOpgdDet, kOpgdRand };
  Kind kind = Kind::kRandom;
  // Deterministic rounding knobs.
  BlockSolver::Kind solver = BlockSolver::Kind::kHeuristic;
  int block_size = 1;
  double alpha = 0.25;
  // Randomized rounding knobs.
  RoundingParams params = RoundingParams::mssc();
  // Weights-over-permutations knob; <= 0 means the sqrt(ln(n!)/T) default.
  double eta = 0.0;

  std::string name() const {
    switch (kind) {
      case Kind::kRandom:   return "random";
      case Kind::kFlt:      return "flt";
      case Kind::kBrute:    return "brute";
      case Kind::kMwu:      return "mwu";
      case Kind::kOpgdDet:  return "opgd_det";
      case Kind::kOpgdRand: return "opgd_rand";
    }
    return "unknown";
  }
};

struct ExperimentConfig {
  int n = 20;
  int rounds = 5000;          // T
  double epsilon = 0.1;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  GeneratorSpec generator;
  std::vector<AlgorithmSpec> algorithms;
  StepRule step_rule = StepRule::default_rule();
  std::string output = "results.csv";

  void validate() const {
    if (rounds < 1) throw InvalidInput("config needs T >= 1");
    if (n < 1) throw InvalidInput("config needs n >= 1");
    if (epsilon <= 0.0) throw InvalidInput("config needs epsilon > 0");
    if (seeds.empty()) throw InvalidInput("config needs at least one seed");
    if (algorithms.empty()) throw InvalidInput("config needs algorithms");
  }
};

struct ResultRow {
  std::string algorithm;
  std::uint64_t seed = 0;
  int t = 0;
  double cost = 0.0;
  double cum_cost = 0.0;
  double avg_cost = 0.0;
};

struct ExperimentError {
  enum class Kind { kConfig, kDeskScale, kIo };
  std::string algorithm;
  std::uint64_t seed = 0;
  int t = 0;  // round at which the cell failed; 0 when it never started
  std::string message;
  Kind kind = Kind::kConfig;
};

struct ResultsTable {
  std::vector<ResultRow> rows;
  std::vector<ExperimentError> errors;
};

namespace harness_detail {

inline void record_failure(ResultsTable& table, const std::string& algorithm,
                           std::uint64_t seed, int t, const std::exception& e) {
  ExperimentError::Kind kind = ExperimentError::Kind::kConfig;
  if (dynamic_cast<const DeskScaleError*>(&e))
    kind = ExperimentError::Kind::kDeskScale;
  else if (dynamic_cast<const IoError*>(&e))
    kind = ExperimentError::Kind::kIo;
  table.errors.push_back({algorithm, seed, t, e.what(), kind});
}

// Rows of one (algorithm, seed) cell are appended contiguously, so the
// running sum can read the previous row; t == 1 starts a new cell.
inline void append_cost(ResultsTable& table, const std::string& algorithm,
                        std::uint64_t seed, int t, double cost) {
  ResultRow row;
  row.algorithm = algorithm;
  row.seed = seed;
  row.t = t;
  row.cost = cost;
  row.cum_cost = (t == 1 ? 0.0 : table.rows.back().cum_cost) + cost;
  row.avg_cost = row.cum_cost / t;
  table.rows.push_back(std::move(row));
}

// Online loop shared by the gradient-descent algorithms; keeps the rows
// produced before a desk-scale failure.
inline void run_opgd_cell(ResultsTable& table, const AlgorithmSpec& algo,
                          const ExperimentConfig& cfg, const Instance& inst,
                          std::uint64_t seed) {
  bool demand_one = true;
  for (const Request& r : inst.requests)
    if (r.demand != 1) demand_one = false;

  CostOracle cost;
  SubgradOracle subgrad;
  if (demand_one) {
    cost = [](const DsMatrix& a, const Request& r) { return cover_cost_k1(a, r); };
    subgrad = [](const DsMatrix& a, const Request& r) {
      return cover_subgradient_k1(a, r);
    };
  } else {
    const double eps = cfg.epsilon;
    cost = [eps](const DsMatrix& a, const Request& r) {
      return fractional_access_cost(a, r, eps).value;
    };
    subgrad = [eps](const DsMatrix& a, const Request& r) {
      return fac_subgradient(a, r, eps).g;
    };
  }

  Rounder rounder;
  if (algo.kind == AlgorithmSpec::Kind::kOpgdDet) {
    BlockSolver solver{algo.solver, algo.block_size, algo.alpha};
    rounder = [solver](const DsMatrix& a, Rng&) {
      return round_deterministic(a, solver);
    };
  } else {
    const RoundingParams params = algo.params;
    rounder = [params](const DsMatrix& a, Rng& rng) {
      return round_randomized(a, params, rng);
    };
  }

  Rng rng = Rng::derive(seed, algo.name());
  OpgdState state = opgd_init(inst.n, cfg.epsilon, cfg.step_rule);
  for (int t = 1; t <= inst.rounds(); ++t) {
    const Request& request = inst.requests[t - 1];
    try {
      const Permutation played = rounder(state.a, rng);
      append_cost(table, algo.name(), seed, t, access_cost(played, request));
      state = opgd_step(state, subgrad(state.a, request));
    } catch (const std::exception& e) {
      record_failure(table, algo.name(), seed, t, e);
      return;
    }
  }
}

}  // namespace harness_detail

/// Runs every (algorithm, seed) cell. Failures are recorded per cell and
/// leave the other cells untouched.
inline ResultsTable run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ResultsTable table;
  for (const AlgorithmSpec& algo : cfg.algorithms) {
    for (const std::uint64_t seed : cfg.seeds) {
      Instance inst(1, {});
      try {
        inst = cfg.generator.build(cfg.n, cfg.rounds, seed);
      } catch (const std::exception& e) {
        harness_detail::record_failure(table, algo.name(), seed, 0, e);
        continue;
      }
      try {
        switch (algo.kind) {
          case AlgorithmSpec::Kind::kRandom: {
            const RandomBaselineResult res = random_perm_baseline(inst, seed);
            for (int t = 1; t <= inst.rounds(); ++t)
              harness_detail::append_cost(table, algo.name(), seed, t,
                                          res.costs[t - 1]);
            break;
          }
          case AlgorithmSpec::Kind::kFlt: {
            const Permutation pi = flt_greedy(inst);
            for (int t = 1; t <= inst.rounds(); ++t)
              harness_detail::append_cost(table, algo.name(), seed, t,
                                          access_cost(pi, inst.requests[t - 1]));
            break;
          }
          case AlgorithmSpec::Kind::kBrute: {
            const BruteForceResult res = brute_force_opt(inst);
            for (int t = 1; t <= inst.rounds(); ++t)
              harness_detail::append_cost(table, algo.name(), seed, t,
                                          access_cost(res.pi, inst.requests[t - 1]));
            break;
          }
          case AlgorithmSpec::Kind::kMwu: {
            const MwuResult res = mwu_permutations(inst, algo.eta);
            for (int t = 1; t <= inst.rounds(); ++t)
              harness_detail::append_cost(table, algo.name(), seed, t,
                                          res.expected_costs[t - 1]);
            break;
          }
          case AlgorithmSpec::Kind::kOpgdDet:
          case AlgorithmSpec::Kind::kOpgdRand:
            harness_detail::run_opgd_cell(table, algo, cfg, inst, seed);
            break;
        }
      } catch (const std::exception& e) {
        harness_detail::record_failure(table, algo.name(), seed, 0, e);
      }
    }
  }
  return table;
}

inline std::string csv_to_string(const ResultsTable& table) {
  std::string out = "algorithm,seed,t,cost,cum_cost,avg_cost\n";
  char buffer[160];
  for (const ResultRow& row : table.rows) {
    std::snprintf(buffer, sizeof(buffer), "%s,%llu,%d,%.10g,%.10g,%.10g\n",
                  row.algorithm.c_str(),
                  static_cast<unsigned long long>(row.seed), row.t, row.cost,
                  row.cum_cost, row.avg_cost);
    out += buffer;
  }
  return out;
}

inline void emit_csv(const ResultsTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write: " + path);
  out << csv_to_string(table);
  if (!out) throw IoError("write failed: " + path);
}

inline ResultsTable parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "algorithm,seed,t,cost,cum_cost,avg_cost")
    throw InvalidInput("unrecognized results header");
  ResultsTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ResultRow row;
    char name[64];
    unsigned long long seed = 0;
    if (std::sscanf(line.c_str(), "%63[^,],%llu,%d,%lg,%lg,%lg", name, &seed,
                    &row.t, &row.cost, &row.cum_cost, &row.avg_cost) != 6)
      throw InvalidInput("bad results row: " + line);
    row.algorithm = name;
    row.seed = seed;
    table.rows.push_back(std::move(row));
  }
  return table;
}

/// Seed-averaged final time-average cost per algorithm, in first-seen
/// order, plus any per-cell errors.
inline std::string summarize(const ResultsTable& table) {
  std::vector<std::string> order;
  std::map<std::string, std::map<std::uint64_t, double>> finals;
  for (const ResultRow& row : table.rows) {
    if (!finals.count(row.algorithm)) order.push_back(row.algorithm);
    finals[row.algorithm][row.seed] = row.avg_cost;  // last row per seed wins
  }
  std::ostringstream out;
  double brute_mean = -1.0;
  for (const std::string& name : order) {
    double sum = 0.0;
    for (const auto& [seed, value] : finals[name]) sum += value;
    const double mean = sum / double(finals[name].size());
    if (name == "brute") brute_mean = mean;
    char buffer[128];
    std::snprintf(buffer, sizeof(buffer), "%-10s final avg cost %.6f over %zu seed(s)\n",
                  name.c_str(), mean, finals[name].size());
    out << buffer;
  }
  if (brute_mean > 0.0) {
    for (const std::string& name : order) {
      if (name == "brute") continue;
      double sum = 0.0;
      for (const auto& [seed, value] : finals[name]) sum += value;
      const double mean = sum / double(finals[name].size());
      char buffer[128];
      std::snprintf(buffer, sizeof(buffer), "%-10s cost ratio vs brute %.4f\n",
                    name.c_str(), mean / brute_mean);
      out << buffer;
    }
  }
  for (const ExperimentError& err : table.errors)
    out << "error: " << err.algorithm << " seed " << err.seed << " round "
        << err.t << ": " << err.message << "\n";
  return out.str();
}

// Configuration files mirror ExperimentConfig as JSON; see README for the
// schema. Example:
//   {"n": 20, "T": 5000, "epsilon": 0.1, "seeds": [1,2,3],
//    "generator": {"kind": "anchored", "anchors": [1,2], "extra": 4},
//    "step_rule": {"kind": "custom", "d": 8.9443, "g": 400},
//    "algorithms": [{"kind": "random"},
//                   {"kind": "opgd_det", "solver": "heuristic", "r": 5}],
//    "output": "results.csv"}
inline ExperimentConfig parse_config(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed config: ") + e.what());
  }
  ExperimentConfig cfg;
  cfg.algorithms.clear();
  try {
    if (doc.contains("n")) cfg.n = doc["n"].get<int>();
    if (doc.contains("T")) cfg.rounds = doc["T"].get<int>();
    if (doc.contains("epsilon")) cfg.epsilon = doc["epsilon"].get<double>();
    if (doc.contains("output")) cfg.output = doc["output"].get<std::string>();
    if (doc.contains("seeds")) {
      cfg.seeds.clear();
      for (const auto& s : doc["seeds"]) cfg.seeds.push_back(s.get<std::uint64_t>());
    }
    if (doc.contains("generator")) {
      const auto& gen = doc["generator"];
      const std::string kind = gen.value("kind", "anchored");
      if (kind == "anchored") {
        cfg.generator.kind = GeneratorSpec::Kind::kAnchored;
        if (gen.contains("anchors"))
          cfg.generator.anchors = gen["anchors"].get<std::vector<int>>();
        cfg.generator.extra = gen.value("extra", 4);
      } else if (kind == "file") {
        cfg.generator.kind = GeneratorSpec::Kind::kFile;
        cfg.generator.path = gen.at("path").get<std::string>();
      } else {
        throw InvalidInput("unknown generator kind: " + kind);
      }
    }
    if (doc.contains("step_rule")) {
      const auto& rule = doc["step_rule"];
      const std::string kind = rule.value("kind", "default");
      if (kind == "default") {
        cfg.step_rule = StepRule::default_rule();
      } else if (kind == "custom") {
        cfg.step_rule = StepRule::custom(rule.at("d").get<double>(),
                                         rule.at("g").get<double>());
      } else {
        throw InvalidInput("unknown step rule: " + kind);
      }
    }
    if (!doc.contains("algorithms"))
      throw InvalidInput("config needs an algorithms array");
    for (const auto& entry : doc["algorithms"]) {
      AlgorithmSpec algo;
      const std::string kind = entry.at("kind").get<std::string>();
      if (kind == "random") {
        algo.kind = AlgorithmSpec::Kind::kRandom;
      } else if (kind == "flt") {
        algo.kind = AlgorithmSpec::Kind::kFlt;
      } else if (kind == "brute") {
        algo.kind = AlgorithmSpec::Kind::kBrute;
      } else if (kind == "mwu") {
        algo.kind = AlgorithmSpec::Kind::kMwu;
        algo.eta = entry.value("eta", 0.0);
      } else if (kind == "opgd_det") {
        algo.kind = AlgorithmSpec::Kind::kOpgdDet;
        const std::string solver = entry.value("solver", "heuristic");
        if (solver == "exact")
          algo.solver = BlockSolver::Kind::kExact;
        else if (solver == "fptas")
          algo.solver = BlockSolver::Kind::kFptas;
        else if (solver == "heuristic")
          algo.solver = BlockSolver::Kind::kHeuristic;
        else
          throw InvalidInput("unknown block solver: " + solver);
        algo.block_size = entry.value("r", 1);
        algo.alpha = entry.value("alpha", 0.25);
      } else if (kind == "opgd_rand") {
        algo.kind = AlgorithmSpec::Kind::kOpgdRand;
        const std::string scheme = entry.value("scheme", "mssc");
        if (scheme == "mssc")
          algo.params = RoundingParams::mssc();
        else if (scheme == "gmssc")
          algo.params = RoundingParams::gmssc();
        else
          throw InvalidInput("unknown rounding scheme: " + scheme);
      } else {
        throw InvalidInput("unknown algorithm kind: " + kind);
      }
      cfg.algorithms.push_back(algo);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

/// Anchored stream over two hot items, requests of size five. The gradient
/// step uses the closed-form oracle's norm bound (about n^2) rather than
/// the configuration-LP constant, which at this scale would freeze the
/// iterate near its start.
inline ExperimentConfig preset_two_anchors() {
  ExperimentConfig cfg;
  cfg.n = 20;
  cfg.rounds = 5000;
  cfg.epsilon = 0.1;
  cfg.seeds = {1, 2, 3, 4, 5};
  cfg.generator.kind = GeneratorSpec::Kind::kAnchored;
  cfg.generator.anchors = {1, 2};
  cfg.generator.extra = 4;
  cfg.step_rule = StepRule::custom(2.0 * std::sqrt(20.0), 400.0);
  cfg.algorithms.clear();
  AlgorithmSpec random;
  random.kind = AlgorithmSpec::Kind::kRandom;
  AlgorithmSpec det;
  det.kind = AlgorithmSpec::Kind::kOpgdDet;
  det.solver = BlockSolver::Kind::kHeuristic;
  det.block_size = 5;
  AlgorithmSpec rand;
  rand.kind = AlgorithmSpec::Kind::kOpgdRand;
  rand.params = RoundingParams::mssc();
  AlgorithmSpec flt;
  flt.kind = AlgorithmSpec::Kind::kFlt;
  cfg.algorithms = {random, det, rand, flt};
  return cfg;
}

/// Five anchors, requests of size ten.
inline ExperimentConfig preset_five_anchors() {
  ExperimentConfig cfg = preset_two_anchors();
  cfg.generator.anchors = {1, 2, 3, 4, 5};
  cfg.generator.extra = 9;
  for (AlgorithmSpec& algo : cfg.algorithms)
    if (algo.kind == AlgorithmSpec::Kind::kOpgdDet) algo.block_size = 10;
  return cfg;
}

}  // namespace gmssc
