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
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gmssc/core.hpp"
#include "gmssc/projection.hpp"
#include "gmssc/rng.hpp"

namespace gmssc {

// Online projected gradient descent over doubly stochastic matrices:
// start from the uniform matrix, take a subgradient step against the
// revealed request's relaxed cost, then project back onto the polytope.
// The loop is generic over the cost/subgradient pair, so demand-1 streams
// can run on the fast closed-form oracle while general demands use the
// configuration-LP oracle at desk scale.

/// Step-size schedule eta_t. The default follows the diameter/gradient
/// template D/(G sqrt(t)) with D = 2 sqrt(n) and G = n^5/eps, which
/// simplifies to 2 eps/(n^4.5 sqrt(t)); G there bounds the
/// configuration-LP dual subgradient. Custom (D, G) fits oracles with
/// smaller gradient norms.
struct StepRule {
  enum class Kind { kDefault, kCustom };
  Kind kind = Kind::kDefault;
  double diameter = 0.0;   // D
  double grad_bound = 0.0; // G

  static StepRule default_rule() { return {}; }
  static StepRule custom(double diameter, double grad_bound) {
    if (diameter <= 0.0 || grad_bound <= 0.0)
      throw InvalidInput("step rule needs positive D and G");
    return {Kind::kCustom, diameter, grad_bound};
  }

  double eta(int t, int n, double epsilon) const {
    if (kind == Kind::kCustom)
      return diameter / (grad_bound * std::sqrt(double(t)));
    return 2.0 * epsilon / (std::pow(double(n), 4.5) * std::sqrt(double(t)));
  }
};

struct OpgdState {
  int t = 1;
  DsMatrix a;
  double epsilon = 0.1;
  StepRule rule;
};

inline OpgdState opgd_init(int n, double epsilon,
                           StepRule rule = StepRule::default_rule()) {
  if (n < 1) throw InvalidInput("universe size must be positive");
  if (epsilon <= 0.0) throw InvalidInput("epsilon must be positive");
  return OpgdState{1, DsMatrix::uniform(n), epsilon, rule};
}

inline OpgdState opgd_step(const OpgdState& state, const Matrix& g,
                           const ProjectionConfig& proj_cfg = {}) {
  const int n = state.a.size();
  if (g.size() != n) throw InvalidInput("subgradient dimension mismatch");
  const double eta = state.rule.eta(state.t, n, state.epsilon);
  Matrix moved = state.a.matrix();
  for (std::size_t i = 0; i < moved.values().size(); ++i)
    moved.values()[i] -= eta * g.values()[i];
  ProjectionResult proj = project_birkhoff(moved, proj_cfg);
  return OpgdState{state.t + 1, std::move(proj.matrix), state.epsilon,
                   state.rule};
}

using CostOracle = std::function<double(const DsMatrix&, const Request&)>;
using SubgradOracle = std::function<Matrix(const DsMatrix&, const Request&)>;
using Rounder = std::function<Permutation(const DsMatrix&, Rng&)>;

/// Per-round record of what the learner played and paid.
struct RoundTrace {
  int t = 0;
  double relaxed_cost = 0.0;       // cost oracle at the pre-round matrix
  double rounded_cost = 0.0;       // access cost of the played permutation
  std::map<std::string, double> baseline_costs;
};

/// Runs the online protocol: each round commits a permutation rounded from
/// the current matrix, then observes the request, records both costs, and
/// takes the subgradient step. The permutation is computed before the
/// request is touched, so pi_t depends on R_1..R_{t-1} and the seed only.
inline std::vector<RoundTrace> run_online(
    const Instance& inst, const CostOracle& cost, const SubgradOracle& subgrad,
    const Rounder& rounder, double epsilon, std::uint64_t seed,
    StepRule rule = StepRule::default_rule(),
    const ProjectionConfig& proj_cfg = {}) {
  Rng rng = Rng::derive(seed, "run_online");
  OpgdState state = opgd_init(inst.n, epsilon, rule);
  std::vector<RoundTrace> trace;
  trace.reserve(inst.requests.size());
  for (const Request& request : inst.requests) {
    const Permutation played = rounder(state.a, rng);
    try {
      RoundTrace row;
      row.t = state.t;
      row.rounded_cost = access_cost(played, request);
      row.relaxed_cost = cost(state.a, request);
      trace.push_back(std::move(row));
      state = opgd_step(state, subgrad(state.a, request), proj_cfg);
    } catch (const DeskScaleError& e) {
      throw DeskScaleError("round " + std::to_string(state.t) + ": " + e.what());
    }
  }
  return trace;
}

/// Best fixed matrix in hindsight, approximated by batch projected
/// subgradient descent with diminishing steps; duplicate requests are
/// aggregated so each iteration touches every distinct request once.
/// Returns the best time-averaged relaxed cost seen along the iterates.
inline double offline_relaxed_optimum(int n,
                                      const std::vector<Request>& requests,
                                      const CostOracle& cost,
                                      const SubgradOracle& subgrad,
                                      int iterations = 5000,
                                      StepRule rule = StepRule::default_rule(),
                                      double epsilon = 0.1) {
  if (requests.empty()) return 0.0;
  std::map<std::pair<std::vector<int>, int>, int> multiplicity;
  for (const Request& r : requests) ++multiplicity[{r.items, r.demand}];
  std::vector<std::pair<Request, double>> batch;
  batch.reserve(multiplicity.size());
  for (const auto& [key, count] : multiplicity)
    batch.emplace_back(Request(key.first, key.second),
                       double(count) / double(requests.size()));

  const auto average_cost = [&](const DsMatrix& a) {
    double total = 0.0;
    for (const auto& [r, weight] : batch) total += weight * cost(a, r);
    return total;
  };

  DsMatrix a = DsMatrix::uniform(n);
  double best = average_cost(a);
  for (int k = 1; k <= iterations; ++k) {
    Matrix direction(n, 0.0);
    for (const auto& [r, weight] : batch) {
      const Matrix g = subgrad(a, r);
      for (std::size_t i = 0; i < direction.values().size(); ++i)
        direction.values()[i] += weight * g.values()[i];
    }
    const double eta = rule.eta(k, n, epsilon);
    Matrix moved = a.matrix();
    for (std::size_t i = 0; i < moved.values().size(); ++i)
      moved.values()[i] -= eta * direction.values()[i];
    a = project_birkhoff(moved).matrix;
    best = std::min(best, average_cost(a));
  }
  return best;
}

}  // namespace gmssc
