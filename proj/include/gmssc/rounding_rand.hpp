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
#include "gmssc/rng.hpp"

namespace gmssc {

// Randomized rounding of a doubly stochastic matrix to a permutation:
// scale the matrix by z/alpha with a random alpha, cascade each column's
// mass into its doubled index so prefixes grow geometrically, then give
// every item the first position where its running mass passes a fresh
// uniform threshold and sort by those positions. The scale constant z
// trades concentration against the constant factor of the expected-cost
// guarantee: 1.6783 tunes the demand-1 analysis, 5.03 the general one.

struct RoundingParams {
  double scale_constant = 1.6783;

  static RoundingParams mssc() { return RoundingParams{1.6783}; }
  static RoundingParams gmssc() { return RoundingParams{5.03}; }
};

/// Draws alpha in (0,1) with density 2a (so P[alpha <= x] = x^2), realized
/// as the square root of a uniform draw.
inline double sample_alpha(Rng& rng) { return std::sqrt(rng.uniform_open01()); }

/// In-place doubling cascade: for each row, columns j = 1..floor(n/2) in
/// ascending order add their current (already cascaded) value into column
/// 2j. Entries only grow; prefix sums gain a factor k+1 every 2^k stretch.
inline Matrix double_matrix(Matrix m) {
  const int n = m.size();
  for (int e = 1; e <= n; ++e)
    for (int j = 1; j <= n / 2; ++j) {
      if (m(e, j) < 0.0) throw InvalidInput("doubling needs nonnegative input");
      m(e, 2 * j) += m(e, j);
    }
  return m;
}

/// One sample of the randomized rounding scheme. Items are ordered by
/// their threshold positions i_e = max{i : sum_{j<i} B_ej < alpha_e}, ties
/// broken uniformly at random; identical (matrix, params, seed stream)
/// inputs reproduce the same permutation.
inline Permutation round_randomized(const DsMatrix& a,
                                    const RoundingParams& params, Rng& rng) {
  const int n = a.size();
  const double alpha = sample_alpha(rng);
  Matrix scaled(n, 0.0);
  const double factor = params.scale_constant / alpha;
  for (int e = 1; e <= n; ++e)
    for (int j = 1; j <= n; ++j)
      scaled(e, j) = std::max(a(e, j), 0.0) * factor;
  const Matrix b = double_matrix(std::move(scaled));

  struct Key {
    int index;
    std::uint64_t tie;
    int item;
  };
  std::vector<Key> keys(n);
  for (int e = 1; e <= n; ++e) {
    const double threshold = rng.uniform_open01();
    const std::uint64_t tie = rng.next_u64();
    // The empty prefix is zero, below any positive threshold, so the index
    // is well defined; it defaults to n when the row never reaches it.
    int index = n;
    double prefix = 0.0;
    for (int i = 1; i <= n; ++i) {
      if (prefix >= threshold) {
        index = i - 1;
        break;
      }
      prefix += b(e, i);
    }
    keys[e - 1] = Key{index, tie, e};
  }
  std::sort(keys.begin(), keys.end(), [](const Key& x, const Key& y) {
    return x.index != y.index ? x.index < y.index : x.tie < y.tie;
  });
  std::vector<int> order(n);
  for (int p = 0; p < n; ++p) order[p] = keys[p].item;
  return Permutation(std::move(order));
}

struct McEstimate {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
};

/// Monte Carlo estimate of the expected access cost of the rounding scheme
/// on one request.
inline McEstimate expected_cost_estimate(const DsMatrix& a,
                                         const RoundingParams& params,
                                         const Request& r, int samples,
                                         Rng& rng) {
  if (samples < 1) throw InvalidInput("need at least one sample");
  double sum = 0.0, sum_sq = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double cost = access_cost(round_randomized(a, params, rng), r);
    sum += cost;
    sum_sq += cost * cost;
  }
  const double mean = sum / samples;
  McEstimate out{mean, 0.0};
  if (samples > 1) {
    const double variance =
        std::max(0.0, (sum_sq - samples * mean * mean) / (samples - 1));
    out.stderr_of_mean = std::sqrt(variance / samples);
  }
  return out;
}

/// First position whose inclusive request-mass prefix reaches `alpha`
/// (n if the total stays below). Demand-1 diagnostic for the analysis of
/// the rounding scheme.
inline int first_covered_position(const DsMatrix& a, const Request& r,
                                  double alpha) {
  if (alpha <= 0.0 || alpha > 1.0)
    throw InvalidInput("alpha must lie in (0, 1]");
  if (r.demand != 1)
    throw InvalidInput("first_covered_position requires demand 1");
  const int n = a.size();
  r.check_universe(n);
  double prefix = 0.0;
  for (int i = 1; i <= n; ++i) {
    for (int e : r.items) prefix += a(e, i);
    if (prefix >= alpha) return i;
  }
  return n;
}

}  // namespace gmssc
