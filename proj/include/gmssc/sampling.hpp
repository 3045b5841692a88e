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
#include <vector>

#include "gmssc/core.hpp"
#include "gmssc/rng.hpp"

namespace gmssc {

inline Permutation random_permutation(int n, Rng& rng) {
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i + 1;
  for (int i = n - 1; i > 0; --i)  // Fisher-Yates
    std::swap(order[i], order[rng.uniform_int(0, i)]);
  return Permutation(std::move(order));
}

/// Convex combination of 2n random permutation matrices with Dirichlet(1)
/// weights. Stays exactly feasible and covers both interior and near-vertex
/// regions of the doubly stochastic polytope.
inline DsMatrix random_doubly_stochastic(int n, Rng& rng) {
  const int k = 2 * n;
  std::vector<double> weights(k);
  double sum = 0.0;
  for (double& w : weights) {
    w = -std::log(rng.uniform_open01());
    sum += w;
  }
  Matrix m(n, 0.0);
  for (int s = 0; s < k; ++s) {
    const Permutation pi = random_permutation(n, rng);
    const double w = weights[s] / sum;
    for (int j = 1; j <= n; ++j) m(pi.item_at(j), j) += w;
  }
  return DsMatrix(std::move(m), 1e-9);
}

/// Uniform request with `size` distinct items from {1..n} and the given
/// demand (defaults to 1).
inline Request random_request(int n, int size, Rng& rng, int demand = 1) {
  if (size < 1 || size > n)
    throw InvalidInput("request size " + std::to_string(size) +
                       " outside [1, " + std::to_string(n) + "]");
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i + 1;
  for (int i = 0; i < size; ++i)
    std::swap(pool[i], pool[rng.uniform_int(i, n - 1)]);
  pool.resize(size);
  return Request(std::move(pool), demand);
}

}  // namespace gmssc
