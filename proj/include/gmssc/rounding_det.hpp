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
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "gmssc/core.hpp"

namespace gmssc {

// Deterministic rounding: fill the permutation r positions at a time, each
// block holding the r remaining items whose joint prefix mass covers one
// unit of demand soonest. The block objective is the demand-1 coverage
// cost restricted to a candidate set S:
//
//   block_cost(A, S) = sum_i (1 - sum_{j<i} sum_{e in S} A_ej)_+ .
//
// Three interchangeable block solvers: exhaustive search, a dynamic-
// programming FPTAS on a rounded grid, and a cheap greedy heuristic.

inline double block_cost(const DsMatrix& a, const std::vector<int>& items) {
  const int n = a.size();
  double prefix = 0.0, total = 0.0;
  for (int i = 1; i <= n; ++i) {
    total += std::max(0.0, 1.0 - prefix);
    for (int e : items) prefix += a(e, i);
  }
  return total;
}

constexpr std::uint64_t kDefaultBlockCap = 1000000;

namespace det_detail {

inline std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t result = 1;
  for (int i = 1; i <= r; ++i) {
    if (result > std::uint64_t(-1) / std::uint64_t(n - r + i)) return std::uint64_t(-1);
    result = result * std::uint64_t(n - r + i) / std::uint64_t(i);
  }
  return result;
}

}  // namespace det_detail

/// Exact block solver: enumerates every r-subset of `rem` in lexicographic
/// order (so cost ties keep the lexicographically smallest sorted set).
inline std::vector<int> block_exact(const DsMatrix& a, std::vector<int> rem,
                                    int r,
                                    std::uint64_t cap = kDefaultBlockCap) {
  std::sort(rem.begin(), rem.end());
  const int m = static_cast<int>(rem.size());
  if (r < 1 || r > m) throw InvalidInput("block size outside [1, |rem|]");
  const std::uint64_t count = det_detail::binomial(m, r);
  if (count > cap)
    throw DeskScaleError("C(" + std::to_string(m) + "," + std::to_string(r) +
                         ") = " + std::to_string(count) +
                         " subsets exceed desk-scale cap " + std::to_string(cap));
  std::vector<int> choose(r);
  for (int i = 0; i < r; ++i) choose[i] = i;
  std::vector<int> best;
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<int> subset(r);
  while (true) {
    for (int i = 0; i < r; ++i) subset[i] = rem[choose[i]];
    const double cost = block_cost(a, subset);
    if (cost < best_cost - 1e-12) {
      best_cost = cost;
      best = subset;
    }
    int i = r - 1;
    while (i >= 0 && choose[i] == m - r + i) --i;
    if (i < 0) break;
    ++choose[i];
    for (int j = i + 1; j < r; ++j) choose[j] = choose[j - 1] + 1;
  }
  return best;
}

/// Select-r integer program solved by dynamic programming: minimize
/// sum w_e x_e over binary x with sum c_e x_e >= C, sum d_e x_e <= D and
/// exactly r chosen. Weight sums above C are clamped to C, so the table is
/// (items) x (r+1) x (C+1) x (D+1). Infeasibility is a normal outcome.
struct DpInstance {
  struct Triple {
    double w = 0.0;
    std::int64_t c = 0;
    std::int64_t d = 0;
  };
  std::vector<Triple> triples;
  std::int64_t require_c = 0;  // C
  std::int64_t limit_d = 0;    // D
  int r = 0;
};

struct DpSolution {
  bool feasible = false;
  double value = 0.0;
  std::vector<int> selection;  // indices into triples, ascending
};

inline DpSolution dp_solve(const DpInstance& inst) {
  const int m = static_cast<int>(inst.triples.size());
  const int r = inst.r;
  const std::int64_t C = inst.require_c;
  const std::int64_t D = inst.limit_d;
  if (r < 0 || C < 0 || D < 0) throw InvalidInput("dp_solve needs r, C, D >= 0");
  for (const auto& t : inst.triples)
    if (t.c < 0 || t.d < 0)
      throw InvalidInput("dp_solve requires nonnegative c_e and d_e");

  const std::size_t states = std::size_t(r + 1) * (C + 1) * (D + 1);
  if (states > (std::size_t(1) << 27) ||
      std::size_t(m) * states > (std::size_t(1) << 31))
    throw DeskScaleError("dp table of " + std::to_string(states * m) +
                         " cells exceeds the desk-scale budget");
  const auto at = [&](int q, std::int64_t c, std::int64_t d) {
    return (std::size_t(q) * (C + 1) + c) * (D + 1) + d;
  };
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dp(states, inf);
  dp[at(0, 0, 0)] = 0.0;
  // pred_c[e * states + s] >= 0 records that the last improvement of state
  // s happened while sweeping item e, coming from c-coordinate pred_c. The
  // backward walk below follows the latest marks, which by construction
  // chain consistently through earlier items.
  std::vector<std::int32_t> pred_c(std::size_t(m) * states, -1);

  for (int e = 0; e < m; ++e) {
    const auto& t = inst.triples[e];
    // Sweep q downward so each item is used at most once.
    for (int q = std::min(e, r - 1); q >= 0; --q) {
      for (std::int64_t c = C; c >= 0; --c) {
        for (std::int64_t d = D - t.d; d >= 0; --d) {
          const double base = dp[at(q, c, d)];
          if (base == inf) continue;
          const std::int64_t nc = std::min(C, c + t.c);
          const std::size_t target = at(q + 1, nc, d + t.d);
          if (base + t.w < dp[target] - 1e-15) {
            dp[target] = base + t.w;
            pred_c[std::size_t(e) * states + target] = std::int32_t(c);
          }
        }
      }
    }
  }

  DpSolution out;
  std::int64_t best_d = -1;
  for (std::int64_t d = 0; d <= D; ++d) {
    const double v = dp[at(r, C, d)];
    if (v < inf && (best_d < 0 || v < out.value - 1e-15)) {
      out.value = v;
      best_d = d;
    }
  }
  if (best_d < 0) return out;
  out.feasible = true;

  int q = r;
  std::int64_t c = C, d = best_d;
  for (int e = m - 1; e >= 0 && q > 0; --e) {
    const std::int32_t from = pred_c[std::size_t(e) * states + at(q, c, d)];
    if (from < 0) continue;
    out.selection.push_back(e);
    d -= inst.triples[e].d;
    c = from;
    --q;
  }
  std::reverse(out.selection.begin(), out.selection.end());
  return out;
}

namespace det_detail {

// Prefix-mass columns on the rounded grid: cell (e, i) holds
// floor(sum_{j<i} A_ej * NG) for i = 1..n+1, with the virtual column n+1
// pinned to the full row sum (exactly NG) so every candidate set crosses
// the unit threshold at some boundary.
struct RoundedPrefixes {
  std::int64_t grid = 0;  // NG; the grid step is 1/NG <= alpha/(n r)
  std::vector<std::vector<std::int64_t>> cell;  // [item index][i-1]
};

inline RoundedPrefixes build_rounded_prefixes(const DsMatrix& a,
                                              const std::vector<int>& rem,
                                              int r, double alpha) {
  const int n = a.size();
  RoundedPrefixes out;
  out.grid = static_cast<std::int64_t>(
      std::ceil(double(n) * double(r) / alpha - 1e-12));
  out.cell.assign(rem.size(), std::vector<std::int64_t>(n + 1, 0));
  for (std::size_t ei = 0; ei < rem.size(); ++ei) {
    double prefix = 0.0;
    for (int i = 1; i <= n; ++i) {
      out.cell[ei][i - 1] = std::min<std::int64_t>(
          out.grid,
          static_cast<std::int64_t>(std::floor(prefix * double(out.grid) + 1e-9)));
      prefix += a(rem[ei], i);
    }
    out.cell[ei][n] = out.grid;  // virtual boundary column
  }
  return out;
}

}  // namespace det_detail

/// FPTAS block solver: rounds prefixes down to a grid of step
/// 1/NG <= alpha/(n r), then for each boundary position k solves the
/// select-r DP for sets whose rounded mass first reaches one unit at k.
/// The winner's true block cost is within (1+alpha) of the optimum; when
/// the prefixes already sit on the grid the answer is exact.
inline std::vector<int> block_fptas(const DsMatrix& a, std::vector<int> rem,
                                    int r, double alpha) {
  if (alpha <= 0.0) throw InvalidInput("alpha must be positive");
  std::sort(rem.begin(), rem.end());
  const int n = a.size();
  const int m = static_cast<int>(rem.size());
  if (r < 1 || r > m) throw InvalidInput("block size outside [1, |rem|]");
  const det_detail::RoundedPrefixes rounded =
      det_detail::build_rounded_prefixes(a, rem, r, alpha);
  const std::int64_t NG = rounded.grid;

  std::vector<int> best;
  double best_scaled = std::numeric_limits<double>::infinity();
  // Boundary k: rounded mass < 1 strictly before k and >= 1 at k. Column
  // k = n+1 catches sets whose rounded in-range mass never reaches 1.
  for (int k = 2; k <= n + 1; ++k) {
    DpInstance dp;
    dp.r = r;
    dp.require_c = NG;      // sum of column-k cells must reach the unit mark
    dp.limit_d = NG - 1;    // sum of column-(k-1) cells must stay below it
    dp.triples.resize(m);
    for (int ei = 0; ei < m; ++ei) {
      std::int64_t area = 0;  // sum_{i<k} cell(e, i), the objective piece
      for (int i = 1; i < k; ++i) area += rounded.cell[ei][i - 1];
      dp.triples[ei].w =
          double((k - 1) * NG) - double(r) * double(area);  // scaled weight
      dp.triples[ei].c = rounded.cell[ei][k - 1];
      dp.triples[ei].d = rounded.cell[ei][k - 2];
    }
    const DpSolution sol = dp_solve(dp);
    if (!sol.feasible) continue;
    if (sol.value < best_scaled - 1e-9) {
      best_scaled = sol.value;
      best.clear();
      for (int idx : sol.selection) best.push_back(rem[idx]);
    }
  }
  if (best.empty()) throw std::logic_error("fptas found no feasible boundary");
  std::sort(best.begin(), best.end());
  return best;
}

/// Greedy heuristic block solver: r passes, each adding the remaining item
/// whose prefix mass best fills the residual per-position target, ties to
/// the smallest identifier. No approximation guarantee; validity only.
inline std::vector<int> block_heuristic(const DsMatrix& a,
                                        std::vector<int> rem, int r) {
  std::sort(rem.begin(), rem.end());
  const int n = a.size();
  if (r < 1 || r > static_cast<int>(rem.size()))
    throw InvalidInput("block size outside [1, |rem|]");
  std::vector<double> target(n, 1.0);
  std::vector<bool> picked(rem.size(), false);
  std::vector<int> out;
  for (int pass = 0; pass < r; ++pass) {
    int best_index = -1;
    double best_score = std::numeric_limits<double>::infinity();
    for (std::size_t ei = 0; ei < rem.size(); ++ei) {
      if (picked[ei]) continue;
      double prefix = 0.0, score = 0.0;
      for (int i = 1; i <= n; ++i) {
        score += std::max(target[i - 1] - prefix, 0.0);
        prefix += a(rem[ei], i);
      }
      if (score < best_score - 1e-12) {
        best_score = score;
        best_index = static_cast<int>(ei);
      }
    }
    picked[best_index] = true;
    out.push_back(rem[best_index]);
    for (int i = 1; i <= n; ++i)
      target[i - 1] = std::max(target[i - 1] - a(rem[best_index], i), 0.0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct BlockSolver {
  enum class Kind { kExact, kFptas, kHeuristic };
  Kind kind = Kind::kExact;
  int r = 1;
  double alpha = 0.0;

  static BlockSolver exact(int r) { return {Kind::kExact, r, 0.0}; }
  static BlockSolver fptas(int r, double alpha) {
    if (alpha <= 0.0) throw InvalidInput("alpha must be positive");
    return {Kind::kFptas, r, alpha};
  }
  static BlockSolver heuristic(int r) { return {Kind::kHeuristic, r, 0.0}; }

  std::vector<int> solve(const DsMatrix& a, const std::vector<int>& rem) const {
    switch (kind) {
      case Kind::kExact:
        return block_exact(a, rem, r);
      case Kind::kFptas:
        return block_fptas(a, rem, r, alpha);
      case Kind::kHeuristic:
        return block_heuristic(a, rem, r);
    }
    throw InvalidInput("unknown block solver");
  }
};

struct DetRounding {
  Permutation pi;
  std::vector<std::vector<int>> blocks;  // solver outputs, in block order
};

/// Greedy block rounding. Each of the floor(n/r) blocks is chosen by the
/// solver among remaining items and placed in the next r positions in
/// descending item id; the < r leftover items follow in ascending id.
/// Any fixed within-block order keeps the cost guarantee; descending id
/// avoids systematically promoting small ids, which ascending order would
/// tie to the block boundary.
inline DetRounding round_deterministic_blocks(const DsMatrix& a,
                                              const BlockSolver& solver) {
  const int n = a.size();
  const int r = solver.r;
  if (r < 1 || r > n) throw InvalidInput("block size outside [1, n]");
  std::vector<int> rem(n);
  for (int i = 0; i < n; ++i) rem[i] = i + 1;
  std::vector<int> order;
  order.reserve(n);
  std::vector<std::vector<int>> blocks;
  for (int k = 0; k < n / r; ++k) {
    std::vector<int> block;
    try {
      block = solver.solve(a, rem);
    } catch (const DeskScaleError& e) {
      throw DeskScaleError("block " + std::to_string(k + 1) + ": " + e.what());
    }
    std::vector<int> placed(block);
    std::sort(placed.begin(), placed.end(), std::greater<int>());
    order.insert(order.end(), placed.begin(), placed.end());
    std::vector<int> next_rem;
    next_rem.reserve(rem.size() - block.size());
    for (int item : rem)
      if (!std::binary_search(block.begin(), block.end(), item))
        next_rem.push_back(item);
    rem = std::move(next_rem);
    blocks.push_back(std::move(block));
  }
  order.insert(order.end(), rem.begin(), rem.end());  // leftovers, ascending
  return DetRounding{Permutation(std::move(order)), std::move(blocks)};
}

inline Permutation round_deterministic(const DsMatrix& a,
                                       const BlockSolver& solver) {
  return round_deterministic_blocks(a, solver).pi;
}

}  // namespace gmssc
