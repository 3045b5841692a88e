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
#include <cstddef>
#include <limits>
#include <vector>

#include "gmssc/errors.hpp"

namespace gmssc {

// Dense two-phase primal simplex for desk-scale linear programs:
//
//   minimize c.x   subject to   rows (<=, >=, =),  x >= 0.
//
// Double precision with 1e-9 pivot safeguards. Dantzig pricing with a
// switch to Bland's rule after an iteration budget, which rules out
// cycling. Intended for problems with at most a few hundred rows/columns;
// callers cap their own enumeration sizes.

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

enum class Rel { kLe, kGe, kEq };

struct LpRow {
  std::vector<double> coeffs;
  Rel rel = Rel::kLe;
  double rhs = 0.0;
};

struct LpResult {
  LpStatus status = LpStatus::kIterationLimit;
  double objective = 0.0;
  std::vector<double> x;
};

namespace lp_detail {

class Tableau {
 public:
  Tableau(const std::vector<double>& cost, const std::vector<LpRow>& rows)
      : num_vars_(cost.size()), m_(rows.size()) {
    for (const LpRow& r : rows)
      if (r.coeffs.size() != num_vars_)
        throw InvalidInput("LP row width does not match objective");

    // Normalize to nonnegative rhs, then count extra columns.
    std::vector<Rel> rel(m_);
    std::vector<double> sign(m_, 1.0);
    std::size_t num_art = 0;
    num_slacks_ = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      rel[i] = rows[i].rel;
      if (rows[i].rhs < 0.0) {
        sign[i] = -1.0;
        if (rel[i] == Rel::kLe)
          rel[i] = Rel::kGe;
        else if (rel[i] == Rel::kGe)
          rel[i] = Rel::kLe;
      }
      if (rel[i] != Rel::kEq) ++num_slacks_;
      if (rel[i] != Rel::kLe) ++num_art;
    }

    // Column layout: structural | slack/surplus | artificial | rhs.
    cols_ = num_vars_ + num_slacks_;
    total_cols_ = cols_ + num_art;
    t_.assign(m_, std::vector<double>(total_cols_ + 1, 0.0));
    basis_.assign(m_, -1);
    std::size_t slack_at = num_vars_;
    std::size_t art_at = cols_;
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < num_vars_; ++j)
        t_[i][j] = sign[i] * rows[i].coeffs[j];
      t_[i][total_cols_] = sign[i] * rows[i].rhs;
      if (rel[i] == Rel::kLe) {
        t_[i][slack_at] = 1.0;
        basis_[i] = static_cast<int>(slack_at++);
      } else if (rel[i] == Rel::kGe) {
        t_[i][slack_at++] = -1.0;
      }
      if (rel[i] != Rel::kLe) {
        t_[i][art_at] = 1.0;
        basis_[i] = static_cast<int>(art_at++);
      }
    }
    cost_ = cost;
  }

  LpResult solve() {
    // Phase 1: minimize the sum of artificials.
    if (total_cols_ > cols_) {
      std::vector<double> phase1(total_cols_, 0.0);
      for (std::size_t j = cols_; j < total_cols_; ++j) phase1[j] = 1.0;
      set_objective(phase1);
      const LpStatus s = iterate(total_cols_);
      if (s != LpStatus::kOptimal) return {s, 0.0, {}};
      if (objective_value() > 1e-7) return {LpStatus::kInfeasible, 0.0, {}};
      for (std::size_t i = 0; i < m_; ++i) {
        if (static_cast<std::size_t>(basis_[i]) < cols_) continue;
        // Pivot leftover artificials out on any usable structural column;
        // an all-zero row is redundant and stays inert.
        for (std::size_t j = 0; j < cols_; ++j) {
          if (std::abs(t_[i][j]) > 1e-7) {
            pivot(i, j);
            break;
          }
        }
      }
    }

    // Phase 2 over structural + slack columns only.
    std::vector<double> full_cost(total_cols_, 0.0);
    std::copy(cost_.begin(), cost_.end(), full_cost.begin());
    set_objective(full_cost);
    const LpStatus s = iterate(cols_);
    if (s != LpStatus::kOptimal) return {s, 0.0, {}};

    std::vector<double> x(num_vars_, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      if (static_cast<std::size_t>(basis_[i]) < num_vars_)
        x[basis_[i]] = rhs(i);
    double obj = 0.0;
    for (std::size_t j = 0; j < num_vars_; ++j) obj += cost_[j] * x[j];
    return {LpStatus::kOptimal, obj, std::move(x)};
  }

 private:
  double& rhs(std::size_t i) { return t_[i][total_cols_]; }
  double rhs(std::size_t i) const { return t_[i][total_cols_]; }
  double objective_value() const { return -z_[total_cols_]; }

  // Rebuilds the reduced-cost row for the current basis.
  void set_objective(const std::vector<double>& c) {
    z_.assign(total_cols_ + 1, 0.0);
    for (std::size_t j = 0; j < total_cols_; ++j) z_[j] = c[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = c[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= total_cols_; ++j) z_[j] -= cb * t_[i][j];
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const double p = t_[row][col];
    for (std::size_t j = 0; j <= total_cols_; ++j) t_[row][j] /= p;
    t_[row][col] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double f = t_[i][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= total_cols_; ++j) t_[i][j] -= f * t_[row][j];
      t_[i][col] = 0.0;
    }
    const double fz = z_[col];
    if (fz != 0.0) {
      for (std::size_t j = 0; j <= total_cols_; ++j) z_[j] -= fz * t_[row][j];
      z_[col] = 0.0;
    }
    basis_[row] = static_cast<int>(col);
  }

  LpStatus iterate(std::size_t entering_limit) {
    const std::size_t bland_after = 50 * (m_ + total_cols_ + 10);
    const std::size_t max_iters = 400 * (m_ + total_cols_ + 10);
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
      const bool bland = iter >= bland_after;
      std::size_t col = total_cols_;
      double best = -1e-9;
      for (std::size_t j = 0; j < entering_limit; ++j) {
        if (z_[j] < best) {
          best = z_[j];
          col = j;
          if (bland) break;
        }
      }
      if (col == total_cols_) return LpStatus::kOptimal;

      std::size_t row = m_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = t_[i][col];
        if (a <= 1e-11) continue;
        const double ratio = std::max(rhs(i), 0.0) / a;
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && row < m_ && basis_[i] < basis_[row])) {
          best_ratio = ratio;
          row = i;
        }
      }
      if (row == m_) return LpStatus::kUnbounded;
      pivot(row, col);
    }
    return LpStatus::kIterationLimit;
  }

  std::size_t num_vars_, m_, num_slacks_ = 0, cols_ = 0, total_cols_ = 0;
  std::vector<std::vector<double>> t_;
  std::vector<double> z_;
  std::vector<double> cost_;
  std::vector<int> basis_;
};

}  // namespace lp_detail

/// Solves min c.x subject to `rows`, x >= 0.
inline LpResult solve_lp(const std::vector<double>& cost,
                         const std::vector<LpRow>& rows) {
  lp_detail::Tableau tab(cost, rows);
  return tab.solve();
}

}  // namespace gmssc
