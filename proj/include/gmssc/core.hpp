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
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gmssc/errors.hpp"

namespace gmssc {

// Items and positions are 1-indexed throughout, matching the external file
// formats. All types below are immutable values after construction and safe
// to share across threads.

/// A ranking of n items: order()[p-1] is the item placed at position p.
class Permutation {
 public:
  explicit Permutation(std::vector<int> order) : order_(std::move(order)) {
    const int n = static_cast<int>(order_.size());
    if (n == 0) throw InvalidInput("permutation must not be empty");
    pos_.assign(n, 0);
    for (int p = 1; p <= n; ++p) {
      const int item = order_[p - 1];
      if (item < 1 || item > n)
        throw InvalidInput("permutation entry " + std::to_string(item) +
                           " outside {1.." + std::to_string(n) + "}");
      if (pos_[item - 1] != 0)
        throw InvalidInput("item " + std::to_string(item) +
                           " appears twice in permutation");
      pos_[item - 1] = p;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i + 1;
    return Permutation(std::move(order));
  }

  int size() const { return static_cast<int>(order_.size()); }
  int item_at(int position) const { return order_[position - 1]; }
  int position_of(int item) const { return pos_[item - 1]; }
  const std::vector<int>& order() const { return order_; }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.order_ == b.order_;
  }

 private:
  std::vector<int> order_;
  std::vector<int> pos_;  // inverse map, item -> position
};

/// An item subset with a covering requirement: the round is served once
/// `demand` of its items have appeared in the ranking.
struct Request {
  std::vector<int> items;  // sorted, distinct
  int demand = 1;

  Request(std::vector<int> items_in, int demand_in)
      : items(std::move(items_in)), demand(demand_in) {
    std::sort(items.begin(), items.end());
    if (items.empty()) throw InvalidInput("request has no items");
    if (std::adjacent_find(items.begin(), items.end()) != items.end())
      throw InvalidInput("request contains a duplicate item");
    if (items.front() < 1)
      throw InvalidInput("request item " + std::to_string(items.front()) +
                         " is not a positive identifier");
    if (demand < 1 || demand > static_cast<int>(items.size()))
      throw InvalidInput("demand " + std::to_string(demand) +
                         " outside [1, " + std::to_string(items.size()) + "]");
  }

  int size() const { return static_cast<int>(items.size()); }

  void check_universe(int n) const {
    if (items.back() > n)
      throw InvalidInput("request references item " +
                         std::to_string(items.back()) + " outside {1.." +
                         std::to_string(n) + "}");
  }

  friend bool operator==(const Request& a, const Request& b) {
    return a.demand == b.demand && a.items == b.items;
  }
};

/// Dense n-by-n real matrix indexed (item e, position j), both 1-based.
class Matrix {
 public:
  explicit Matrix(int n, double fill = 0.0) : n_(n), v_(std::size_t(n) * n, fill) {
    if (n < 1) throw InvalidInput("matrix dimension must be positive");
  }

  int size() const { return n_; }
  double operator()(int e, int j) const { return v_[idx(e, j)]; }
  double& operator()(int e, int j) { return v_[idx(e, j)]; }
  const std::vector<double>& values() const { return v_; }
  std::vector<double>& values() { return v_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.n_ == b.n_ && a.v_ == b.v_;
  }

 private:
  std::size_t idx(int e, int j) const { return std::size_t(e - 1) * n_ + (j - 1); }
  int n_;
  std::vector<double> v_;
};

inline double frobenius_norm(const Matrix& m) {
  double s = 0.0;
  for (double x : m.values()) s += x * x;
  return std::sqrt(s);
}

/// Frobenius inner product, treating matrices as flat vectors.
inline double dot(const Matrix& a, const Matrix& b) {
  if (a.size() != b.size()) throw InvalidInput("matrix dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i)
    s += a.values()[i] * b.values()[i];
  return s;
}

/// A doubly stochastic matrix: nonnegative with unit row and column sums.
/// Feasibility is only required up to `tolerance` because projection output
/// is inexact; every consumer in this library accepts matrices within
/// tolerance.
class DsMatrix {
 public:
  explicit DsMatrix(Matrix m, double tolerance = 1e-9)
      : m_(std::move(m)), tol_(tolerance) {
    if (tol_ < 0) throw InvalidInput("tolerance must be nonnegative");
    validate();
  }

  static DsMatrix uniform(int n) {
    Matrix m(n, 1.0 / n);
    return DsMatrix(std::move(m), 0.0);
  }

  int size() const { return m_.size(); }
  double tolerance() const { return tol_; }
  double operator()(int e, int j) const { return m_(e, j); }
  const Matrix& matrix() const { return m_; }

  bool is_integral(double eps = 1e-9) const {
    for (double x : m_.values())
      if (std::min(std::abs(x), std::abs(x - 1.0)) > eps) return false;
    return true;
  }

 private:
  void validate() const {
    const int n = m_.size();
    // Summing n doubles keeps one-ulp errors even for exact inputs, so the
    // declared tolerance is always read on top of that rounding floor.
    const double slack = tol_ + 16.0 * n * std::numeric_limits<double>::epsilon();
    for (double x : m_.values()) {
      if (!std::isfinite(x)) throw InvalidInput("matrix entry is not finite");
      if (x < -slack || x > 1.0 + slack)
        throw InvalidInput("matrix entry " + std::to_string(x) +
                           " outside [0,1] beyond tolerance");
    }
    for (int e = 1; e <= n; ++e) {
      double row = 0.0;
      for (int j = 1; j <= n; ++j) row += m_(e, j);
      if (std::abs(row - 1.0) > slack)
        throw InvalidInput("row " + std::to_string(e) + " sums to " +
                           std::to_string(row));
    }
    for (int j = 1; j <= n; ++j) {
      double col = 0.0;
      for (int e = 1; e <= n; ++e) col += m_(e, j);
      if (std::abs(col - 1.0) > slack)
        throw InvalidInput("column " + std::to_string(j) + " sums to " +
                           std::to_string(col));
    }
  }

  Matrix m_;
  double tol_;
};

/// A request sequence over the universe {1..n}.
struct Instance {
  int n = 0;
  std::vector<Request> requests;

  Instance(int n_in, std::vector<Request> requests_in)
      : n(n_in), requests(std::move(requests_in)) {
    if (n < 1) throw InvalidInput("instance needs n >= 1");
    for (std::size_t i = 0; i < requests.size(); ++i) {
      try {
        requests[i].check_universe(n);
      } catch (const InvalidInput& e) {
        throw InvalidInput("request " + std::to_string(i + 1) + ": " + e.what());
      }
    }
  }

  int rounds() const { return static_cast<int>(requests.size()); }
};

/// The position by which `r.demand` of the request's items have appeared:
/// the demand-th smallest position among r's items under pi.
inline int access_cost(const Permutation& pi, const Request& r) {
  r.check_universe(pi.size());
  std::vector<int> positions;
  positions.reserve(r.items.size());
  for (int item : r.items) positions.push_back(pi.position_of(item));
  std::nth_element(positions.begin(), positions.begin() + (r.demand - 1),
                   positions.end());
  return positions[r.demand - 1];
}

/// Access cost written against a matrix:
///   sum_i min{1, (K - sum_{j<i} sum_{e in R} A_ej)_+}.
/// For the integral matrix of a permutation this equals access_cost exactly;
/// it also evaluates on fractional input, where it is the piecewise-linear
/// relaxation used by the rounding analyses.
inline double access_cost_matrix_form(const DsMatrix& a, const Request& r) {
  r.check_universe(a.size());
  const int n = a.size();
  double prefix = 0.0;  // mass of R's items in positions < i
  double total = 0.0;
  for (int i = 1; i <= n; ++i) {
    total += std::min(1.0, std::max(0.0, double(r.demand) - prefix));
    for (int e : r.items) prefix += a(e, i);
  }
  return total;
}

/// Integral matrix of a permutation: entry (e, j) = 1 iff pi places item e
/// at position j.
inline DsMatrix perm_to_matrix(const Permutation& pi) {
  const int n = pi.size();
  Matrix m(n, 0.0);
  for (int j = 1; j <= n; ++j) m(pi.item_at(j), j) = 1.0;
  return DsMatrix(std::move(m), 0.0);
}

/// Inverse of perm_to_matrix for integral matrices.
inline Permutation matrix_to_perm(const DsMatrix& a) {
  const int n = a.size();
  std::vector<int> order(n, 0);
  for (int j = 1; j <= n; ++j) {
    int item = 0;
    for (int e = 1; e <= n; ++e) {
      if (a(e, j) > 0.5) {
        item = e;
        break;
      }
    }
    if (item == 0) throw InvalidInput("matrix is not integral");
    order[j - 1] = item;
  }
  return Permutation(std::move(order));
}

}  // namespace gmssc
