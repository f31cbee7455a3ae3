// Copyright 2026 The qcap Authors
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

#include "simplex_lp.hpp"

#include <cmath>
#include <limits>

namespace oracle {

namespace {

struct Tableau {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  std::vector<int> basis;
};

// Runs the revised simplex for cost vector `c` starting from a feasible basis.
// Columns with index ≥ `allowed` never enter.
bool run_simplex(Tableau& t, const Eigen::VectorXd& c, int allowed) {
  const int m = static_cast<int>(t.a.rows());
  int degenerate_run = 0;
  for (int iter = 0; iter < 100000; ++iter) {
    Eigen::MatrixXd bm(m, m);
    Eigen::VectorXd cb(m);
    for (int i = 0; i < m; ++i) {
      bm.col(i) = t.a.col(t.basis[i]);
      cb(i) = c(t.basis[i]);
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(bm);
    const Eigen::VectorXd xb = lu.solve(t.b);
    const Eigen::VectorXd y = lu.transpose().solve(cb);
    const Eigen::VectorXd reduced = c.head(allowed) - t.a.leftCols(allowed).transpose() * y;

    // Dantzig pricing, switching to Bland's rule on long degenerate runs.
    int enter = -1;
    double best = -1e-11;
    for (int j = 0; j < allowed; ++j) {
      if (reduced(j) < best) {
        enter = j;
        if (degenerate_run > 50) break;
        best = reduced(j);
      }
    }
    if (enter < 0) return true;

    const Eigen::VectorXd dir = lu.solve(t.a.col(enter));
    int leave = -1;
    double ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (dir(i) > 1e-12) {
        const double r = std::max(xb(i), 0.0) / dir(i);
        if (r < ratio - 1e-15 || (std::abs(r - ratio) <= 1e-15 && leave >= 0 && t.basis[i] < t.basis[leave])) {
          ratio = r;
          leave = i;
        }
      }
    }
    if (leave < 0) return false;  // unbounded
    degenerate_run = ratio < 1e-14 ? degenerate_run + 1 : 0;
    t.basis[leave] = enter;
  }
  return false;
}

}  // namespace

LpResult solve_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  Tableau t;
  t.a.resize(m, n + m);
  t.b = b;
  t.a.leftCols(n) = a;
  t.a.rightCols(m).setIdentity();
  for (int i = 0; i < m; ++i) {
    if (t.b(i) < 0) {
      t.b(i) = -t.b(i);
      t.a.row(i).head(n) *= -1.0;
    }
    t.basis.push_back(n + i);
  }

  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n + m);
  phase1.tail(m).setOnes();
  run_simplex(t, phase1, n);

  auto basic_solution = [&]() {
    Eigen::MatrixXd bm(m, m);
    for (int i = 0; i < m; ++i) bm.col(i) = t.a.col(t.basis[i]);
    return Eigen::VectorXd(bm.partialPivLu().solve(t.b));
  };
  Eigen::VectorXd xb = basic_solution();
  double infeas = 0.0;
  for (int i = 0; i < m; ++i)
    if (t.basis[i] >= n) infeas += std::abs(xb(i));
  LpResult res;
  if (infeas > 1e-9) return res;

  // Pivot remaining zero-level artificials out of the basis.
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) continue;
    Eigen::MatrixXd bm(m, m);
    for (int k = 0; k < m; ++k) bm.col(k) = t.a.col(t.basis[k]);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(bm);
    for (int j = 0; j < n; ++j) {
      bool in_basis = false;
      for (int k = 0; k < m; ++k) in_basis |= t.basis[k] == j;
      if (in_basis) continue;
      if (std::abs(lu.solve(t.a.col(j))(i)) > 1e-9) {
        t.basis[i] = j;
        break;
      }
    }
  }

  Eigen::VectorXd cost = Eigen::VectorXd::Zero(n + m);
  cost.head(n) = c;
  if (!run_simplex(t, cost, n)) return res;
  xb = basic_solution();
  res.feasible = true;
  res.x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i)
    if (t.basis[i] < n) res.x(t.basis[i]) = std::max(xb(i), 0.0);
  res.value = c.dot(res.x);
  return res;
}

}  // namespace oracle
