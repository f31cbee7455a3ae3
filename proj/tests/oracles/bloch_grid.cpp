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

#include "bloch_grid.hpp"

#include <cmath>
#include <numbers>

#include "simplex_lp.hpp"

namespace oracle {

Mat to_eigen(const qcap::ComplexMatrix& m) {
  Mat out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

Kraus to_eigen(const qcap::KrausChannel& ch) {
  Kraus k;
  for (const auto& v : ch.kraus()) k.push_back(to_eigen(v));
  return k;
}

Mat apply_channel(const Kraus& k, const Mat& rho) {
  Mat out = Mat::Zero(k.front().rows(), k.front().rows());
  for (const auto& v : k) out += v * rho * v.adjoint();
  return out;
}

Mat apply_env(const Kraus& k, const Mat& rho) {
  const auto n = static_cast<Eigen::Index>(k.size());
  Mat out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = (k[i] * rho * k[j].adjoint()).trace();
  return out;
}

double entropy(const Mat& rho) {
  const Eigen::SelfAdjointEigenSolver<Mat> es(rho, Eigen::EigenvaluesOnly);
  double h = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l > 1e-15) h -= l * std::log2(l);
  }
  return h;
}

Mat bloch_state(const Eigen::Vector3d& r) {
  Mat rho(2, 2);
  rho(0, 0) = 0.5 * (1.0 + r.z());
  rho(1, 1) = 0.5 * (1.0 - r.z());
  rho(0, 1) = std::complex<double>(0.5 * r.x(), -0.5 * r.y());
  rho(1, 0) = std::conj(rho(0, 1));
  return rho;
}

std::vector<Eigen::Vector3d> sphere_grid(double step) {
  std::vector<Eigen::Vector3d> pts;
  pts.emplace_back(0.0, 0.0, 1.0);
  pts.emplace_back(0.0, 0.0, -1.0);
  const int nt = static_cast<int>(std::ceil(std::numbers::pi / step));
  const int np = static_cast<int>(std::ceil(2.0 * std::numbers::pi / step));
  for (int a = 1; a < nt; ++a) {
    const double t = std::numbers::pi * a / nt;
    for (int b = 0; b < np; ++b) {
      const double p = 2.0 * std::numbers::pi * b / np;
      pts.emplace_back(std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t));
    }
  }
  return pts;
}

namespace {

struct Alphabet {
  std::vector<Mat> outputs;
  std::vector<double> out_entropy;
  std::vector<double> cost;
};

Alphabet make_alphabet(const Kraus& k, double step, const Mat* cost) {
  Alphabet al;
  for (const auto& r : sphere_grid(step)) {
    const Mat psi = bloch_state(r);
    al.outputs.push_back(apply_channel(k, psi));
    al.out_entropy.push_back(entropy(al.outputs.back()));
    al.cost.push_back(cost ? (*cost * psi).trace().real() : 0.0);
  }
  return al;
}

Mat log2_pd(const Mat& m) {
  const Eigen::SelfAdjointEigenSolver<Mat> es(m);
  Eigen::VectorXd l = es.eigenvalues();
  for (Eigen::Index i = 0; i < l.size(); ++i) l(i) = std::log2(std::max(l(i), 1e-300));
  return es.eigenvectors() * l.asDiagonal() * es.eigenvectors().adjoint();
}

// Blahut–Arimoto for max_p [χ(p) − λ⟨cost⟩]. Returns χ and ⟨cost⟩ at the end.
std::pair<double, double> blahut_arimoto(const Alphabet& al, double lambda) {
  const std::size_t n = al.outputs.size();
  const auto d = al.outputs.front().rows();
  std::vector<double> p(n, 1.0 / static_cast<double>(n));
  std::vector<double> div(n);
  double chi = 0.0;
  double avg_cost = 0.0;
  for (int iter = 0; iter < 5000; ++iter) {
    Mat avg = Mat::Zero(d, d);
    for (std::size_t x = 0; x < n; ++x)
      if (p[x] > 0.0) avg += p[x] * al.outputs[x];
    const Mat lg = log2_pd(avg);
    chi = 0.0;
    avg_cost = 0.0;
    double upper = -1e300;
    for (std::size_t x = 0; x < n; ++x) {
      div[x] = -al.out_entropy[x] - al.outputs[x].cwiseProduct(lg.transpose()).sum().real();
      chi += p[x] * div[x];
      avg_cost += p[x] * al.cost[x];
      upper = std::max(upper, div[x] - lambda * al.cost[x]);
    }
    const double lagr = chi - lambda * avg_cost;
    if (upper - lagr < 1e-7) break;
    double z = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      p[x] *= std::exp2(div[x] - lambda * al.cost[x] - upper);
      z += p[x];
    }
    for (auto& v : p) {
      v /= z;
      if (v < 1e-300) v = 0.0;
    }
  }
  return {chi, avg_cost};
}

}  // namespace

double holevo_capacity(const Kraus& k, double step, const Mat* cost, double h) {
  const Alphabet al = make_alphabet(k, step, cost);
  auto [chi, c] = blahut_arimoto(al, 0.0);
  if (cost == nullptr || c <= h) return chi;
  double lo = 0.0;
  double hi = 1.0;
  while (blahut_arimoto(al, hi).second > h) hi *= 2.0;
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (blahut_arimoto(al, mid).second > h) lo = mid; else hi = mid;
  }
  return blahut_arimoto(al, hi).first;
}

double convex_roof(const Kraus& k, const Eigen::Vector3d& r, double step) {
  const auto pts = sphere_grid(step);
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd a(4, n);
  Eigen::VectorXd c(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    a(0, j) = 1.0;
    a.block<3, 1>(1, j) = pts[j];
    c(j) = entropy(apply_channel(k, bloch_state(pts[j])));
  }
  Eigen::VectorXd b(4);
  b << 1.0, r.x(), r.y(), r.z();
  const LpResult res = solve_lp(a, b, c);
  return res.feasible ? res.value : std::nan("");
}

double chi(const Kraus& k, const Eigen::Vector3d& r, double step) {
  return entropy(apply_channel(k, bloch_state(r))) - convex_roof(k, r, step);
}

namespace {

double mutual_info(const Kraus& k, const Eigen::Vector3d& r) {
  const Mat rho = bloch_state(r);
  return entropy(rho) + entropy(apply_channel(k, rho)) - entropy(apply_env(k, rho));
}

}  // namespace

namespace {

// Grid search on points p(u) with u in the unit ball of R^dim, then
// pattern-search refinement.
template <int dim, class F>
double ball_search(F&& f) {
  using Vec = Eigen::Matrix<double, dim, 1>;
  double best = -1e300;
  Vec arg = Vec::Zero();
  const double coarse = 0.05;
  const int n = static_cast<int>(std::round(2.0 / coarse));
  const int cells = dim == 3 ? (n + 1) * (n + 1) * (n + 1) : (n + 1) * (n + 1);
  for (int c = 0; c < cells; ++c) {
    Vec u;
    int rest = c;
    for (int a = 0; a < dim; ++a) {
      u(a) = -1.0 + coarse * (rest % (n + 1));
      rest /= n + 1;
    }
    if (u.norm() > 1.0) continue;
    const double v = f(u);
    if (v > best) {
      best = v;
      arg = u;
    }
  }
  const int moves = dim == 3 ? 125 : 25;
  for (double s = coarse / 2.0; s > 1e-7; s /= 2.0) {
    bool moved = true;
    while (moved) {
      moved = false;
      const Vec centre = arg;
      for (int mv = 0; mv < moves; ++mv) {
        Vec u = centre;
        int rest = mv;
        for (int a = 0; a < dim; ++a) {
          u(a) += s * (rest % 5 - 2);
          rest /= 5;
        }
        if (u.norm() > 1.0) u /= u.norm();
        const double v = f(u);
        if (v > best + 1e-15) {
          best = v;
          arg = u;
          moved = true;
        }
      }
    }
  }
  return best;
}

}  // namespace

double ea_capacity(const Kraus& k, const Mat* cost, double h) {
  Eigen::Vector3d unconstrained_arg = Eigen::Vector3d::Zero();
  double unconstrained = -1e300;
  ball_search<3>([&](const Eigen::Vector3d& r) {
    const double v = mutual_info(k, r);
    if (v > unconstrained) {
      unconstrained = v;
      unconstrained_arg = r;
    }
    return v;
  });
  if (cost == nullptr) return unconstrained;
  // Tr(cost ρ) = h0 + n·r. The objective is concave, so an infeasible free
  // maximizer means the optimum lies on the plane n·r = h − h0.
  const double h0 = 0.5 * cost->trace().real();
  const Eigen::Vector3d n(((*cost)(0, 1) + (*cost)(1, 0)).real() / 2.0,
                          -((*cost)(0, 1) - (*cost)(1, 0)).imag() / 2.0,
                          ((*cost)(0, 0) - (*cost)(1, 1)).real() / 2.0);
  if (h0 + n.dot(unconstrained_arg) <= h + 1e-12) return unconstrained;
  const Eigen::Vector3d nh = n.normalized();
  const Eigen::Vector3d centre = nh * ((h - h0) / n.norm());
  const double radius = std::sqrt(std::max(0.0, 1.0 - centre.squaredNorm()));
  Eigen::Vector3d e1 = nh.unitOrthogonal();
  const Eigen::Vector3d e2 = nh.cross(e1);
  return ball_search<2>([&](const Eigen::Vector2d& u) {
    return mutual_info(k, centre + radius * (u(0) * e1 + u(1) * e2));
  });
}

double max_delta_axial(const Kraus& k, double ball_step, double roof_step) {
  double best = 0.0;
  for (double x = 0.0; x <= 0.95 + 1e-12; x += ball_step)
    for (double z = -0.95; z <= 0.95 + 1e-12; z += ball_step) {
      const Eigen::Vector3d r(x, 0.0, z);
      if (r.norm() > 0.95) continue;
      const Mat rho = bloch_state(r);
      const double delta = entropy(rho) - entropy(apply_env(k, rho)) + convex_roof(k, r, roof_step);
      best = std::max(best, delta);
    }
  return best;
}

}  // namespace oracle
