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

#include "optim.hpp"

#include <algorithm>
#include <limits>

#include "qcap/parallel.hpp"

namespace qcap::detail {

ComplexMatrix log_floor(const HermitianEig& eig) {
  const std::size_t n = eig.values.size();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double l = std::log(std::max(eig.values[k], kLogFloor));
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vi = eig.vectors(i, k) * l;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vi * std::conj(eig.vectors(j, k));
    }
  }
  return out;
}

double entropy_nats(std::span<const double> values) {
  double h = 0.0;
  for (double l : values)
    if (l > 0.0) h -= l * std::log(l);
  return h;
}

ComplexMatrix dual_on_columns(const KrausChannel& ch, const ComplexMatrix& l, const ComplexMatrix& y) {
  const ComplexMatrix ly = l * y;
  ComplexMatrix out(ch.dim_in(), 1);
  for (std::size_t k = 0; k < ch.num_kraus(); ++k) {
    const ComplexMatrix& v = ch.kraus()[k];
    for (std::size_t a = 0; a < ch.dim_in(); ++a) {
      cplx acc = 0.0;
      for (std::size_t i = 0; i < ch.dim_out(); ++i) acc += std::conj(v(i, a)) * ly(i, k);
      out(a, 0) += acc;
    }
  }
  return out;
}

OutputTerm output_term(const KrausChannel& ch, const ComplexMatrix& w, bool with_grad) {
  OutputTerm t;
  const std::size_t n = ch.num_kraus();
  t.y = ComplexMatrix(ch.dim_out(), n);
  for (std::size_t k = 0; k < n; ++k) {
    const ComplexMatrix& v = ch.kraus()[k];
    for (std::size_t i = 0; i < ch.dim_out(); ++i) {
      cplx acc = 0.0;
      for (std::size_t a = 0; a < ch.dim_in(); ++a) acc += v(i, a) * w(a, 0);
      t.y(i, k) = acc;
    }
  }
  t.s = times_adjoint(t.y, t.y);
  const double tr = t.s.trace().real();
  if (tr <= 1e-300) {
    t.grad = ComplexMatrix(ch.dim_in(), 1);
    return t;
  }
  const auto eig = hermitian_eigendecompose(hermitian_part(t.s));
  t.h = entropy_nats(eig.values) + tr * std::log(tr);
  if (t.h < 0.0) t.h = 0.0;
  if (with_grad) {
    ComplexMatrix lg = log_floor(eig);
    for (std::size_t i = 0; i < lg.rows(); ++i) lg(i, i) -= std::log(tr);
    t.grad = dual_on_columns(ch, lg, t.y) * -1.0;
  }
  return t;
}

const KrausChannel& roof_channel(const KrausChannel& ch, const KrausChannel& env) {
  return env.dim_out() < ch.dim_out() ? env : ch;
}

ComplexMatrix orthonormalize_rows(const ComplexMatrix& u) { return polar_isometry(u.adjoint()).adjoint(); }

ComplexMatrix sqrt_factor(const ComplexMatrix& rho) {
  const auto eig = hermitian_eigendecompose(rho);
  const std::size_t r = std::max<std::size_t>(1, support_rank(eig.values));
  ComplexMatrix x(rho.rows(), r);
  for (std::size_t k = 0; k < r; ++k) {
    const double s = std::sqrt(std::max(eig.values[k], 0.0));
    for (std::size_t i = 0; i < rho.rows(); ++i) x(i, k) = eig.vectors(i, k) * s;
  }
  return x;
}

Ensemble ensemble_from_columns(const ComplexMatrix& w) {
  std::vector<double> weights;
  std::vector<ComplexMatrix> vecs;
  double total = 0.0;
  for (std::size_t i = 0; i < w.cols(); ++i) {
    const ComplexMatrix c = w.col(i);
    const double p = std::real(inner(c, c));
    if (p <= 1e-300) continue;
    weights.push_back(p);
    vecs.push_back(c);
    total += p;
  }
  for (auto& p : weights) p /= total;
  return Ensemble::from_vectors(weights, vecs);
}

namespace {

ComplexMatrix normalized(const ComplexMatrix& v) { return v * (1.0 / v.frobenius()); }

}  // namespace

SphereResult sphere_minimize(const KrausChannel& ch, const ComplexMatrix& b, ComplexMatrix psi0, int max_iters,
                             double grad_tol) {
  auto eval = [&](const ComplexMatrix& psi, ComplexMatrix* grad) {
    const OutputTerm t = output_term(ch, psi, grad != nullptr);
    const ComplexMatrix bpsi = b * psi;
    const double val = t.h + std::real(inner(psi, bpsi));
    if (grad) *grad = t.grad + bpsi;
    return val;
  };
  SphereResult res;
  res.psi = normalized(psi0);
  ComplexMatrix g;
  res.value = eval(res.psi, &g);
  double tau = 0.5;
  for (int it = 0; it < max_iters; ++it) {
    const cplx radial = inner(res.psi, g);
    const ComplexMatrix p = g - res.psi * cplx(radial.real(), 0.0);
    const double gn2 = std::pow(p.frobenius(), 2);
    res.grad_norm = std::sqrt(gn2);
    if (res.grad_norm < grad_tol) break;
    bool accepted = false;
    while (tau > 1e-14) {
      const ComplexMatrix cand = normalized(res.psi - p * tau);
      ComplexMatrix gc;
      const double v = eval(cand, &gc);
      if (v <= res.value - 1e-4 * tau * 2.0 * gn2) {
        const double gain = res.value - v;
        res.psi = cand;
        res.value = v;
        g = gc;
        accepted = true;
        tau = std::min(tau * 2.0, 1e3);
        if (gain < 1e-15) it = max_iters;
        break;
      }
      tau *= 0.5;
    }
    if (!accepted) break;
  }
  return res;
}

SphereResult sphere_minimize_multistart(const KrausChannel& ch, const ComplexMatrix& b,
                                        const std::vector<ComplexMatrix>& starts, std::size_t random_starts,
                                        random::Rng& rng, int max_iters, double grad_tol) {
  std::vector<ComplexMatrix> all = starts;
  for (std::size_t i = 0; i < random_starts; ++i) all.push_back(random::pure_vector(rng, ch.dim_in()));
  SphereResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (const auto& s : all) {
    SphereResult r = sphere_minimize(ch, b, s, max_iters, grad_tol);
    if (r.value < best.value) best = std::move(r);
  }
  return best;
}

namespace {

struct RoofEval {
  ComplexMatrix w;
  double value = 0.0;
  ComplexMatrix grad_u;  // r × m, Wirtinger gradient in U
};

RoofEval roof_eval(const KrausChannel& ch, const ComplexMatrix& x, const ComplexMatrix& u, bool with_grad) {
  RoofEval e;
  e.w = x * u;
  const std::size_t m = u.cols();
  if (with_grad) e.grad_u = ComplexMatrix(u.rows(), m);
  for (std::size_t i = 0; i < m; ++i) {
    const OutputTerm t = output_term(ch, e.w.col(i), with_grad);
    e.value += t.h;
    if (with_grad) e.grad_u.set_col(i, adjoint_times(x, t.grad));
  }
  return e;
}

}  // namespace

RoofResult roof_descend(const KrausChannel& ch, const ComplexMatrix& x, ComplexMatrix u0, int max_iters,
                        double obj_tol, double grad_tol) {
  RoofResult res;
  res.u = orthonormalize_rows(u0);
  RoofEval cur = roof_eval(ch, x, res.u, true);
  double tau = 0.5;
  int small_gain = 0;
  for (int it = 0; it < max_iters; ++it) {
    res.iterations = it;
    const ComplexMatrix& g = cur.grad_u;
    const ComplexMatrix p = g - hermitian_part(times_adjoint(g, res.u)) * res.u;
    const double gn2 = std::pow(p.frobenius(), 2);
    res.grad_norm = std::sqrt(gn2);
    if (res.grad_norm < grad_tol) break;
    bool accepted = false;
    while (tau > 1e-14) {
      const ComplexMatrix cand = orthonormalize_rows(res.u - p * tau);
      RoofEval ev = roof_eval(ch, x, cand, true);
      if (ev.value <= cur.value - 1e-4 * tau * 2.0 * gn2) {
        const double gain = cur.value - ev.value;
        res.u = cand;
        cur = std::move(ev);
        accepted = true;
        tau = std::min(tau * 2.0, 1e3);
        small_gain = gain < 1e-3 * obj_tol ? small_gain + 1 : 0;
        break;
      }
      tau *= 0.5;
    }
    if (!accepted || small_gain >= 5) break;
  }
  res.w = cur.w;
  res.value = cur.value;
  return res;
}

RoofResult roof_minimize(const KrausChannel& ch, const ComplexMatrix& x, std::size_t m, int restarts,
                         std::uint64_t seed, int max_iters, double obj_tol, double grad_tol,
                         const ComplexMatrix* warm) {
  const std::size_t r = x.cols();
  m = std::max(m, r);
  auto start = [&](std::size_t i) {
    if (i == 0) {
      if (warm) return *warm;
      ComplexMatrix u(r, m);
      for (std::size_t k = 0; k < r; ++k) u(k, k) = 1.0;
      return u;
    }
    random::Rng rng(seed, i);
    return random::haar_isometry(rng, m, r).adjoint();
  };
  return best_of_restarts<RoofResult>(
      static_cast<std::size_t>(std::max(1, restarts)),
      [&](std::size_t i) { return roof_descend(ch, x, start(i), max_iters, obj_tol, grad_tol); },
      [](const RoofResult& a, const RoofResult& b) { return a.value < b.value; });
}

DensityMatrix state_from_log(const ComplexMatrix& l) {
  const auto eig = hermitian_eigendecompose(hermitian_part(l));
  const double top = eig.values.front();
  const std::size_t n = eig.values.size();
  std::vector<double> e(n);
  double z = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    e[k] = std::exp(eig.values[k] - top);
    z += e[k];
  }
  ComplexMatrix rho(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double wk = e[k] / z;
    if (wk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vi = eig.vectors(i, k) * wk;
      for (std::size_t j = 0; j < n; ++j) rho(i, j) += vi * std::conj(eig.vectors(j, k));
    }
  }
  return DensityMatrix::unchecked(std::move(rho));
}

MirrorResult mirror_ascent(const MirrorObjective& obj, const ComplexMatrix& log_start, int max_iters,
                           double obj_tol, const std::function<bool(const MirrorResult&)>& done) {
  MirrorResult res;
  res.log_state = hermitian_part(log_start);
  res.state = state_from_log(res.log_state);
  ComplexMatrix grad;
  res.value = obj.eval(res.state, grad);
  double eta = 1.0;
  int small_gain = 0;
  for (int it = 0; it < max_iters; ++it) {
    res.iterations = it + 1;
    bool accepted = false;
    while (eta > 1e-12) {
      ComplexMatrix cand_log = res.log_state + hermitian_part(grad) * eta;
      // Keep the exponent bounded; only differences of eigenvalues matter.
      const double shift = cand_log.trace().real() / static_cast<double>(cand_log.rows());
      for (std::size_t i = 0; i < cand_log.rows(); ++i) cand_log(i, i) -= shift;
      const DensityMatrix cand = state_from_log(cand_log);
      ComplexMatrix cand_grad;
      const double v = obj.eval(cand, cand_grad);
      if (v >= res.value - 1e-15) {
        const double gain = v - res.value;
        res.log_state = std::move(cand_log);
        res.state = cand;
        res.value = v;
        grad = std::move(cand_grad);
        accepted = true;
        eta = std::min(eta * 1.5, 1e4);
        small_gain = gain < 1e-3 * obj_tol ? small_gain + 1 : 0;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) {
      res.stalled = true;
      break;
    }
    if (done && done(res)) break;
    if (small_gain >= 20) {
      res.stalled = true;
      if (!done) break;
      if (small_gain >= 200) break;
    }
  }
  return res;
}

}  // namespace qcap::detail

namespace qcap::detail {

MirrorResult factor_ascent(const MirrorObjective& obj, ComplexMatrix w, int max_iters, double obj_tol,
                           double grad_tol) {
  auto state_of = [](const ComplexMatrix& x) {
    ComplexMatrix rho = times_adjoint(x, x);
    return DensityMatrix::unchecked(hermitian_part(rho * (1.0 / rho.trace().real())));
  };
  MirrorResult res;
  w = w * (1.0 / w.frobenius());
  res.state = state_of(w);
  ComplexMatrix g;
  res.value = obj.eval(res.state, g);
  double tau = 0.5;
  int small_gain = 0;
  for (int it = 0; it < max_iters; ++it) {
    res.iterations = it + 1;
    const ComplexMatrix eg = hermitian_part(g) * w * 2.0;
    const ComplexMatrix p = eg - w * real_inner(w, eg);
    const double gn2 = std::pow(p.frobenius(), 2);
    if (std::sqrt(gn2) < grad_tol) break;
    bool accepted = false;
    while (tau > 1e-14) {
      ComplexMatrix cand = w + p * tau;
      cand = cand * (1.0 / cand.frobenius());
      const DensityMatrix cs = state_of(cand);
      ComplexMatrix cg;
      const double v = obj.eval(cs, cg);
      if (v >= res.value + 1e-4 * tau * gn2) {
        small_gain = v - res.value < 1e-3 * obj_tol ? small_gain + 1 : 0;
        w = std::move(cand);
        res.state = cs;
        res.value = v;
        g = std::move(cg);
        accepted = true;
        tau = std::min(2.0 * tau, 1e3);
        break;
      }
      tau *= 0.5;
    }
    if (!accepted || small_gain >= 5) {
      res.stalled = !accepted;
      break;
    }
  }
  res.log_state = w;
  return res;
}

}  // namespace qcap::detail
