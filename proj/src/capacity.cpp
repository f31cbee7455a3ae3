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

#include "qcap/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "optim.hpp"
#include "qcap/entropy.hpp"
#include "qcap/parallel.hpp"

namespace qcap {

using detail::kLn2;

void OptimizerOptions::validate(std::size_t dim_in) const {
  if (restarts <= 0) throw InvalidOptions("restarts must be positive");
  if (!(obj_tol > 0.0) || !(grad_tol > 0.0)) throw InvalidOptions("tolerances must be positive");
  if (max_iters <= 0) throw InvalidOptions("max_iters must be positive");
  if (max_ensemble_size != 0 && max_ensemble_size < dim_in) {
    throw InvalidOptions("max_ensemble_size must be at least the input dimension");
  }
}

std::size_t OptimizerOptions::ensemble_cap(std::size_t dim_in) const {
  return max_ensemble_size == 0 ? dim_in * dim_in : max_ensemble_size;
}

void ConstraintSpec::validate(std::size_t dim_in) const {
  if (!H.square() || H.rows() != dim_in) throw DimensionMismatch("constraint operator must act on the input space");
  if (hermiticity_defect(H) > kHermitianTol) throw InvalidState("constraint operator is not Hermitian");
  const auto eig = hermitian_eigendecompose(H);
  if (eig.values.back() < -kHermitianTol) throw InvalidState("constraint operator is not positive semidefinite");
  if (!(h > 0.0)) throw InvalidState("constraint level must be positive");
  if (eig.values.back() > h) throw Infeasible("no state satisfies Tr H rho <= h: lambda_min(H) exceeds h");
}

namespace {

KrausChannel environment(const KrausChannel& ch) { return complement(minimal_kraus(ch)); }

double lambda_max(const ComplexMatrix& m) { return hermitian_eigendecompose(hermitian_part(m)).values.front(); }

// ---------------------------------------------------------------- roof

struct RoofSummary {
  detail::RoofResult roof;
  ComplexMatrix x;
};

RoofSummary solve_roof(const KrausChannel& roof_ch, const DensityMatrix& rho, const OptimizerOptions& opts,
                       std::size_t dim_in) {
  RoofSummary s;
  s.x = detail::sqrt_factor(rho.matrix());
  const std::size_t r = s.x.cols();
  const std::size_t m = std::clamp(r * r, r, std::max(r, opts.ensemble_cap(dim_in)));
  if (r == 1) {
    s.roof.w = s.x;
    s.roof.u = ComplexMatrix::identity(1);
    s.roof.value = detail::output_term(roof_ch, s.x, false).h;
    return s;
  }
  s.roof = detail::roof_minimize(roof_ch, s.x, m, opts.restarts, opts.seed, opts.max_iters, opts.obj_tol * kLn2,
                                 opts.grad_tol);
  return s;
}

// Lower bound on the roof from the supporting operator K = herm(ρ⁺ Σ w_i g_i†):
// Ĥ(ρ) ≥ Tr Kρ + min_ψ [H(Φψ) − <ψ|K|ψ>] (nats).
double roof_lower_bound(const KrausChannel& roof_ch, const DensityMatrix& rho, const ComplexMatrix& w,
                        const OptimizerOptions& opts) {
  const auto eig = hermitian_eigendecompose(rho.matrix());
  const ComplexMatrix inv = matrix_function_on_support(eig, SpectralFunction::power(-1.0));
  ComplexMatrix b(rho.dim(), rho.dim());
  std::vector<ComplexMatrix> starts;
  for (std::size_t i = 0; i < w.cols(); ++i) {
    const ComplexMatrix wi = w.col(i);
    const detail::OutputTerm t = detail::output_term(roof_ch, wi);
    b += times_adjoint(wi, t.grad);
    if (std::real(inner(wi, wi)) > 1e-6) starts.push_back(wi);
  }
  ComplexMatrix k = hermitian_part(inv * b);
  // Push the kernel far down so the minimizing ψ stays on the support.
  const ComplexMatrix ker = kernel_projector(eig);
  k -= ker * (1e3 * (1.0 + k.max_abs()));
  random::Rng rng(opts.seed, 0x5eedULL);
  const auto best = detail::sphere_minimize_multistart(roof_ch, k * -1.0, starts, 4, rng, 500, opts.grad_tol);
  return real_inner(k, rho.matrix()) + best.value;
}

CapacityResult roof_result(const KrausChannel& ch, const DensityMatrix& rho, const OptimizerOptions& opts,
                           bool with_bound) {
  if (rho.dim() != ch.dim_in()) throw DimensionMismatch("state dimension does not match channel input");
  opts.validate(ch.dim_in());
  const KrausChannel env = environment(ch);
  const KrausChannel& roof_ch = detail::roof_channel(ch, env);
  const RoofSummary s = solve_roof(roof_ch, rho, opts, ch.dim_in());
  CapacityResult res;
  res.ensemble = detail::ensemble_from_columns(s.roof.w);
  res.state = rho;
  double value = 0.0;
  for (const auto& it : res.ensemble->items()) value += it.weight * entropy(apply(ch, it.state));
  res.value = value;
  res.iterations = s.roof.iterations;
  res.converged = s.roof.grad_norm <= std::max(opts.grad_tol, 1e-4) || s.x.cols() == 1;
  if (with_bound && s.x.cols() > 1) {
    const double lower = roof_lower_bound(roof_ch, rho, s.roof.w, opts) / kLn2;
    res.certificate_gap = std::max(0.0, value - lower);
  }
  return res;
}

// ---------------------------------------------------------------- Holevo

struct HolevoEval {
  double value = 0.0;  // χ − λ Tr(H ρ̄), nats
  double chi = 0.0;
  ComplexMatrix grad;
  ComplexMatrix log_avg;
};

HolevoEval holevo_eval(const KrausChannel& ch, const ComplexMatrix& w, const ComplexMatrix* cost, double lambda,
                       bool with_grad) {
  HolevoEval e;
  const std::size_t m = w.cols();
  std::vector<detail::OutputTerm> terms;
  terms.reserve(m);
  ComplexMatrix avg_out(ch.dim_out(), ch.dim_out());
  double inner_sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    terms.push_back(detail::output_term(ch, w.col(i), with_grad));
    avg_out += terms.back().s;
    inner_sum += terms.back().h;
  }
  const auto eig = hermitian_eigendecompose(hermitian_part(avg_out));
  e.chi = detail::entropy_nats(eig.values) - inner_sum;
  e.value = e.chi;
  const ComplexMatrix rho = times_adjoint(w, w);
  if (cost) e.value -= lambda * real_inner(*cost, rho);
  e.log_avg = detail::log_floor(eig);
  if (with_grad) {
    e.grad = ComplexMatrix(w.rows(), m);
    for (std::size_t i = 0; i < m; ++i) {
      ComplexMatrix g = detail::dual_on_columns(ch, e.log_avg, terms[i].y) * -1.0 - terms[i].grad;
      if (cost) g -= (*cost * w.col(i)) * lambda;
      e.grad.set_col(i, g);
    }
  }
  return e;
}

ComplexMatrix unit_frobenius(const ComplexMatrix& w) { return w * (1.0 / w.frobenius()); }

struct HolevoRun {
  ComplexMatrix w;
  HolevoEval eval;
  double gap = std::numeric_limits<double>::infinity();  // nats
  int iterations = 0;
};

void holevo_ascend(const KrausChannel& ch, HolevoRun& run, const ComplexMatrix* cost, double lambda, int max_iters,
                   double obj_tol, double grad_tol) {
  double tau = 0.5;
  int small_gain = 0;
  for (int it = 0; it < max_iters; ++it) {
    ++run.iterations;
    const ComplexMatrix& g = run.eval.grad;
    const double radial = real_inner(run.w, g);
    const ComplexMatrix p = g - run.w * radial;
    const double gn2 = std::pow(p.frobenius(), 2);
    if (std::sqrt(gn2) < grad_tol) break;
    bool accepted = false;
    while (tau > 1e-14) {
      const ComplexMatrix cand = unit_frobenius(run.w + p * tau);
      HolevoEval ev = holevo_eval(ch, cand, cost, lambda, true);
      if (ev.value >= run.eval.value + 1e-4 * tau * 2.0 * gn2) {
        const double gain = ev.value - run.eval.value;
        run.w = cand;
        run.eval = std::move(ev);
        accepted = true;
        tau = std::min(tau * 2.0, 1e3);
        small_gain = gain < 1e-3 * obj_tol ? small_gain + 1 : 0;
        break;
      }
      tau *= 0.5;
    }
    if (!accepted || small_gain >= 5) break;
  }
}

// max_ψ [D(Φψ‖Φρ̄) − λ<ψ|H|ψ>] in nats, with the maximizer.
detail::SphereResult best_exchange(const KrausChannel& ch, const HolevoRun& run, const ComplexMatrix* cost,
                                   double lambda, random::Rng& rng, double grad_tol) {
  ComplexMatrix b = dual_apply(ch, run.eval.log_avg);
  if (cost) b += *cost * lambda;
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t i = 0; i < run.w.cols(); ++i) order.emplace_back(-std::pow(run.w.col(i).frobenius(), 2), i);
  std::sort(order.begin(), order.end());
  std::vector<ComplexMatrix> starts;
  for (std::size_t k = 0; k < std::min<std::size_t>(order.size(), 6); ++k) {
    if (-order[k].first > 1e-12) starts.push_back(run.w.col(order[k].second));
  }
  const auto eig = hermitian_eigendecompose(hermitian_part(b));
  starts.push_back(eig.vectors.col(eig.values.size() - 1));
  if (eig.values.size() > 1) starts.push_back(eig.vectors.col(eig.values.size() - 2));
  auto best = detail::sphere_minimize_multistart(ch, b, starts, 3, rng, 2000, grad_tol);
  best.value = -best.value;
  return best;
}

void insert_state(const KrausChannel& ch, HolevoRun& run, const ComplexMatrix& psi, const ComplexMatrix* cost,
                  double lambda) {
  std::size_t j = 0;
  double wmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < run.w.cols(); ++i) {
    const double wi = std::pow(run.w.col(i).frobenius(), 2);
    if (wi < wmin) {
      wmin = wi;
      j = i;
    }
  }
  ComplexMatrix rest = run.w;
  rest.set_col(j, ComplexMatrix(run.w.rows(), 1));
  if (rest.frobenius() <= 0.0) rest = run.w;
  rest = unit_frobenius(rest);
  HolevoRun best = run;
  bool improved = false;
  for (double t : {0.5, 0.3, 0.15, 0.05, 0.01, 1e-3}) {
    ComplexMatrix cand = rest * std::sqrt(1.0 - t);
    cand.set_col(j, psi * std::sqrt(t));
    HolevoEval ev = holevo_eval(ch, cand, cost, lambda, true);
    if (ev.value > best.eval.value) {
      best.w = cand;
      best.eval = std::move(ev);
      improved = true;
    }
  }
  if (!improved) {
    ComplexMatrix cand = rest * std::sqrt(1.0 - 1e-3);
    cand.set_col(j, psi * std::sqrt(1e-3));
    best.w = cand;
    best.eval = holevo_eval(ch, cand, cost, lambda, true);
  }
  run.w = std::move(best.w);
  run.eval = std::move(best.eval);
}

// Blahut–Arimoto on the column weights with the column directions held fixed.
// Weights that should vanish decay geometrically here, unlike under the
// ascent in W.
void reweight(const KrausChannel& ch, HolevoRun& run, const ComplexMatrix* cost, double lambda) {
  const std::size_t m = run.w.cols();
  std::vector<double> p(m);
  std::vector<ComplexMatrix> dirs(m);
  std::vector<ComplexMatrix> outs(m);
  std::vector<double> score0(m);  // −h(Φψ) − λ<ψ|H|ψ>
  for (std::size_t i = 0; i < m; ++i) {
    const ComplexMatrix col = run.w.col(i);
    const double n = col.frobenius();
    if (n <= 1e-150) continue;
    p[i] = n * n;
    dirs[i] = col * (1.0 / n);
    outs[i] = hermitian_part(apply(ch, times_adjoint(dirs[i], dirs[i])));
    score0[i] = -detail::entropy_nats(hermitian_eigendecompose(outs[i]).values);
    if (cost) score0[i] -= lambda * real_inner(*cost, times_adjoint(dirs[i], dirs[i]));
  }
  for (int it = 0; it < 200; ++it) {
    ComplexMatrix avg(ch.dim_out(), ch.dim_out());
    for (std::size_t i = 0; i < m; ++i)
      if (p[i] > 0.0) avg += outs[i] * p[i];
    const ComplexMatrix log_avg = detail::log_floor(hermitian_eigendecompose(hermitian_part(avg)));
    double z = 0.0;
    double top = -std::numeric_limits<double>::infinity();
    std::vector<double> score(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      if (p[i] <= 0.0) continue;
      score[i] = score0[i] - real_inner(outs[i], log_avg);
      top = std::max(top, score[i]);
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (p[i] <= 0.0) continue;
      p[i] *= std::exp(score[i] - top);
      z += p[i];
    }
    for (double& x : p) x /= z;
  }
  ComplexMatrix cand(run.w.rows(), m);
  for (std::size_t i = 0; i < m; ++i)
    if (p[i] > 0.0) cand.set_col(i, dirs[i] * std::sqrt(p[i]));
  HolevoEval ev = holevo_eval(ch, cand, cost, lambda, true);
  if (ev.value > run.eval.value) {
    run.w = std::move(cand);
    run.eval = std::move(ev);
  }
}

HolevoRun holevo_run(const KrausChannel& ch, ComplexMatrix w0, const ComplexMatrix* cost, double lambda,
                     const OptimizerOptions& opts, std::uint64_t stream) {
  random::Rng rng(opts.seed ^ 0x486f6c65766fULL, stream);
  HolevoRun run;
  run.w = unit_frobenius(w0);
  run.eval = holevo_eval(ch, run.w, cost, lambda, true);
  const double gap_tol = opts.obj_tol * kLn2;
  for (int round = 0; round < 40 && run.iterations < opts.max_iters; ++round) {
    holevo_ascend(ch, run, cost, lambda, opts.max_iters - run.iterations, gap_tol, opts.grad_tol);
    reweight(ch, run, cost, lambda);
    const auto ex = best_exchange(ch, run, cost, lambda, rng, opts.grad_tol);
    run.gap = std::max(0.0, ex.value - run.eval.value);
    if (run.gap <= gap_tol) break;
    insert_state(ch, run, ex.psi, cost, lambda);
  }
  return run;
}

HolevoRun holevo_multistart(const KrausChannel& ch, const ComplexMatrix* cost, double lambda,
                            const OptimizerOptions& opts, int restarts, const ComplexMatrix* warm) {
  const std::size_t d = ch.dim_in();
  const std::size_t m = opts.ensemble_cap(d);
  return best_of_restarts<HolevoRun>(
      static_cast<std::size_t>(restarts),
      [&](std::size_t i) {
        if (i == 0 && warm) return holevo_run(ch, *warm, cost, lambda, opts, i);
        random::Rng rng(opts.seed, 0x1000 + i);
        return holevo_run(ch, random::ginibre(rng, d, m), cost, lambda, opts, i);
      },
      [](const HolevoRun& a, const HolevoRun& b) { return a.eval.value > b.eval.value + 1e-13; });
}

CapacityResult holevo_result(const KrausChannel& ch, const HolevoRun& run, double gap_tol_bits) {
  CapacityResult res;
  res.ensemble = detail::ensemble_from_columns(run.w);
  res.state = res.ensemble->average();
  res.value = holevo_quantity(*res.ensemble, ch);
  res.certificate_gap = run.gap / kLn2;
  res.converged = res.certificate_gap <= gap_tol_bits;
  res.iterations = run.iterations;
  return res;
}

// ---------------------------------------------------------------- mirror ascent objectives

struct EntropyParts {
  double value = 0.0;
  ComplexMatrix log_m;
};

EntropyParts entropy_parts(const ComplexMatrix& m) {
  const auto eig = hermitian_eigendecompose(hermitian_part(m));
  return {detail::entropy_nats(eig.values), detail::log_floor(eig)};
}

// I(ρ,Φ) − λ Tr Hρ in nats and its gradient.
double mutual_info_eval(const KrausChannel& ch, const KrausChannel& env, const DensityMatrix& rho,
                        const ComplexMatrix* cost, double lambda, ComplexMatrix& grad) {
  const EntropyParts a = entropy_parts(rho.matrix());
  const EntropyParts b = entropy_parts(apply(ch, rho.matrix()));
  const EntropyParts e = entropy_parts(apply(env, rho.matrix()));
  grad = a.log_m * -1.0 - dual_apply(ch, b.log_m) + dual_apply(env, e.log_m);
  double v = a.value + b.value - e.value;
  if (cost) {
    v -= lambda * real_inner(*cost, rho.matrix());
    grad -= *cost * lambda;
  }
  return v;
}

// Concavity bound max_σ f(σ) ≤ f(ρ) + λ_max(G) − Tr Gρ at ε-mixtures of ρ.
double concave_upper_bound(const KrausChannel& ch, const KrausChannel& env, const DensityMatrix& rho,
                           const ComplexMatrix* cost, double lambda) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t d = rho.dim();
  for (double eps : {0.0, 1e-12, 1e-11, 1e-10, 1e-9, 1e-8, 1e-7, 1e-6}) {
    const DensityMatrix r = DensityMatrix::unchecked(rho.matrix() * (1.0 - eps) +
                                                     ComplexMatrix::identity(d) * (eps / static_cast<double>(d)));
    ComplexMatrix g;
    const double f = mutual_info_eval(ch, env, r, cost, lambda, g);
    const double ub = f + lambda_max(g) - real_inner(g, r.matrix());
    best = std::min(best, ub);
  }
  return best;
}

struct EaRun {
  detail::MirrorResult mirror;
  double upper = 0.0;  // nats, bound on max_ρ [I − λ Tr Hρ]
};

EaRun ea_run(const KrausChannel& ch, const KrausChannel& env, const ComplexMatrix* cost, double lambda,
             const ComplexMatrix& log_start, const OptimizerOptions& opts) {
  detail::MirrorObjective obj{[&](const DensityMatrix& rho, ComplexMatrix& g) {
    return mutual_info_eval(ch, env, rho, cost, lambda, g);
  }};
  const double tol = opts.obj_tol * kLn2;
  EaRun run;
  run.upper = std::numeric_limits<double>::infinity();
  auto done = [&](const detail::MirrorResult& r) {
    if (r.iterations % 10 != 0) return false;
    run.upper = std::min(run.upper, concave_upper_bound(ch, env, r.state, cost, lambda));
    return run.upper - r.value <= tol;
  };
  run.mirror = detail::mirror_ascent(obj, log_start, opts.max_iters, tol, done);
  run.upper = std::min(run.upper, concave_upper_bound(ch, env, run.mirror.state, cost, lambda));
  return run;
}

double bits(double nats) { return nats / kLn2; }

}  // namespace

// ---------------------------------------------------------------- public API

CapacityResult output_entropy_roof(const KrausChannel& ch, const DensityMatrix& rho, const OptimizerOptions& opts) {
  return roof_result(ch, rho, opts, true);
}

CapacityResult chi_function(const KrausChannel& ch, const DensityMatrix& rho, const OptimizerOptions& opts) {
  CapacityResult res = roof_result(ch, rho, opts, true);
  res.value = std::max(0.0, entropy(apply(ch, rho)) - res.value);
  return res;
}

CapacityResult holevo_capacity(const KrausChannel& ch, const OptimizerOptions& opts) {
  opts.validate(ch.dim_in());
  const HolevoRun run = holevo_multistart(ch, nullptr, 0.0, opts, opts.restarts, nullptr);
  return holevo_result(ch, run, 100.0 * opts.obj_tol);
}

ComplexMatrix ea_gradient(const KrausChannel& ch, const DensityMatrix& rho) {
  const KrausChannel env = environment(ch);
  ComplexMatrix g;
  mutual_info_eval(ch, env, rho, nullptr, 0.0, g);
  return g * (1.0 / kLn2);
}

CapacityResult ea_capacity(const KrausChannel& ch, const OptimizerOptions& opts) {
  opts.validate(ch.dim_in());
  const KrausChannel env = environment(ch);
  const EaRun run = ea_run(ch, env, nullptr, 0.0, ComplexMatrix(ch.dim_in(), ch.dim_in()), opts);
  CapacityResult res;
  res.state = run.mirror.state;
  res.value = mutual_information(res.state, ch, env);
  res.certificate_gap = std::max(0.0, bits(run.upper) - res.value);
  res.converged = res.certificate_gap <= 100.0 * opts.obj_tol;
  res.iterations = run.mirror.iterations;
  return res;
}

CapacityResult q1(const KrausChannel& ch, const OptimizerOptions& opts) {
  opts.validate(ch.dim_in());
  const KrausChannel env = environment(ch);
  const std::size_t d = ch.dim_in();
  detail::MirrorObjective obj{[&](const DensityMatrix& rho, ComplexMatrix& g) {
    const EntropyParts b = entropy_parts(apply(ch, rho.matrix()));
    const EntropyParts e = entropy_parts(apply(env, rho.matrix()));
    g = dual_apply(env, e.log_m) - dual_apply(ch, b.log_m);
    return b.value - e.value;
  }};
  const auto run = best_of_restarts<detail::MirrorResult>(
      static_cast<std::size_t>(2 * opts.restarts),
      [&](std::size_t i) {
        ComplexMatrix w = ComplexMatrix::identity(d);
        if (i > 0) {
          random::Rng rng(opts.seed, 0x2000 + i);
          w = random::ginibre(rng, d, d);
        }
        auto r = detail::factor_ascent(obj, w, opts.max_iters, opts.obj_tol * kLn2, opts.grad_tol);
        return r;
      },
      [](const detail::MirrorResult& a, const detail::MirrorResult& b) { return a.value > b.value + 1e-13; });
  CapacityResult res;
  res.state = run.state;
  res.value = coherent_information(run.state, ch, env);
  res.iterations = run.iterations;
  if (res.value < 0.0) {
    // Pure inputs give I_c = 0.
    ComplexMatrix e0(d, 1);
    e0(0, 0) = 1.0;
    res.state = DensityMatrix::pure(e0);
    res.value = 0.0;
  }
  ComplexMatrix g;
  obj.eval(res.state, g);
  res.certificate_gap = std::max(0.0, bits(lambda_max(g) - real_inner(g, res.state.matrix())));
  res.converged = true;
  return res;
}

CapacityResult min_output_entropy(const KrausChannel& ch, const OptimizerOptions& opts) {
  opts.validate(ch.dim_in());
  const std::size_t d = ch.dim_in();
  const ComplexMatrix zero(d, d);
  const auto best = best_of_restarts<detail::SphereResult>(
      static_cast<std::size_t>(opts.restarts),
      [&](std::size_t i) {
        ComplexMatrix psi(d, 1);
        if (i < d) {
          psi(i, 0) = 1.0;
        } else {
          random::Rng rng(opts.seed, 0x3000 + i);
          psi = random::pure_vector(rng, d);
        }
        return detail::sphere_minimize(ch, zero, psi, opts.max_iters, opts.grad_tol);
      },
      [](const detail::SphereResult& a, const detail::SphereResult& b) { return a.value < b.value - 1e-13; });
  CapacityResult res;
  res.state = DensityMatrix::pure(best.psi);
  res.value = entropy(apply(ch, res.state));
  res.certificate_gap = bits(best.grad_norm);
  res.converged = best.grad_norm <= std::max(opts.grad_tol, 1e-4);
  return res;
}

CapacityResult delta(const KrausChannel& ch, const DensityMatrix& rho, const OptimizerOptions& opts) {
  CapacityResult res = roof_result(ch, rho, opts, false);
  const KrausChannel env = environment(ch);
  res.value = std::max(0.0, entropy(rho) - entropy(apply(env, rho)) + res.value);
  return res;
}

std::pair<double, double> delta_both_routes(const KrausChannel& ch, const DensityMatrix& rho,
                                            const OptimizerOptions& opts) {
  opts.validate(ch.dim_in());
  const KrausChannel env = environment(ch);
  const double roof_env = bits(solve_roof(env, rho, opts, ch.dim_in()).roof.value);
  const double roof_ch = bits(solve_roof(ch, rho, opts, ch.dim_in()).roof.value);
  const double via_env = entropy(rho) - (entropy(apply(env, rho)) - roof_env);
  const double via_ch = mutual_information(rho, ch, env) - (entropy(apply(ch, rho)) - roof_ch);
  return {via_env, via_ch};
}

CapacityResult max_delta(const KrausChannel& ch, const OptimizerOptions& opts) {
  opts.validate(ch.dim_in());
  const KrausChannel env = environment(ch);
  const KrausChannel& roof_ch = detail::roof_channel(ch, env);
  const std::size_t d = ch.dim_in();
  // Larger inputs get a cheaper inner roof; the end point is re-evaluated in full.
  const bool small = d <= 4;
  const std::size_t m = std::clamp(small ? d * d : 2 * d, d, opts.ensemble_cap(d));
  const int outer_restarts = small ? std::max(2, opts.restarts / 4) : 2;
  const int inner_iters = std::min(opts.max_iters, small ? 300 : 100);
  const int inner_restarts = small ? 3 : 1;
  const int outer_iters = std::min(opts.max_iters, small ? 400 : 40);

  struct OuterRun {
    detail::MirrorResult mirror;
    double full;  // Δ at the end point with a fresh roof
  };
  OptimizerOptions check_opts = opts;
  check_opts.restarts = small ? std::max(4, opts.restarts / 4) : 2;
  auto run_outer = [&](std::size_t idx) {
    ComplexMatrix warm_w;
    detail::MirrorObjective obj{[&](const DensityMatrix& rho, ComplexMatrix& g) {
      const auto eig = hermitian_eigendecompose(rho.matrix());
      ComplexMatrix x(d, d);
      ComplexMatrix xinv(d, d);
      for (std::size_t k = 0; k < d; ++k) {
        const double s = std::sqrt(std::max(eig.values[k], 1e-300));
        for (std::size_t i = 0; i < d; ++i) {
          x(i, k) = eig.vectors(i, k) * s;
          xinv(k, i) = std::conj(eig.vectors(i, k)) / s;
        }
      }
      detail::RoofResult roof;
      if (warm_w.empty()) {
        roof = detail::roof_minimize(roof_ch, x, m, 2, opts.seed + idx, inner_iters, opts.obj_tol * kLn2,
                                     opts.grad_tol);
      } else {
        const ComplexMatrix u0 = detail::orthonormalize_rows(xinv * warm_w);
        roof = detail::roof_minimize(roof_ch, x, m, inner_restarts, opts.seed + idx, inner_iters, opts.obj_tol * kLn2,
                                     opts.grad_tol, &u0);
      }
      warm_w = roof.w;
      ComplexMatrix b(d, d);
      for (std::size_t i = 0; i < roof.w.cols(); ++i) {
        const ComplexMatrix wi = roof.w.col(i);
        b += times_adjoint(wi, detail::output_term(roof_ch, wi).grad);
      }
      ComplexMatrix rho_inv(d, d);
      for (std::size_t k = 0; k < d; ++k) {
        const double inv = 1.0 / std::max(eig.values[k], 1e-300);
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < d; ++j)
            rho_inv(i, j) += eig.vectors(i, k) * inv * std::conj(eig.vectors(j, k));
      }
      const EntropyParts a = entropy_parts(rho.matrix());
      const EntropyParts e = entropy_parts(apply(env, rho.matrix()));
      g = a.log_m * -1.0 + dual_apply(env, e.log_m) + hermitian_part(rho_inv * b);
      return a.value - e.value + roof.value;
    }};
    ComplexMatrix l(d, d);
    if (idx > 0) {
      random::Rng rng(opts.seed, 0x4000 + idx);
      l = random::hermitian(rng, d) * 2.0;
    }
    OuterRun o{detail::mirror_ascent(obj, l, outer_iters, opts.obj_tol * kLn2), 0.0};
    o.full = delta(ch, o.mirror.state, check_opts).value;
    return o;
  };
  const OuterRun best = best_of_restarts<OuterRun>(
      static_cast<std::size_t>(outer_restarts), run_outer,
      [](const OuterRun& a, const OuterRun& b) { return a.full > b.full + 1e-13; });

  CapacityResult res = delta(ch, best.mirror.state, opts);
  res.iterations = best.mirror.iterations;
  return res;
}

// ---------------------------------------------------------------- constraints

GibbsResult gibbs_state(const ConstraintSpec& c) {
  const std::size_t d = c.H.rows();
  c.validate(d);
  const auto eig = hermitian_eigendecompose(c.H);
  const double spread = eig.values.front() - eig.values.back();
  if (spread <= kHermitianTol * std::max(1.0, std::abs(eig.values.front()))) {
    throw DegenerateH("constraint operator is proportional to the identity");
  }
  GibbsResult g;
  const double mean = c.H.trace().real() / static_cast<double>(d);
  if (c.h >= mean) {
    g.state = DensityMatrix::maximally_mixed(d);
    g.constraint_slack = true;
    return g;
  }
  auto gibbs = [&](double lambda, double* energy) {
    std::vector<double> p(d);
    double z = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      p[k] = std::exp(-lambda * (eig.values[k] - eig.values.back()));
      z += p[k];
    }
    double e = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      p[k] /= z;
      e += p[k] * eig.values[k];
    }
    if (energy) *energy = e;
    return p;
  };
  double lo = 0.0;
  double hi = 1.0;
  double e_hi = 0.0;
  gibbs(hi, &e_hi);
  while (e_hi > c.h && hi < 1e300) {
    lo = hi;
    hi *= 2.0;
    gibbs(hi, &e_hi);
  }
  for (int it = 0; it < 400 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    double e = 0.0;
    gibbs(mid, &e);
    if (e > c.h) lo = mid; else hi = mid;
  }
  double e_lo = 0.0;
  const auto p_lo = gibbs(lo, &e_lo);
  const auto p_hi = gibbs(hi, &e_hi);
  g.lambda = std::abs(e_lo - c.h) < std::abs(e_hi - c.h) ? lo : hi;
  const auto& p = std::abs(e_lo - c.h) < std::abs(e_hi - c.h) ? p_lo : p_hi;
  ComplexMatrix rho(d, d);
  for (std::size_t k = 0; k < d; ++k)
    rho += ComplexMatrix::outer(eig.vectors.col(k)) * p[k];
  g.state = DensityMatrix::unchecked(std::move(rho));
  return g;
}

namespace {

// Channel restricted to the ground space of H, for h = λ_min(H).
std::optional<ComplexMatrix> ground_space_if_tight(const ConstraintSpec& c) {
  const auto eig = hermitian_eigendecompose(c.H);
  const double lmin = eig.values.back();
  if (c.h - lmin > 1e-12 * std::max(1.0, std::abs(eig.values.front()))) return std::nullopt;
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < eig.values.size(); ++k)
    if (eig.values[k] - lmin <= 1e-12 * std::max(1.0, std::abs(eig.values.front()))) idx.push_back(k);
  ComplexMatrix iso(c.H.rows(), idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) iso.set_col(j, eig.vectors.col(idx[j]));
  return iso;
}

double energy_of(const ConstraintSpec& c, const DensityMatrix& rho) { return real_inner(c.H, rho.matrix()); }

Ensemble lift_ensemble(const Ensemble& e, const ComplexMatrix& iso) {
  std::vector<double> w;
  std::vector<ComplexMatrix> v;
  for (const auto& it : e.items()) {
    w.push_back(it.weight);
    v.push_back(iso * *it.vector);
  }
  return Ensemble::from_vectors(w, v);
}

Ensemble union_ensemble(const Ensemble& a, const Ensemble& b, double t) {
  std::vector<EnsembleItem> items;
  for (const auto& it : a.items()) items.push_back({it.weight * (1.0 - t), it.state, it.vector});
  for (const auto& it : b.items()) items.push_back({it.weight * t, it.state, it.vector});
  return Ensemble(std::move(items));
}

}  // namespace

ConstrainedResult constrained_ea(const KrausChannel& ch, const ConstraintSpec& c, const OptimizerOptions& opts) {
  opts.validate(ch.dim_in());
  c.validate(ch.dim_in());
  ConstrainedResult out;
  if (const auto iso = ground_space_if_tight(c)) {
    const KrausChannel sub = restrict_input(ch, *iso);
    CapacityResult r = ea_capacity(sub, opts);
    r.state = DensityMatrix::unchecked(*iso * r.state.matrix() * iso->adjoint());
    out.result = r;
    out.active = true;
    out.multiplier = std::numeric_limits<double>::infinity();
    out.energy = energy_of(c, r.state);
    return out;
  }
  const KrausChannel env = environment(ch);
  const std::size_t d = ch.dim_in();
  EaRun base = ea_run(ch, env, nullptr, 0.0, ComplexMatrix(d, d), opts);
  if (energy_of(c, base.mirror.state) <= c.h + 1e-9) {
    out.result.state = base.mirror.state;
    out.result.value = mutual_information(base.mirror.state, ch, env);
    out.result.certificate_gap = std::max(0.0, bits(base.upper) - out.result.value);
    out.result.converged = out.result.certificate_gap <= 100.0 * opts.obj_tol;
    out.result.iterations = base.mirror.iterations;
    out.energy = energy_of(c, base.mirror.state);
    return out;
  }
  out.active = true;
  EaRun lo_run = base;
  double lo = 0.0;
  double hi = 1.0;
  EaRun hi_run = ea_run(ch, env, &c.H, hi, base.mirror.log_state, opts);
  while (energy_of(c, hi_run.mirror.state) > c.h) {
    lo = hi;
    lo_run = hi_run;
    hi *= 2.0;
    hi_run = ea_run(ch, env, &c.H, hi, hi_run.mirror.log_state, opts);
  }
  for (int it = 0; it < 60; ++it) {
    const double e_lo = energy_of(c, lo_run.mirror.state);
    const double e_hi = energy_of(c, hi_run.mirror.state);
    if (e_lo - e_hi <= 1e-7) break;
    const double mid = 0.5 * (lo + hi);
    EaRun mid_run = ea_run(ch, env, &c.H, mid, hi_run.mirror.log_state, opts);
    const double e_mid = energy_of(c, mid_run.mirror.state);
    if (std::abs(e_mid - c.h) <= 1e-9) {
      lo_run = hi_run = mid_run;
      lo = hi = mid;
      break;
    }
    if (e_mid > c.h) {
      lo = mid;
      lo_run = std::move(mid_run);
    } else {
      hi = mid;
      hi_run = std::move(mid_run);
    }
  }
  const double e_lo = energy_of(c, lo_run.mirror.state);
  const double e_hi = energy_of(c, hi_run.mirror.state);
  const double t = e_lo - e_hi > 0.0 ? std::clamp((e_lo - c.h) / (e_lo - e_hi), 0.0, 1.0) : 1.0;
  const DensityMatrix mixed = DensityMatrix::unchecked(lo_run.mirror.state.matrix() * (1.0 - t) +
                                                       hi_run.mirror.state.matrix() * t);
  out.result.state = mixed;
  out.result.value = mutual_information(mixed, ch, env);
  const double ub_lo = bits(lo_run.upper) + lo * c.h / kLn2;
  const double ub_hi = bits(hi_run.upper) + hi * c.h / kLn2;
  out.result.certificate_gap = std::max(0.0, std::min(ub_lo, ub_hi) - out.result.value);
  out.result.converged = out.result.certificate_gap <= 100.0 * opts.obj_tol + 1e-6;
  out.result.iterations = lo_run.mirror.iterations + hi_run.mirror.iterations;
  out.multiplier = bits(t < 0.5 ? lo : hi);
  out.energy = energy_of(c, mixed);
  return out;
}

ConstrainedResult constrained_holevo(const KrausChannel& ch, const ConstraintSpec& c,
                                     const OptimizerOptions& opts) {
  opts.validate(ch.dim_in());
  c.validate(ch.dim_in());
  ConstrainedResult out;
  if (const auto iso = ground_space_if_tight(c)) {
    const KrausChannel sub = restrict_input(ch, *iso);
    OptimizerOptions sub_opts = opts;
    sub_opts.max_ensemble_size = 0;
    CapacityResult r = holevo_capacity(sub, sub_opts);
    r.ensemble = lift_ensemble(*r.ensemble, *iso);
    r.state = r.ensemble->average();
    out.result = r;
    out.active = true;
    out.multiplier = std::numeric_limits<double>::infinity();
    out.energy = energy_of(c, r.state);
    return out;
  }
  const double gap_tol = 100.0 * opts.obj_tol;
  HolevoRun base = holevo_multistart(ch, nullptr, 0.0, opts, opts.restarts, nullptr);
  CapacityResult base_res = holevo_result(ch, base, gap_tol);
  if (energy_of(c, base_res.state) <= c.h + 1e-9) {
    out.result = base_res;
    out.energy = energy_of(c, base_res.state);
    return out;
  }
  out.active = true;
  const int warm_restarts = std::max(1, opts.restarts / 4);
  auto solve = [&](double lambda, const HolevoRun& warm) {
    return holevo_multistart(ch, &c.H, lambda, opts, warm_restarts, &warm.w);
  };
  auto energy_run = [&](const HolevoRun& r) { return real_inner(c.H, times_adjoint(r.w, r.w)); };
  HolevoRun lo_run = base;
  lo_run.eval = holevo_eval(ch, base.w, &c.H, 0.0, true);
  double lo = 0.0;
  double hi = 1.0;
  HolevoRun hi_run = solve(hi, base);
  while (energy_run(hi_run) > c.h) {
    lo = hi;
    lo_run = hi_run;
    hi *= 2.0;
    hi_run = solve(hi, hi_run);
  }
  for (int it = 0; it < 50; ++it) {
    if (energy_run(lo_run) - energy_run(hi_run) <= 1e-7 || hi - lo <= 1e-10 * hi) break;
    const double mid = 0.5 * (lo + hi);
    HolevoRun mid_run = solve(mid, hi_run);
    if (energy_run(mid_run) > c.h) {
      lo = mid;
      lo_run = std::move(mid_run);
    } else {
      hi = mid;
      hi_run = std::move(mid_run);
    }
  }
  const double e_lo = energy_run(lo_run);
  const double e_hi = energy_run(hi_run);
  const double t = e_lo - e_hi > 0.0 ? std::clamp((e_lo - c.h) / (e_lo - e_hi), 0.0, 1.0) : 1.0;
  const Ensemble mixed = union_ensemble(detail::ensemble_from_columns(lo_run.w),
                                        detail::ensemble_from_columns(hi_run.w), t);
  out.result.ensemble = mixed;
  out.result.state = mixed.average();
  out.result.value = holevo_quantity(mixed, ch);
  // Penalized exchange bound: C̄(H,h) ≤ max_ψ[D(Φψ‖Φρ̄_λ) − λ<H>] + λh.
  const double ub_lo = bits(lo_run.gap + lo_run.eval.value + lo * c.h);
  const double ub_hi = bits(hi_run.gap + hi_run.eval.value + hi * c.h);
  out.result.certificate_gap = std::max(0.0, std::min(ub_lo, ub_hi) - out.result.value);
  out.result.converged = out.result.certificate_gap <= gap_tol + 1e-6;
  out.result.iterations = lo_run.iterations + hi_run.iterations;
  out.multiplier = bits(t < 0.5 ? lo : hi);
  out.energy = energy_of(c, out.result.state);
  return out;
}

}  // namespace qcap
