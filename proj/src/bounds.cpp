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

#include <algorithm>
#include <cmath>

#include "optim.hpp"
#include "qcap/capacity.hpp"
#include "qcap/entropy.hpp"

namespace qcap {

namespace {

constexpr double kBoundSlack = 1e-4;
constexpr double kPremiseTol = 1e-7;
constexpr double kChaoticTol = 1e-5;

void add_line(BoundsReport& r, std::string name, double lhs, double rhs) {
  BoundLine line{std::move(name), lhs, rhs, rhs - lhs, rhs - lhs >= -kBoundSlack};
  r.all_pass = r.all_pass && line.pass;
  r.lines.push_back(std::move(line));
}

// Smallest value of H(Φρ) − H(ρ) seen over sampled states and short local
// descents from the worst samples.
double min_entropy_increase(const KrausChannel& ch, const OptimizerOptions& opts) {
  const std::size_t d = ch.dim_in();
  random::Rng rng(opts.seed, 0xb15ULL);
  auto f = [&](const DensityMatrix& rho) { return entropy(apply(ch, rho)) - entropy(rho); };
  std::vector<std::pair<double, ComplexMatrix>> worst;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 200; ++i) {
    const std::size_t rank = 1 + static_cast<std::size_t>(i) % d;
    const DensityMatrix rho = random::mixed_state(rng, d, rank);
    const double v = f(rho);
    best = std::min(best, v);
    worst.emplace_back(v, rho.matrix());
  }
  for (std::size_t k = 0; k < d; ++k) {
    ComplexMatrix e(d, 1);
    e(k, 0) = 1.0;
    best = std::min(best, f(DensityMatrix::pure(e)));
  }
  std::sort(worst.begin(), worst.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  detail::MirrorObjective obj{[&](const DensityMatrix& rho, ComplexMatrix& g) {
    const auto ea = hermitian_eigendecompose(rho.matrix());
    const auto eb = hermitian_eigendecompose(hermitian_part(apply(ch, rho.matrix())));
    g = dual_apply(ch, detail::log_floor(eb)) - detail::log_floor(ea);
    return detail::entropy_nats(ea.values) - detail::entropy_nats(eb.values);
  }};
  for (std::size_t k = 0; k < std::min<std::size_t>(4, worst.size()); ++k) {
    const auto eig = hermitian_eigendecompose(worst[k].second * (1.0 - 1e-6) +
                                              ComplexMatrix::identity(d) * (1e-6 / static_cast<double>(d)));
    const auto run = detail::mirror_ascent(obj, detail::log_floor(eig), 300, 1e-12);
    best = std::min(best, f(run.state));
  }
  return best;
}

}  // namespace

BoundsReport bounds_report(const KrausChannel& ch, const OptimizerOptions& opts) {
  opts.validate(ch.dim_in());
  BoundsReport r;
  const KrausChannel env = complement(minimal_kraus(ch));
  const double log_da = std::log2(static_cast<double>(ch.dim_in()));
  r.dim_env = env.dim_out();
  const double log_de = std::log2(static_cast<double>(r.dim_env));

  r.holevo = holevo_capacity(ch, opts);
  OptimizerOptions env_opts = opts;
  env_opts.max_ensemble_size = 0;
  r.holevo_env = holevo_capacity(env, env_opts);
  r.ea = ea_capacity(ch, opts);
  r.q1 = q1(ch, opts);
  r.min_entropy = min_output_entropy(ch, opts);
  r.rho1 = r.holevo.state;
  r.rho2 = r.ea.state;
  r.chi_env_rho2 = chi_function(env, r.rho2, opts).value;
  r.roof_rho2 = output_entropy_roof(ch, r.rho2, opts).value;
  r.output_entropy_dominates = min_entropy_increase(ch, opts) >= -kPremiseTol;

  const double cbar = r.holevo.value;
  const double cbar_env = r.holevo_env.value;
  const double cea = r.ea.value;
  const double gap = cea - cbar;
  const double h1 = entropy(r.rho1);
  const double h2 = entropy(r.rho2);
  const double h_out2 = entropy(apply(ch, r.rho2));

  add_line(r, "optimal inputs: H(rho1) - Cbar(env) <= Cea - Cbar", h1 - cbar_env, gap);
  add_line(r, "optimal inputs: Cea - Cbar <= H(rho2) - chi_env(rho2)", gap, h2 - r.chi_env_rho2);
  if (r.output_entropy_dominates) {
    add_line(r, "optimal inputs: H(rho2) - chi_env(rho2) <= H(Phi rho2) - chi_env(rho2)", h2 - r.chi_env_rho2,
             h_out2 - r.chi_env_rho2);
  }
  add_line(r, "environment: Cbar - Cbar(env) <= Cea - Cbar", cbar - cbar_env, gap);
  if (r.output_entropy_dominates) {
    add_line(r, "environment: Cea - Cbar <= Q1 + roof(rho2)", gap, r.q1.value + r.roof_rho2);
  }
  add_line(r, "average state: Cbar <= H(rho_bar)", cbar, h1);
  add_line(r, "average state: H(rho_bar) - log dE <= Cea - Cbar", h1 - log_de, gap);

  const double chi2 = std::max(0.0, h_out2 - r.roof_rho2);
  const double i1 = mutual_information(r.rho1, ch, env);
  add_line(r, "sandwich: chi(rho1) <= I(rho1)", cbar, i1);
  add_line(r, "sandwich: I(rho1) <= chi(rho1) + log dA", i1, cbar + log_da);
  add_line(r, "sandwich: chi(rho2) <= I(rho2)", chi2, cea);
  add_line(r, "sandwich: I(rho2) <= chi(rho2) + log dA", cea, chi2 + log_da);
  add_line(r, "sandwich: Cbar <= Cea", cbar, cea);
  add_line(r, "sandwich: Cea <= Cbar + log dA", cea, cbar + log_da);

  const DensityMatrix rho_c = DensityMatrix::maximally_mixed(ch.dim_in());
  const double chi_c = chi_function(ch, rho_c, opts).value;
  if (chi_c >= cbar - kChaoticTol) {
    add_line(r, "chaotic optimal: log dA - Cbar(env) <= Cea - Cbar", log_da - cbar_env, gap);
    add_line(r, "chaotic optimal: log dA - log dE <= Cea - Cbar", log_da - log_de, gap);
  }
  const double i_c = mutual_information(rho_c, ch, env);
  if (std::abs(cea - i_c) <= kChaoticTol) {
    const double chi_env_c = chi_function(env, rho_c, env_opts).value;
    if (chi_env_c >= cbar_env - kChaoticTol) {
      add_line(r, "chaotic ea-optimal: Cea - Cbar <= log dA - Cbar(env)", gap, log_da - cbar_env);
    }
  }
  return r;
}

std::pair<CapacityResult, CapacityResult> covariant_capacities(const KrausChannel& ch,
                                                               const std::vector<ComplexMatrix>& input_unitaries,
                                                               const std::vector<ComplexMatrix>& output_unitaries,
                                                               const OptimizerOptions& opts) {
  opts.validate(ch.dim_in());
  const std::size_t d = ch.dim_in();
  if (input_unitaries.empty() || input_unitaries.size() != output_unitaries.size()) {
    throw CovarianceNotVerified("need one output unitary per input unitary");
  }
  bool covariant = false;
  try {
    covariant = verify_covariance(ch, input_unitaries, output_unitaries);
  } catch (const Error&) {
    covariant = false;
  }
  if (!covariant) throw CovarianceNotVerified("channel is not covariant under the supplied unitaries");
  // Averaging over the group must send every matrix unit E_ij to δ_ij I/d.
  const double n = static_cast<double>(input_unitaries.size());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      ComplexMatrix e(d, d);
      e(i, j) = 1.0;
      ComplexMatrix avg(d, d);
      for (const auto& v : input_unitaries) avg += v * e * v.adjoint();
      avg = avg * (1.0 / n);
      ComplexMatrix target(d, d);
      if (i == j) target = ComplexMatrix::identity(d) * (1.0 / static_cast<double>(d));
      if (max_abs_diff(avg, target) > kStructureTol) {
        throw CovarianceNotVerified("input action is not irreducible: the twirl does not reach the chaotic state");
      }
    }

  const KrausChannel env = complement(minimal_kraus(ch));
  const DensityMatrix rho_c = DensityMatrix::maximally_mixed(d);
  const double h_out_c = entropy(apply(ch, rho_c));
  const CapacityResult hmin = min_output_entropy(ch, opts);

  CapacityResult holevo;
  holevo.value = std::max(0.0, h_out_c - hmin.value);
  ComplexMatrix psi = hermitian_eigendecompose(hmin.state.matrix()).vectors.col(0);
  std::vector<double> weights(input_unitaries.size(), 1.0 / n);
  std::vector<ComplexMatrix> orbit;
  for (const auto& v : input_unitaries) orbit.push_back(v * psi);
  holevo.ensemble = Ensemble::from_vectors(weights, orbit);
  holevo.state = holevo.ensemble->average();
  holevo.certificate_gap = hmin.certificate_gap;
  holevo.converged = hmin.converged;

  CapacityResult ea;
  ea.value = std::log2(static_cast<double>(d)) + h_out_c - entropy(apply(env, rho_c));
  ea.state = rho_c;
  return {holevo, ea};
}

}  // namespace qcap
