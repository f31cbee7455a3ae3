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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles/bloch_grid.hpp"
#include "qcap/capacity.hpp"
#include "qcap/entropy.hpp"
#include "qcap/random.hpp"
#include "test_util.hpp"

using namespace qcap;

namespace {

OptimizerOptions quick() {
  OptimizerOptions o;
  o.restarts = 8;
  return o;
}

double h2(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

ComplexMatrix rotation(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return ComplexMatrix{{c, -s}, {s, c}};
}

}  // namespace

TEST_CASE("option and constraint validation") {
  const KrausChannel ch = catalog::noiseless(2);
  OptimizerOptions bad;
  bad.restarts = 0;
  CHECK_THROWS_AS(holevo_capacity(ch, bad), InvalidOptions);
  bad = {};
  bad.max_ensemble_size = 1;
  CHECK_THROWS_AS(ea_capacity(ch, bad), InvalidOptions);
  bad = {};
  bad.obj_tol = 0.0;
  CHECK_THROWS_AS(q1(ch, bad), InvalidOptions);

  ConstraintSpec c{ComplexMatrix::diagonal(std::vector<double>{1.0, 2.0}), 0.5};
  CHECK_THROWS_AS(constrained_ea(ch, c), Infeasible);
  c = {ComplexMatrix::diagonal(std::vector<double>{-1.0, 2.0}), 0.5};
  CHECK_THROWS_AS(constrained_ea(ch, c), InvalidState);
  c = {ComplexMatrix{{0.0, 1.0}, {0.0, 1.0}}, 0.5};
  CHECK_THROWS_AS(constrained_holevo(ch, c), InvalidState);
  c = {ComplexMatrix::identity(3), 0.5};
  CHECK_THROWS_AS(constrained_holevo(ch, c), DimensionMismatch);
}

TEST_CASE("noiseless channel values") {
  const KrausChannel ch = catalog::noiseless(2);
  const auto o = quick();
  const CapacityResult cbar = holevo_capacity(ch, o);
  CHECK(cbar.value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(cbar.converged);
  CHECK(cbar.certificate_gap <= 1e-5);
  CHECK(max_abs_diff(cbar.ensemble->average().matrix(), cbar.state.matrix()) < 1e-12);
  CHECK(ea_capacity(ch, o).value == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(q1(ch, o).value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(min_output_entropy(ch, o).value < 1e-8);
  CHECK(max_delta(ch, o).value == doctest::Approx(1.0).epsilon(1e-4));

  const KrausChannel qutrit = catalog::noiseless(3);
  CHECK(holevo_capacity(qutrit, o).value == doctest::Approx(std::log2(3.0)).epsilon(1e-6));

  random::Rng rng(10);
  const DensityMatrix rho = random::mixed_state(rng, 3);
  const CapacityResult chi = chi_function(qutrit, rho, o);
  CHECK(chi.value == doctest::Approx(entropy(rho)).epsilon(1e-6));
  CHECK(max_abs_diff(chi.ensemble->average().matrix(), rho.matrix()) < 1e-8);
  CHECK(delta(qutrit, rho, o).value == doctest::Approx(entropy(rho)).epsilon(1e-6));
}

TEST_CASE("chi function against the decomposition grid") {
  const auto o = quick();
  CHECK(chi_function(catalog::dephasing(2), DensityMatrix::maximally_mixed(2), o).value ==
        doctest::Approx(1.0).epsilon(1e-6));
  random::Rng rng(11);
  const DensityMatrix pure = random::pure_state(rng, 2);
  CHECK(chi_function(catalog::depolarizing(2, 0.4), pure, o).value < 1e-9);

  const std::vector<KrausChannel> channels{catalog::trine(), catalog::depolarizing(2, 0.3),
                                           random::channel(rng, 2, 2, 2), random::channel(rng, 2, 3, 2)};
  for (const auto& ch : channels) {
    const auto k = oracle::to_eigen(ch);
    for (int t = 0; t < 3; ++t) {
      const DensityMatrix rho = random::mixed_state(rng, 2);
      const auto& m = rho.matrix();
      const Eigen::Vector3d r(2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(), (m(0, 0) - m(1, 1)).real());
      const double ref = oracle::chi(k, r, 0.04);
      const CapacityResult got = chi_function(ch, rho, o);
      // The grid restricts the decomposition, so it can only undershoot χ.
      CHECK(got.value >= ref - 1e-6);
      CHECK(got.value <= ref + 5e-3);
      CHECK(got.certificate_gap < 1e-3);
    }
  }
}

TEST_CASE("Holevo capacity against Blahut-Arimoto on a sphere grid") {
  const auto o = quick();
  random::Rng rng(12);
  std::vector<KrausChannel> channels{catalog::trine(), catalog::depolarizing(2, 0.3),
                                     catalog::dephasing(2)};
  for (int t = 0; t < 3; ++t) channels.push_back(random::channel(rng, 2, 2 + t % 2, 2));
  for (const auto& ch : channels) {
    const double ref = oracle::holevo_capacity(oracle::to_eigen(ch), 0.05);
    const CapacityResult got = holevo_capacity(ch, o);
    CHECK(got.converged);
    CHECK(got.value >= ref - 1e-6);
    CHECK(got.value <= ref + 2e-3);
  }
  const double trine_ref = std::log2(3.0) - 1.0;
  CHECK(holevo_capacity(catalog::trine(), o).value == doctest::Approx(trine_ref).epsilon(1e-5));

  const double p = 0.3;
  CHECK(holevo_capacity(catalog::depolarizing(2, p), o).value == doctest::Approx(1.0 - h2(p / 2.0)).epsilon(1e-5));
}

TEST_CASE("entanglement-assisted capacity against ball search") {
  const auto o = quick();
  random::Rng rng(13);
  CHECK(ea_capacity(catalog::trine(), o).value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(ea_capacity(catalog::completely_depolarizing(2), o).value < 1e-8);
  for (int t = 0; t < 5; ++t) {
    const KrausChannel ch = random::channel(rng, 2, 2 + t % 2, 1 + t % 3);
    const double ref = oracle::ea_capacity(oracle::to_eigen(ch));
    const CapacityResult got = ea_capacity(ch, o);
    CHECK(got.converged);
    CHECK(got.value == doctest::Approx(ref).epsilon(1e-6));
    CHECK(got.value + got.certificate_gap >= ref - 1e-9);
  }
}

TEST_CASE("gradient of the mutual information matches finite differences") {
  random::Rng rng(14);
  double worst = 0.0;
  for (int t = 0; t < 4; ++t) {
    const std::size_t d = 2 + t % 2;
    const KrausChannel ch = random::channel(rng, d, d, 2);
    const DensityMatrix rho = random::mixed_state(rng, d);
    const ComplexMatrix g = ea_gradient(ch, rho);
    for (int k = 0; k < 20; ++k) {
      const ComplexMatrix dir = random::traceless_direction(rng, d);
      const double eps = 1e-5;
      const auto shifted = [&](double s) {
        return mutual_information(DensityMatrix::unchecked(rho.matrix() + dir * s), ch);
      };
      const double fd = (shifted(eps) - shifted(-eps)) / (2.0 * eps);
      const double an = real_inner(g, dir);
      worst = std::max(worst, std::abs(fd - an) / std::max(1e-3, std::abs(fd)));
    }
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("minimal output entropy") {
  const auto o = quick();
  CHECK(min_output_entropy(catalog::noiseless(3), o).value < 1e-10);
  CHECK(min_output_entropy(catalog::completely_depolarizing(2), o).value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(min_output_entropy(catalog::dephasing(2), o).value < 1e-8);
  CHECK(min_output_entropy(catalog::depolarizing(2, 0.2), o).value == doctest::Approx(h2(0.1)).epsilon(1e-6));
  random::Rng rng(15);
  for (int t = 0; t < 4; ++t) {
    const KrausChannel ch = random::channel(rng, 2 + t % 2, 2, 2 + t % 2);
    const KrausChannel env = complement(minimal_kraus(ch));
    CHECK(std::abs(min_output_entropy(ch, o).value - min_output_entropy(env, o).value) < 2e-3);
  }
}

TEST_CASE("Q1 values") {
  const auto o = quick();
  CHECK(q1(catalog::dephasing(2), o).value < 1e-6);
  CHECK(q1(catalog::completely_depolarizing(2), o).value < 1e-9);
  // Amplitude damping: max over diagonal inputs of h2((1-γ)p) − h2(γ p).
  const double gamma = 0.2;
  const KrausChannel ad(2, 2,
                        {ComplexMatrix{{1.0, 0.0}, {0.0, std::sqrt(1.0 - gamma)}},
                         ComplexMatrix{{0.0, std::sqrt(gamma)}, {0.0, 0.0}}});
  double ref = 0.0;
  for (int i = 0; i <= 100000; ++i) {
    const double p = i / 100000.0;
    ref = std::max(ref, h2((1.0 - gamma) * p) - h2(gamma * p));
  }
  CHECK(q1(ad, o).value == doctest::Approx(ref).epsilon(1e-6));
}

TEST_CASE("gap function") {
  const auto o = quick();
  random::Rng rng(16);
  for (int t = 0; t < 6; ++t) {
    const std::size_t d = 2 + t % 2;
    const KrausChannel ch = random::channel(rng, d, 2, 2);
    CHECK(delta(ch, random::pure_state(rng, d), o).value <= 1e-8);
    const DensityMatrix rho = random::mixed_state(rng, d);
    const double v = delta(ch, rho, o).value;
    const auto [via_env, via_ch] = delta_both_routes(ch, rho, o);
    CHECK(v >= -1e-6);
    CHECK(std::abs(via_env - via_ch) < 1e-5);
    CHECK(std::abs(v - via_env) < 1e-5);
  }
  // Classical-quantum channel at the optimal average.
  const CqStructure s = random::cq_structure(rng, 3, 2);
  const KrausChannel cq = catalog::cq_channel(s);
  const CapacityResult cbar = holevo_capacity(cq, o);
  CHECK(delta(cq, cbar.state, o).value < 1e-6);
}

TEST_CASE("D for catalog qubit channels") {
  const auto o = quick();
  CHECK(max_delta(catalog::completely_depolarizing(2), o).value < 1e-6);
  for (const auto& ch : {catalog::dephasing(2), catalog::depolarizing(2, 0.3), catalog::trine()}) {
    const double ref = oracle::max_delta_axial(oracle::to_eigen(ch), 0.05, 0.1);
    const CapacityResult got = max_delta(ch, o);
    CHECK(got.value >= ref - 5e-3);
    CHECK(got.value <= 1.0 + 1e-9);
  }
  const CapacityResult dep = max_delta(catalog::dephasing(2), o);
  CHECK(dep.value > 0.1);
  // D bounds the unconstrained gap.
  const double gap = ea_capacity(catalog::trine(), o).value - holevo_capacity(catalog::trine(), o).value;
  CHECK(max_delta(catalog::trine(), o).value >= gap - 2e-3);
}

TEST_CASE("Gibbs state") {
  const ComplexMatrix h = ComplexMatrix::diagonal(std::vector<double>{0.0, 1.0});
  const GibbsResult slack = gibbs_state({h, 0.5});
  CHECK(slack.constraint_slack);
  CHECK(max_abs_diff(slack.state.matrix(), DensityMatrix::maximally_mixed(2).matrix()) < 1e-15);

  const GibbsResult g = gibbs_state({h, 0.3});
  CHECK_FALSE(g.constraint_slack);
  CHECK(std::abs(real_inner(h, g.state.matrix()) - 0.3) < 1e-10);
  CHECK(g.lambda == doctest::Approx(std::log(0.7 / 0.3)).epsilon(1e-8));

  CHECK_THROWS_AS(gibbs_state({ComplexMatrix::identity(2), 2.0}), DegenerateH);
  CHECK_THROWS_AS(gibbs_state({ComplexMatrix::diagonal(std::vector<double>{1.0, 2.0}), 0.5}), Infeasible);

  const ComplexMatrix h3 = ComplexMatrix::diagonal(std::vector<double>{0.0, 1.0, 3.0});
  const GibbsResult g3 = gibbs_state({h3, 0.4});
  CHECK(std::abs(real_inner(h3, g3.state.matrix()) - 0.4) < 1e-10);
}

TEST_CASE("constrained capacities of the dephasing channel") {
  const auto o = quick();
  const KrausChannel ch = catalog::dephasing(2);
  const ComplexMatrix h = ComplexMatrix::diagonal(std::vector<double>{0.0, 1.0});
  const ConstraintSpec c{h, 0.3};
  const double target = entropy(gibbs_state(c).state);
  CHECK(target == doctest::Approx(h2(0.3)).epsilon(1e-10));
  const ConstrainedResult cbar = constrained_holevo(ch, c, o);
  const ConstrainedResult cea = constrained_ea(ch, c, o);
  CHECK(cbar.active);
  CHECK(cea.active);
  CHECK(std::abs(cbar.result.value - target) < 1e-4);
  CHECK(std::abs(cea.result.value - target) < 1e-4);
  CHECK(cbar.energy <= 0.3 + 1e-9);
  CHECK(cea.energy <= 0.3 + 1e-9);

  const ComplexMatrix r = rotation(std::numbers::pi / 4.0);
  const ConstraintSpec rotated{r * h * r.adjoint(), 0.3};
  const ConstrainedResult rbar = constrained_holevo(ch, rotated, o);
  const ConstrainedResult rea = constrained_ea(ch, rotated, o);
  CHECK(rea.result.value - rbar.result.value >= 0.01);
  const oracle::Mat cost = oracle::to_eigen(rotated.H);
  const auto k = oracle::to_eigen(ch);
  CHECK(std::abs(rbar.result.value - oracle::holevo_capacity(k, 0.05, &cost, 0.3)) < 5e-3);
  CHECK(std::abs(rea.result.value - oracle::ea_capacity(k, &cost, 0.3)) < 1e-5);

  // A loose constraint changes nothing.
  const ConstrainedResult loose = constrained_ea(ch, {h, 0.9}, o);
  CHECK_FALSE(loose.active);
  CHECK(loose.result.value == doctest::Approx(1.0).epsilon(1e-7));
  // h at the ground energy forces the ground state.
  const ConstrainedResult ground = constrained_holevo(ch, {h, 1e-14}, o);
  CHECK(ground.result.value < 1e-9);
}

TEST_CASE("constrained capacities of random qubit channels") {
  const auto o = quick();
  random::Rng rng(17);
  for (int t = 0; t < 3; ++t) {
    const KrausChannel ch = random::channel(rng, 2, 2, 2);
    const ComplexMatrix u = random::haar_unitary(rng, 2);
    const ComplexMatrix h = u * ComplexMatrix::diagonal(std::vector<double>{0.0, 1.0}) * u.adjoint();
    const double level = 0.15 + 0.1 * t;
    const auto k = oracle::to_eigen(ch);
    const oracle::Mat cost = oracle::to_eigen(h);
    const ConstrainedResult cbar = constrained_holevo(ch, {h, level}, o);
    const ConstrainedResult cea = constrained_ea(ch, {h, level}, o);
    CHECK(cbar.energy <= level + 1e-9);
    CHECK(cea.energy <= level + 1e-9);
    CHECK(std::abs(cbar.result.value - oracle::holevo_capacity(k, 0.05, &cost, level)) < 5e-3);
    CHECK(std::abs(cea.result.value - oracle::ea_capacity(k, &cost, level)) < 1e-5);
    CHECK(cea.result.value >= cbar.result.value - 1e-6);
  }
}

TEST_CASE("bounds report on catalog channels") {
  const auto o = quick();
  for (const auto& ch : {catalog::noiseless(2), catalog::dephasing(2), catalog::trine(),
                         catalog::depolarizing(2, 0.5), catalog::completely_depolarizing(2)}) {
    const BoundsReport r = bounds_report(ch, o);
    CHECK(r.all_pass);
    CHECK(r.lines.size() >= 10);
  }
  const BoundsReport nl = bounds_report(catalog::noiseless(2), o);
  CHECK(nl.dim_env == 1);
  bool tight = false;
  for (const auto& line : nl.lines) {
    if (line.name == "chaotic optimal: log dA - log dE <= Cea - Cbar") tight = std::abs(line.slack) < 1e-5;
  }
  CHECK(tight);
}

TEST_CASE("covariant closed forms") {
  const auto o = quick();
  const std::vector<ComplexMatrix> paulis = catalog::weyl_operators(2);
  const KrausChannel dep = catalog::depolarizing(2, 0.5);
  const auto [cbar, cea] = covariant_capacities(dep, paulis, paulis, o);
  CHECK(std::abs(cbar.value - holevo_capacity(dep, o).value) < 5e-3);
  CHECK(std::abs(cea.value - ea_capacity(dep, o).value) < 5e-3);
  CHECK(max_abs_diff(cbar.ensemble->average().matrix(), DensityMatrix::maximally_mixed(2).matrix()) < 1e-8);

  const auto [n_bar, n_ea] = covariant_capacities(catalog::noiseless(2), paulis, paulis, o);
  CHECK(n_bar.value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(n_ea.value == doctest::Approx(2.0).epsilon(1e-10));

  const auto [d_bar, d_ea] = covariant_capacities(catalog::dephasing(2), paulis, paulis, o);
  CHECK(d_bar.value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(d_ea.value == doctest::Approx(1.0).epsilon(1e-10));

  CHECK_THROWS_AS(covariant_capacities(catalog::trine(), paulis, paulis, o), CovarianceNotVerified);
  // Covariant under Z alone, but the Z twirl is not irreducible.
  const std::vector<ComplexMatrix> z{ComplexMatrix::identity(2), paulis[1]};
  CHECK_THROWS_AS(covariant_capacities(catalog::dephasing(2), z, z, o), CovarianceNotVerified);
}
