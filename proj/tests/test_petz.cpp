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

#include "doctest.h"
#include "qcap/entropy.hpp"
#include "qcap/petz.hpp"
#include "qcap/random.hpp"
#include "test_util.hpp"

using namespace qcap;

namespace {

OptimizerOptions quick() {
  OptimizerOptions o;
  o.restarts = 8;
  return o;
}

DensityMatrix basis_state(std::size_t d, std::size_t k) {
  ComplexMatrix v(d, 1);
  v(k, 0) = 1.0;
  return DensityMatrix::pure(v);
}

}  // namespace

TEST_CASE("recovery inverts the complement at the base state") {
  random::Rng rng(30);
  for (int t = 0; t < 20; ++t) {
    const std::size_t d = 2 + t % 3;
    const KrausChannel ch = random::channel(rng, d, 2 + t % 2, 1 + t % 3);
    const DensityMatrix base = random::mixed_state(rng, d, 1 + t % d);
    const RecoveryChannel theta = petz_recovery(ch, base);
    const ComplexMatrix back = theta.apply(apply(theta.source_channel(), base.matrix()));
    CHECK(max_abs_diff(back, base.matrix()) < 1e-9);
    const std::vector<DensityMatrix> only{base};
    CHECK(check_inversion(theta, only, 1e-8).pass);
  }
}

TEST_CASE("recovery is completely positive and trace preserving on its domain") {
  random::Rng rng(31);
  double worst_tp = 0.0;
  double worst_cp = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 2 + t % 2;
    const KrausChannel ch = random::channel(rng, d, 2, 1 + t % 3);
    const RecoveryChannel theta = petz_recovery(ch, random::mixed_state(rng, d, 1 + t % d));
    const ComplexMatrix& p = theta.domain_projector();
    const std::size_t de = p.rows();
    const DensityMatrix sigma = random::mixed_state(rng, de);
    const ComplexMatrix in_domain = p * sigma.matrix() * p;
    worst_tp = std::max(worst_tp, std::abs(theta.apply(in_domain).trace().real() - in_domain.trace().real()));
    const auto eig = hermitian_eigendecompose(hermitian_part(theta.domain_choi()));
    worst_cp = std::max(worst_cp, -eig.values.back());
  }
  CHECK(worst_tp < 1e-9);
  CHECK(worst_cp < 1e-8);
}

TEST_CASE("dephasing: recovery restores basis states") {
  const KrausChannel ch = catalog::dephasing(3);
  const RecoveryChannel theta = petz_recovery(ch, DensityMatrix::maximally_mixed(3));
  std::vector<DensityMatrix> states;
  for (std::size_t k = 0; k < 3; ++k) states.push_back(basis_state(3, k));
  const InversionCheck inv = check_inversion(theta, states, 1e-8);
  CHECK(inv.pass);
  for (double r : inv.residuals) CHECK(r < 1e-9);
}

TEST_CASE("inversion holds only on states carrying weight") {
  const KrausChannel ch = catalog::dephasing(2);
  const std::vector<DensityMatrix> states{basis_state(2, 0), DensityMatrix::pure(testing::ket({M_SQRT1_2, M_SQRT1_2}))};
  const std::vector<double> weights{1.0, 0.0};
  const RecoveryChannel theta = petz_recovery(ch, states, weights);
  const InversionCheck inv = check_inversion(theta, states, 1e-8);
  CHECK(inv.residuals[0] < 1e-9);
  CHECK(inv.residuals[1] > 0.1);
  CHECK_FALSE(inv.pass);
  const std::vector<double> zero{0.0, 0.0};
  CHECK_THROWS_AS(petz_recovery(ch, states, zero), DegenerateBase);
}

TEST_CASE("trine: recovery fails on the optimal ensemble") {
  const KrausChannel ch = catalog::trine();
  const CapacityResult cbar = holevo_capacity(ch, quick());
  std::vector<DensityMatrix> states;
  const Ensemble optimal = cbar.ensemble->pruned(1e-6);
  for (const auto& it : optimal.items()) states.push_back(it.state);
  const std::vector<double> uniform(states.size(), 1.0 / static_cast<double>(states.size()));
  const InversionCheck inv = check_inversion(petz_recovery(ch, states, uniform), states, 1e-3);
  CHECK_FALSE(inv.pass);
}

TEST_CASE("chi-essential span") {
  const auto o = quick();
  CHECK(chi_essential_subspace(catalog::noiseless(3), o).dimension == 3);
  CHECK(chi_essential_subspace(catalog::trine(), o).dimension == 2);

  const ChiEssential bsst = chi_essential_subspace(catalog::bsst_plus(), o);
  REQUIRE(bsst.dimension == 4);
  // The span is H1 ⊗ H2 ⊗ |+>: the projector is P ⊗ |+><+| with P = I_4.
  const ComplexMatrix plus = testing::ket({M_SQRT1_2, M_SQRT1_2});
  const ComplexMatrix expected = tensor_product(ComplexMatrix::identity(4), times_adjoint(plus, plus));
  CHECK(max_abs_diff(bsst.projector, expected) < 1e-4);
}

TEST_CASE("equality verdicts") {
  const auto o = quick();
  const EqualityVerdict bsst = equality_certificate(catalog::bsst_plus(), o);
  CHECK(bsst.verdict == Verdict::Equal);
  CHECK(bsst.restriction.has_value());
  CHECK(std::abs(bsst.holevo.value - 2.0) < 1e-3);

  const EqualityVerdict trine = equality_certificate(catalog::trine(), o);
  CHECK(trine.verdict == Verdict::Gap);
  CHECK_FALSE(trine.inversion_pass);

  const EqualityVerdict noiseless = equality_certificate(catalog::noiseless(2), o);
  CHECK(noiseless.verdict == Verdict::Gap);
  CHECK(noiseless.gap_estimate == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("random classical-quantum channels are certified equal") {
  const auto o = quick();
  random::Rng rng(32);
  for (int t = 0; t < 6; ++t) {
    const CqStructure s = random::cq_structure(rng, 2 + t % 2, 2);
    const EqualityVerdict v = equality_certificate(catalog::cq_channel(s), o);
    CHECK(v.verdict == Verdict::Equal);
    CHECK(std::abs(v.gap_estimate) <= 2e-3);
  }
}

TEST_CASE("full-rank optimal average on a non-c-q channel gives a gap") {
  const auto o = quick();
  random::Rng rng(33);
  for (int t = 0; t < 4; ++t) {
    const KrausChannel ch = random::channel(rng, 2, 2, 2);
    const EqualityVerdict v = equality_certificate(ch, o);
    if (support_rank(hermitian_eigendecompose(v.holevo.state.matrix()).values) < 2) continue;
    if (!std::holds_alternative<NotCq>(detect_classical_quantum(ch))) continue;
    CHECK(v.verdict == Verdict::Gap);
  }
}

TEST_CASE("degradable c-q channels have orthogonal output supports") {
  const auto o = quick();
  for (const auto& ch : {catalog::dephasing(2), catalog::dephasing(3)}) {
    const EqualityVerdict v = equality_certificate(ch, o);
    REQUIRE(v.verdict == Verdict::Equal);
    REQUIRE(v.restriction.has_value());
    const auto& sig = v.restriction->sigmas;
    for (std::size_t i = 0; i < sig.size(); ++i)
      for (std::size_t j = i + 1; j < sig.size(); ++j)
        CHECK(std::abs(real_inner(sig[i].matrix(), sig[j].matrix())) <= 1e-6);
  }
}
