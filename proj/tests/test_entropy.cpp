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
#include "qcap/random.hpp"
#include "test_util.hpp"

using namespace qcap;

TEST_CASE("von Neumann entropy") {
  random::Rng rng(1);
  CHECK(entropy(random::pure_state(rng, 4)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(entropy(DensityMatrix::maximally_mixed(2)) == doctest::Approx(1.0));
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix rho = random::mixed_state(rng, 2);
    const DensityMatrix sigma = random::mixed_state(rng, 3);
    const DensityMatrix joint = DensityMatrix::unchecked(tensor_product(rho.matrix(), sigma.matrix()));
    CHECK(std::abs(entropy(joint) - entropy(rho) - entropy(sigma)) < 1e-10);
    CHECK(entropy(sigma) <= std::log2(3.0) + 1e-12);
  }
}

TEST_CASE("relative entropy") {
  random::Rng rng(2);
  const DensityMatrix rho = random::mixed_state(rng, 3);
  const Divergence self = relative_entropy(rho, rho);
  REQUIRE(self.finite());
  CHECK(self.value == doctest::Approx(0.0).epsilon(1e-12));

  const DensityMatrix zero = DensityMatrix::pure(testing::ket({1.0, 0.0}));
  const DensityMatrix one = DensityMatrix::pure(testing::ket({0.0, 1.0}));
  CHECK(relative_entropy(zero, one).infinite);

  const std::vector<double> p{0.7, 0.3};
  const Divergence d = relative_entropy(DensityMatrix(ComplexMatrix::diagonal(p)), DensityMatrix::maximally_mixed(2));
  CHECK(d.value == doctest::Approx(0.7 * std::log2(1.4) + 0.3 * std::log2(0.6)));

  // Data processing on random triples.
  double worst = -1.0;
  for (int t = 0; t < 500; ++t) {
    const KrausChannel ch = random::channel(rng, 3, 2 + t % 2, 1 + t % 3);
    const DensityMatrix a = random::mixed_state(rng, 3);
    const DensityMatrix b = random::mixed_state(rng, 3);
    const double before = relative_entropy(a, b).value;
    const Divergence after = relative_entropy(apply(ch, a), apply(ch, b));
    REQUIRE(after.finite());
    worst = std::max(worst, after.value - before);
    CHECK(after.value >= 0.0);
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("Holevo quantity") {
  std::vector<ComplexMatrix> basis;
  for (std::size_t k = 0; k < 3; ++k) basis.push_back(ComplexMatrix::identity(3).col(k));
  const std::vector<double> uniform(3, 1.0 / 3.0);
  const Ensemble ens = Ensemble::from_vectors(uniform, basis);
  CHECK(holevo_quantity(ens, catalog::noiseless(3)) == doctest::Approx(std::log2(3.0)));

  random::Rng rng(3);
  const Ensemble single({{1.0, random::mixed_state(rng, 3), std::nullopt}});
  CHECK(holevo_quantity(single, catalog::noiseless(3)) == doctest::Approx(0.0).epsilon(1e-12));

  for (int t = 0; t < 30; ++t) {
    const KrausChannel ch = random::channel(rng, 3, 2, 2);
    std::vector<double> w{0.1, 0.4, 0.2, 0.3};
    std::vector<ComplexMatrix> vecs;
    for (int i = 0; i < 4; ++i) vecs.push_back(random::pure_vector(rng, 3));
    const Ensemble e = Ensemble::from_vectors(w, vecs);
    double mixture = entropy(apply(ch, e.average()));
    for (const auto& it : e.items()) mixture -= it.weight * entropy(apply(ch, it.state));
    CHECK(std::abs(holevo_quantity(e, ch) - mixture) < 1e-9);

    // A pure-state ensemble: H(ρ̄) = Σ π H(ψ_i‖ρ̄).
    double sum = 0.0;
    for (const auto& it : e.items()) sum += it.weight * relative_entropy(it.state, e.average()).value;
    CHECK(std::abs(sum - entropy(e.average())) < 1e-9);
  }
}

TEST_CASE("mutual and coherent information") {
  CHECK(mutual_information(DensityMatrix::maximally_mixed(2), catalog::noiseless(2)) == doctest::Approx(2.0));
  random::Rng rng(4);
  for (int t = 0; t < 30; ++t) {
    const KrausChannel ch = random::channel(rng, 3, 2, 1 + t % 4);
    CHECK(std::abs(mutual_information(random::pure_state(rng, 3), ch)) < 1e-9);
    const DensityMatrix rho = random::mixed_state(rng, 3);
    const double i = mutual_information(rho, ch);
    CHECK(i >= -1e-9);
    CHECK(std::abs(coherent_information(rho, ch) - (i - entropy(rho))) < 1e-9);
    CHECK(coherent_information(rho, catalog::noiseless(3)) == doctest::Approx(entropy(rho)));


    const KrausChannel small = random::channel(rng, 2, 2, 2);
    const DensityMatrix r2 = random::mixed_state(rng, 2);
    const DensityMatrix r2r2 = DensityMatrix::unchecked(tensor_product(r2.matrix(), r2.matrix()));
    CHECK(std::abs(mutual_information(r2r2, tensor(small, small)) - 2.0 * mutual_information(r2, small)) < 1e-8);

  }

  // Measurement in a basis: I(ρ, Φ) = H(ρ).
  const KrausChannel meas = catalog::measurement_channel(random::haar_unitary(rng, 3));
  for (int t = 0; t < 10; ++t) {
    const DensityMatrix rho = random::mixed_state(rng, 3);
    CHECK(std::abs(mutual_information(rho, meas) - entropy(rho)) < 1e-8);
  }
}
