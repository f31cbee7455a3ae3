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

#include "qcap/random.hpp"

#include <algorithm>
#include <cmath>

#include "qcap/channels.hpp"

namespace qcap::random {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

cplx Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

ComplexMatrix ginibre(Rng& rng, std::size_t rows, std::size_t cols) {
  ComplexMatrix g(rows, cols);
  for (auto& x : g.data()) x = rng.complex_normal();
  return g;
}

ComplexMatrix haar_isometry(Rng& rng, std::size_t rows, std::size_t cols) {
  // Gram-Schmidt on Gaussian columns gives the Haar measure.
  ComplexMatrix q = ginibre(rng, rows, cols);
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      cplx proj = 0.0;
      for (std::size_t i = 0; i < rows; ++i) proj += std::conj(q(i, k)) * q(i, j);
      for (std::size_t i = 0; i < rows; ++i) q(i, j) -= proj * q(i, k);
    }
    double n = 0.0;
    for (std::size_t i = 0; i < rows; ++i) n += std::norm(q(i, j));
    n = std::sqrt(n);
    for (std::size_t i = 0; i < rows; ++i) q(i, j) /= n;
  }
  return q;
}

ComplexMatrix haar_unitary(Rng& rng, std::size_t n) { return haar_isometry(rng, n, n); }

ComplexMatrix pure_vector(Rng& rng, std::size_t d) {
  ComplexMatrix v = ginibre(rng, d, 1);
  return v * (1.0 / v.frobenius());
}

DensityMatrix pure_state(Rng& rng, std::size_t d) {
  return DensityMatrix::pure(pure_vector(rng, d));
}

DensityMatrix mixed_state(Rng& rng, std::size_t d, std::size_t rank) {
  if (rank == 0) rank = d;
  const ComplexMatrix g = ginibre(rng, d, rank);
  ComplexMatrix rho = times_adjoint(g, g);
  rho *= 1.0 / rho.trace().real();
  return DensityMatrix::unchecked(std::move(rho));
}

ComplexMatrix hermitian(Rng& rng, std::size_t d) {
  return hermitian_part(ginibre(rng, d, d));
}

ComplexMatrix traceless_direction(Rng& rng, std::size_t d) {
  ComplexMatrix h = hermitian(rng, d);
  const cplx shift = h.trace() / static_cast<double>(d);
  for (std::size_t i = 0; i < d; ++i) h(i, i) -= shift;
  return h * (1.0 / h.frobenius());
}

KrausChannel channel(Rng& rng, std::size_t d_in, std::size_t d_out, std::size_t num_kraus) {
  num_kraus = std::max(num_kraus, (d_in + d_out - 1) / d_out);
  const ComplexMatrix iso = haar_isometry(rng, d_out * num_kraus, d_in);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(num_kraus);
  for (std::size_t k = 0; k < num_kraus; ++k) {
    ComplexMatrix v(d_out, d_in);
    for (std::size_t i = 0; i < d_out; ++i)
      for (std::size_t a = 0; a < d_in; ++a) v(i, a) = iso(k * d_out + i, a);
    kraus.push_back(std::move(v));
  }
  return KrausChannel(d_in, d_out, std::move(kraus));
}

CqStructure cq_structure(Rng& rng, std::size_t d_in, std::size_t d_out) {
  CqStructure s;
  s.basis = haar_unitary(rng, d_in);
  for (std::size_t k = 0; k < d_in; ++k) {
    const auto rank = 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(d_out)) % d_out;
    s.sigmas.push_back(mixed_state(rng, d_out, rank));
  }
  return s;
}

}  // namespace qcap::random
