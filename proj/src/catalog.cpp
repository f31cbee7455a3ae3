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

#include "qcap/channels.hpp"

namespace qcap::catalog {

namespace {

// |e><f| for column vectors e (rows) and f (cols).
ComplexMatrix ket_bra(const ComplexMatrix& e, const ComplexMatrix& f) { return times_adjoint(e, f); }

ComplexMatrix basis_ket(std::size_t d, std::size_t k) {
  ComplexMatrix v(d, 1);
  v(k, 0) = 1.0;
  return v;
}

}  // namespace

KrausChannel noiseless(std::size_t d) { return KrausChannel(d, d, {ComplexMatrix::identity(d)}); }

KrausChannel unitary(const ComplexMatrix& u) {
  if (!u.square()) throw NonSquare("unitary channel needs a square matrix");
  if (max_abs_diff(adjoint_times(u, u), ComplexMatrix::identity(u.rows())) > kStructureTol) {
    throw NotUnitary("matrix is not unitary");
  }
  return KrausChannel(u.rows(), u.rows(), {u}, kStructureTol);
}

KrausChannel dephasing(std::size_t d) { return dephasing(ComplexMatrix::identity(d)); }

KrausChannel dephasing(const ComplexMatrix& basis) {
  std::vector<ComplexMatrix> k;
  for (std::size_t j = 0; j < basis.cols(); ++j) k.push_back(ComplexMatrix::outer(basis.col(j)));
  return KrausChannel(basis.rows(), basis.rows(), std::move(k), kStructureTol);
}

KrausChannel cq_channel(const CqStructure& s) {
  const std::size_t da = s.basis.rows();
  if (s.sigmas.size() != s.basis.cols()) throw DimensionMismatch("cq_channel: one state per basis vector");
  const std::size_t db = s.sigmas.front().dim();
  std::vector<ComplexMatrix> kraus;
  for (std::size_t k = 0; k < s.sigmas.size(); ++k) {
    const auto eig = hermitian_eigendecompose(s.sigmas[k].matrix());
    const std::size_t r = support_rank(eig.values);
    for (std::size_t j = 0; j < r; ++j) {
      kraus.push_back(ket_bra(eig.vectors.col(j), s.basis.col(k)) * std::sqrt(eig.values[j]));
    }
  }
  return KrausChannel(da, db, std::move(kraus), kStructureTol);
}

KrausChannel measurement_channel(const ComplexMatrix& vectors) {
  const std::size_t m = vectors.cols();
  std::vector<ComplexMatrix> kraus;
  for (std::size_t k = 0; k < m; ++k) kraus.push_back(ket_bra(basis_ket(m, k), vectors.col(k)));
  return KrausChannel(vectors.rows(), m, std::move(kraus), kStructureTol);
}

KrausChannel measure_prepare(const std::vector<ComplexMatrix>& povm,
                             const std::vector<DensityMatrix>& states) {
  if (povm.empty() || povm.size() != states.size()) {
    throw DimensionMismatch("measure_prepare: one output state per POVM element");
  }
  const std::size_t da = povm.front().rows();
  const std::size_t db = states.front().dim();
  std::vector<ComplexMatrix> kraus;
  for (std::size_t k = 0; k < povm.size(); ++k) {
    const auto me = hermitian_eigendecompose(povm[k]);
    const auto se = hermitian_eigendecompose(states[k].matrix());
    for (std::size_t i = 0; i < me.values.size(); ++i) {
      if (me.values[i] <= kSupportCutoff) continue;
      for (std::size_t j = 0; j < support_rank(se.values); ++j) {
        kraus.push_back(ket_bra(se.vectors.col(j), me.vectors.col(i)) *
                        std::sqrt(me.values[i] * se.values[j]));
      }
    }
  }
  return KrausChannel(da, db, std::move(kraus), kStructureTol);
}

KrausChannel qc_channel(const std::vector<ComplexMatrix>& povm) {
  std::vector<DensityMatrix> flags;
  for (std::size_t k = 0; k < povm.size(); ++k) flags.push_back(DensityMatrix::pure(basis_ket(povm.size(), k)));
  return measure_prepare(povm, flags);
}

KrausChannel depolarizing(std::size_t d, double p) {
  if (p < 0.0 || p > 1.0 + 1.0 / (static_cast<double>(d * d) - 1.0)) {
    throw InvalidChannel("depolarizing parameter outside the completely positive range");
  }
  return from_action(d, d, [d, p](const ComplexMatrix& x) {
    return x * (1.0 - p) + ComplexMatrix::identity(d) * (p * x.trace() / static_cast<double>(d));
  });
}

KrausChannel completely_depolarizing(std::size_t d_in, const DensityMatrix& sigma) {
  const auto eig = hermitian_eigendecompose(sigma.matrix());
  std::vector<ComplexMatrix> kraus;
  for (std::size_t j = 0; j < support_rank(eig.values); ++j)
    for (std::size_t a = 0; a < d_in; ++a)
      kraus.push_back(ket_bra(eig.vectors.col(j), basis_ket(d_in, a)) * std::sqrt(eig.values[j]));
  return KrausChannel(d_in, sigma.dim(), std::move(kraus), kStructureTol);
}

KrausChannel completely_depolarizing(std::size_t d) {
  return completely_depolarizing(d, DensityMatrix::maximally_mixed(d));
}

ComplexMatrix trine_vectors() {
  ComplexMatrix v(2, 3);
  const double s = std::sqrt(2.0 / 3.0);
  for (std::size_t k = 0; k < 3; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / 3.0;
    v(0, k) = s * std::cos(t);
    v(1, k) = s * std::sin(t);
  }
  return v;
}

KrausChannel trine() { return measurement_channel(trine_vectors()); }

KrausChannel bsst_plus() {
  const double r = M_SQRT1_2;
  // Index of |i1, i2, i3> is 4·i1 + 2·i2 + i3.
  auto plus_row = [r](std::size_t k) {
    ComplexMatrix v(8, 1);
    v(2 * k, 0) = r;
    v(2 * k + 1, 0) = r;
    return v;
  };
  return from_action(8, 4, [&](const ComplexMatrix& rho) {
    ComplexMatrix out(4, 4);
    for (std::size_t k = 0; k < 4; ++k) {
      const ComplexMatrix e = plus_row(k);
      out(k, k) += inner(e, rho * e);
    }
    // M_ab = Σ_{i2} <a, i2, −|ρ|b, i2, −> lives on H1; H2 is replaced by I/2.
    ComplexMatrix m(2, 2);
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b)
        for (std::size_t i2 = 0; i2 < 2; ++i2) {
          ComplexMatrix ea(8, 1);
          ComplexMatrix eb(8, 1);
          ea(4 * a + 2 * i2, 0) = r;
          ea(4 * a + 2 * i2 + 1, 0) = -r;
          eb(4 * b + 2 * i2, 0) = r;
          eb(4 * b + 2 * i2 + 1, 0) = -r;
          m(a, b) += inner(ea, rho * eb);
        }
    out += tensor_product(m, ComplexMatrix::identity(2) * 0.5);
    return out;
  });
}

std::vector<ComplexMatrix> weyl_operators(std::size_t d) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      ComplexMatrix w(d, d);
      for (std::size_t j = 0; j < d; ++j) {
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(b * j) / static_cast<double>(d);
        w((j + a) % d, j) = std::polar(1.0, phase);
      }
      ops.push_back(std::move(w));
    }
  return ops;
}

}  // namespace qcap::catalog
