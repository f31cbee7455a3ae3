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

#include "qcap/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcap/random.hpp"

namespace qcap {

KrausChannel::KrausChannel(std::size_t dim_in, std::size_t dim_out,
                           std::vector<ComplexMatrix> kraus, double tol)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
  if (dim_in_ == 0 || dim_out_ == 0) throw DimensionMismatch("channel dimensions must be positive");
  if (kraus_.empty()) throw InvalidChannel("channel needs at least one Kraus operator");
  ComplexMatrix sum(dim_in_, dim_in_);
  for (const auto& v : kraus_) {
    if (v.rows() != dim_out_ || v.cols() != dim_in_) {
      throw DimensionMismatch("Kraus operator shape is not dim_out x dim_in");
    }
    sum += adjoint_times(v, v);
  }
  const double defect = max_abs_diff(sum, ComplexMatrix::identity(dim_in_));
  if (defect > tol) {
    throw NotTracePreserving("Kraus completeness violated by " + std::to_string(defect));
  }
}

ComplexMatrix apply(const KrausChannel& ch, const ComplexMatrix& op) {
  if (op.rows() != ch.dim_in() || op.cols() != ch.dim_in()) {
    throw DimensionMismatch("apply: operator dimension does not match channel input");
  }
  ComplexMatrix out(ch.dim_out(), ch.dim_out());
  for (const auto& v : ch.kraus()) out += times_adjoint(v * op, v);
  return out;
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  return DensityMatrix::unchecked(apply(ch, rho.matrix()));
}

ComplexMatrix dual_apply(const KrausChannel& ch, const ComplexMatrix& a) {
  if (a.rows() != ch.dim_out() || a.cols() != ch.dim_out()) {
    throw DimensionMismatch("dual_apply: operator dimension does not match channel output");
  }
  ComplexMatrix out(ch.dim_in(), ch.dim_in());
  for (const auto& v : ch.kraus()) out += adjoint_times(v, a * v);
  return out;
}

KrausChannel complement(const KrausChannel& ch) {
  const std::size_t n = ch.num_kraus();
  std::vector<ComplexMatrix> f;
  f.reserve(ch.dim_out());
  for (std::size_t m = 0; m < ch.dim_out(); ++m) {
    ComplexMatrix fm(n, ch.dim_in());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t a = 0; a < ch.dim_in(); ++a) fm(i, a) = ch.kraus()[i](m, a);
    f.push_back(std::move(fm));
  }
  return KrausChannel(ch.dim_in(), n, std::move(f));
}

ChoiMatrix choi(const KrausChannel& ch) {
  const std::size_t da = ch.dim_in();
  const std::size_t db = ch.dim_out();
  ComplexMatrix c(da * db, da * db);
  for (const auto& v : ch.kraus()) {
    for (std::size_t a = 0; a < da; ++a)
      for (std::size_t i = 0; i < db; ++i) {
        const cplx via = v(i, a);
        if (via == cplx(0.0)) continue;
        for (std::size_t b = 0; b < da; ++b)
          for (std::size_t j = 0; j < db; ++j) c(a * db + i, b * db + j) += via * std::conj(v(j, b));
      }
  }
  return {da, db, std::move(c)};
}

KrausChannel from_choi(const ChoiMatrix& c) {
  const std::size_t da = c.dim_in;
  const std::size_t db = c.dim_out;
  if (!c.matrix.square() || c.matrix.rows() != da * db) {
    throw DimensionMismatch("from_choi: matrix size is not dim_in*dim_out");
  }
  const double defect = hermiticity_defect(c.matrix);
  if (defect > kHermitianTol) throw NotCompletelyPositive("Choi matrix is not Hermitian");
  const auto eig = hermitian_eigendecompose(c.matrix);
  if (eig.values.back() < -kHermitianTol) {
    throw NotCompletelyPositive("Choi matrix has eigenvalue " + std::to_string(eig.values.back()));
  }
  const double tp = max_abs_diff(partial_trace(c.matrix, da, db, 0), ComplexMatrix::identity(da));
  if (tp > kHermitianTol) throw NotTracePreserving("Choi partial trace differs from I by " + std::to_string(tp));

  const std::size_t rank = support_rank(eig.values);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(rank);
  for (std::size_t k = 0; k < rank; ++k) {
    const double s = std::sqrt(eig.values[k]);
    ComplexMatrix v(db, da);
    for (std::size_t a = 0; a < da; ++a)
      for (std::size_t i = 0; i < db; ++i) v(i, a) = s * eig.vectors(a * db + i, k);
    kraus.push_back(std::move(v));
  }
  // Eigenvector round-off can leave the completeness defect slightly above
  // the representation tolerance; the Choi checks above are authoritative.
  return KrausChannel(da, db, std::move(kraus), 1e-8);
}

KrausChannel minimal_kraus(const KrausChannel& ch) { return from_choi(choi(ch)); }

KrausChannel rekraus_from_overcomplete(const KrausChannel& ch, const ComplexMatrix& vectors) {
  const std::size_t n = ch.num_kraus();
  if (vectors.rows() != n) {
    throw NotOvercomplete("overcomplete system must live in the " + std::to_string(n) +
                          "-dimensional Kraus index space");
  }
  const double defect = max_abs_diff(times_adjoint(vectors, vectors), ComplexMatrix::identity(n));
  if (defect > kHermitianTol) {
    throw NotOvercomplete("vectors do not resolve the identity (defect " + std::to_string(defect) + ")");
  }
  std::vector<ComplexMatrix> w;
  w.reserve(vectors.cols());
  for (std::size_t k = 0; k < vectors.cols(); ++k) {
    ComplexMatrix wk(ch.dim_out(), ch.dim_in());
    for (std::size_t i = 0; i < n; ++i) wk += ch.kraus()[i] * std::conj(vectors(i, k));
    w.push_back(std::move(wk));
  }
  return KrausChannel(ch.dim_in(), ch.dim_out(), std::move(w));
}

KrausChannel compose(const KrausChannel& outer, const KrausChannel& inner) {
  if (outer.dim_in() != inner.dim_out()) {
    throw DimensionMismatch("compose: outer input dimension differs from inner output dimension");
  }
  std::vector<ComplexMatrix> k;
  k.reserve(outer.num_kraus() * inner.num_kraus());
  for (const auto& w : outer.kraus())
    for (const auto& v : inner.kraus()) k.push_back(w * v);
  return KrausChannel(inner.dim_in(), outer.dim_out(), std::move(k));
}

KrausChannel tensor(const KrausChannel& a, const KrausChannel& b) {
  std::vector<ComplexMatrix> k;
  k.reserve(a.num_kraus() * b.num_kraus());
  for (const auto& v : a.kraus())
    for (const auto& w : b.kraus()) k.push_back(tensor_product(v, w));
  return KrausChannel(a.dim_in() * b.dim_in(), a.dim_out() * b.dim_out(), std::move(k));
}

KrausChannel restrict_input(const KrausChannel& ch, const ComplexMatrix& isometry) {
  if (isometry.rows() != ch.dim_in()) throw DimensionMismatch("restrict_input: isometry rows");
  std::vector<ComplexMatrix> k;
  k.reserve(ch.num_kraus());
  for (const auto& v : ch.kraus()) k.push_back(v * isometry);
  return KrausChannel(isometry.cols(), ch.dim_out(), std::move(k), 1e-8);
}

namespace {

std::vector<ComplexMatrix> hermitian_basis(std::size_t d) {
  std::vector<ComplexMatrix> basis;
  basis.reserve(d * d);
  for (std::size_t m = 0; m < d; ++m) basis.push_back(ComplexMatrix::unit(d, m, m));
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t n = m + 1; n < d; ++n) {
      ComplexMatrix re(d, d);
      re(m, n) = 1.0;
      re(n, m) = 1.0;
      ComplexMatrix im(d, d);
      im(m, n) = cplx(0.0, -1.0);
      im(n, m) = cplx(0.0, 1.0);
      basis.push_back(std::move(re));
      basis.push_back(std::move(im));
    }
  return basis;
}

// Orthonormal basis of C^k (in the coordinates of `frame`, columns) that
// diagonalizes every operator of a commuting family.
ComplexMatrix joint_eigenbasis(const std::vector<ComplexMatrix>& family, const ComplexMatrix& frame,
                               random::Rng& rng, int depth) {
  const std::size_t k = frame.cols();
  if (k <= 1 || depth > 8) return frame;
  ComplexMatrix combo(k, k);
  double scale = 0.0;
  std::vector<ComplexMatrix> compressed;
  compressed.reserve(family.size());
  for (const auto& m : family) {
    ComplexMatrix c = adjoint_times(frame, m * frame);
    combo += c * rng.normal();
    scale = std::max(scale, c.max_abs());
    compressed.push_back(std::move(c));
  }
  const auto eig = hermitian_eigendecompose(hermitian_part(combo));
  const double gap_tol = 1e-7 * std::max(1.0, scale);
  ComplexMatrix out(frame.rows(), k);
  std::size_t start = 0;
  while (start < k) {
    std::size_t end = start + 1;
    while (end < k && eig.values[end - 1] - eig.values[end] <= gap_tol) ++end;
    ComplexMatrix block = frame * eig.vectors.cols_range(start, end - start);
    if (end - start > 1) block = joint_eigenbasis(family, block, rng, depth + 1);
    for (std::size_t j = start; j < end; ++j) out.set_col(j, block.col(j - start));
    start = end;
  }
  return out;
}

}  // namespace

CqDetection detect_classical_quantum(const KrausChannel& ch, double tol) {
  std::vector<ComplexMatrix> family;
  for (const auto& e : hermitian_basis(ch.dim_out())) family.push_back(dual_apply(ch, e));

  double worst = 0.0;
  for (std::size_t r = 0; r < family.size(); ++r)
    for (std::size_t s = r + 1; s < family.size(); ++s)
      worst = std::max(worst, commutator(family[r], family[s]).max_abs());
  if (worst > tol) return NotCq{worst, "dual images of the output operator basis do not commute"};

  random::Rng rng(0x6371ULL, ch.dim_in());
  const ComplexMatrix basis =
      joint_eigenbasis(family, ComplexMatrix::identity(ch.dim_in()), rng, 0);

  CqStructure s{basis, {}};
  s.sigmas.reserve(ch.dim_in());
  for (std::size_t k = 0; k < ch.dim_in(); ++k) {
    s.sigmas.push_back(apply(ch, DensityMatrix::pure(basis.col(k))));
  }
  const double err =
      max_abs_diff(choi(catalog::cq_channel(s)).matrix, choi(ch).matrix);
  if (err > std::max(kStructureTol, tol)) {
    return NotCq{err, "reconstructed classical-quantum channel differs from the source"};
  }
  return s;
}

bool verify_covariance(const KrausChannel& ch, const std::vector<ComplexMatrix>& input_unitaries,
                       const std::vector<ComplexMatrix>& output_unitaries, double tol) {
  if (input_unitaries.size() != output_unitaries.size()) {
    throw DimensionMismatch("verify_covariance: unequal numbers of input and output unitaries");
  }
  auto check_unitary = [tol](const ComplexMatrix& u, std::size_t d) {
    if (u.rows() != d || u.cols() != d) throw DimensionMismatch("verify_covariance: unitary size");
    if (max_abs_diff(adjoint_times(u, u), ComplexMatrix::identity(d)) > tol) {
      throw NotUnitary("verify_covariance: matrix is not unitary");
    }
  };
  for (std::size_t g = 0; g < input_unitaries.size(); ++g) {
    check_unitary(input_unitaries[g], ch.dim_in());
    check_unitary(output_unitaries[g], ch.dim_out());
    const auto lhs = choi(compose(ch, catalog::unitary(input_unitaries[g])));
    const auto rhs = choi(compose(catalog::unitary(output_unitaries[g]), ch));
    if (max_abs_diff(lhs.matrix, rhs.matrix) > tol) return false;
  }
  return true;
}

bool verify_degrading(const KrausChannel& ch, const KrausChannel& degrader, double tol) {
  const KrausChannel env = complement(minimal_kraus(ch));
  if (degrader.dim_in() != ch.dim_out() || degrader.dim_out() != env.dim_out()) {
    throw DimensionMismatch("verify_degrading: degrading map must send " +
                            std::to_string(ch.dim_out()) + " -> " + std::to_string(env.dim_out()));
  }
  return max_abs_diff(choi(compose(degrader, ch)).matrix, choi(env).matrix) <= tol;
}

KrausChannel from_action(std::size_t dim_in, std::size_t dim_out,
                         const std::function<ComplexMatrix(const ComplexMatrix&)>& action) {
  ComplexMatrix c(dim_in * dim_out, dim_in * dim_out);
  for (std::size_t a = 0; a < dim_in; ++a)
    for (std::size_t b = 0; b < dim_in; ++b) {
      const ComplexMatrix out = action(ComplexMatrix::unit(dim_in, a, b));
      if (out.rows() != dim_out || out.cols() != dim_out) {
        throw DimensionMismatch("from_action: action returned the wrong output size");
      }
      for (std::size_t i = 0; i < dim_out; ++i)
        for (std::size_t j = 0; j < dim_out; ++j) c(a * dim_out + i, b * dim_out + j) = out(i, j);
    }
  return from_choi({dim_in, dim_out, std::move(c)});
}

}  // namespace qcap
