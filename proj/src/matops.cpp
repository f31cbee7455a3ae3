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

#include "qcap/matops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qcap {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0)) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw DimensionMismatch("ComplexMatrix: entries length does not equal rows*cols");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("ComplexMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const cplx> v) {
  return ComplexMatrix(v.size(), 1, std::vector<cplx>(v.begin(), v.end()));
}

ComplexMatrix ComplexMatrix::outer(const ComplexMatrix& v) {
  const std::size_t n = v.size();
  ComplexMatrix m(n, n);
  const auto d = v.data();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d[i] * std::conj(d[j]);
  return m;
}

ComplexMatrix ComplexMatrix::unit(std::size_t n, std::size_t a, std::size_t b) {
  ComplexMatrix m(n, n);
  m(a, b) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix r(*this);
  for (auto& x : r.data_) x = std::conj(x);
  return r;
}

cplx ComplexMatrix::trace() const {
  if (!square()) throw NonSquare("trace of a non-square matrix");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix ComplexMatrix::col(std::size_t c) const {
  ComplexMatrix v(rows_, 1);
  for (std::size_t i = 0; i < rows_; ++i) v(i, 0) = (*this)(i, c);
  return v;
}

void ComplexMatrix::set_col(std::size_t c, const ComplexMatrix& v) {
  if (v.size() != rows_) throw DimensionMismatch("set_col: length mismatch");
  const auto d = v.data();
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = d[i];
}

ComplexMatrix ComplexMatrix::cols_range(std::size_t first, std::size_t count) const {
  ComplexMatrix r(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) r(i, j) = (*this)(i, first + j);
  return r;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : data_) m = std::max(m, std::abs(x));
  return m;
}

double ComplexMatrix::frobenius() const {
  double s = 0.0;
  for (const auto& x : data_) s += std::norm(x);
  return std::sqrt(s);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix sum: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) {
    throw DimensionMismatch("matrix difference: shape mismatch");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& x : data_) x *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product: inner dimension mismatch");
  ComplexMatrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    cplx* out = &r.data_[i * b.cols_];
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const cplx aik = a.data_[i * a.cols_ + k];
      if (aik == cplx(0.0)) continue;
      const cplx* brow = &b.data_[k * b.cols_];
      for (std::size_t j = 0; j < b.cols_; ++j) out[j] += aik * brow[j];
    }
  }
  return r;
}

ComplexMatrix adjoint_times(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("adjoint_times: row mismatch");
  ComplexMatrix r(a.cols(), b.cols());
  for (std::size_t k = 0; k < a.rows(); ++k)
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const cplx aki = std::conj(a(k, i));
      if (aki == cplx(0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aki * b(k, j);
    }
  return r;
}

ComplexMatrix times_adjoint(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.cols()) throw DimensionMismatch("times_adjoint: column mismatch");
  ComplexMatrix r(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * std::conj(b(j, k));
      r(i, j) = s;
    }
  return r;
}

cplx inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.size() != b.size()) throw DimensionMismatch("inner: length mismatch");
  cplx s = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) s += std::conj(da[i]) * db[i];
  return s;
}

double real_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.size() != b.size()) throw DimensionMismatch("real_inner: size mismatch");
  double s = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    s += da[i].real() * db[i].real() + da[i].imag() * db[i].imag();
  }
  return s;
}

cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw DimensionMismatch("trace_product: shape mismatch");
  }
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, i);
  return s;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("max_abs_diff: shape mismatch");
  }
  double m = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) m = std::max(m, std::abs(da[i] - db[i]));
  return m;
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (!m.square()) throw NonSquare("hermiticity_defect: non-square matrix");
  double d = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
  return d;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  if (!m.square()) throw NonSquare("hermitian_part: non-square matrix");
  ComplexMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    r(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const cplx v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      r(i, j) = v;
      r(j, i) = std::conj(v);
    }
  }
  return r;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

HermitianEig hermitian_eigendecompose(const ComplexMatrix& m) {
  if (!m.square()) throw NonSquare("hermitian_eigendecompose: matrix is not square");
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTol) {
    throw NonHermitian("hermitian_eigendecompose: ||M - M^dagger||_max = " + std::to_string(defect));
  }
  const std::size_t n = m.rows();
  ComplexMatrix a = hermitian_part(m);
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double norm = a.frobenius();
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && norm > 0.0; ++sweep) {
    if (off_diagonal_norm(a) <= 1e-14 * norm) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double b = std::abs(apq);
        if (b == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Negligible against both diagonal entries: drop it.
        if (sweep > 3 && std::abs(app) + 1e3 * b == std::abs(app) &&
            std::abs(aqq) + 1e3 * b == std::abs(aqq)) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const cplx e = apq / b;
        const cplx ec = std::conj(e);
        const double tau = (aqq - app) / (2.0 * b);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // G = [[c, s], [-s conj(e), c conj(e)]] acting on the (p, q) plane.
        const cplx gqp = -s * ec;
        const cplx gqq = c * ec;
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * c + akq * gqp;
          a(k, q) = akp * s + akq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = c * apk + std::conj(gqp) * aqk;
          a(q, k) = s * apk + std::conj(gqq) * aqk;
        }
        a(p, p) = app - t * b;
        a(q, q) = aqq + t * b;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = vkp * c + vkq * gqp;
          v(k, q) = vkp * s + vkq * gqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });
  HermitianEig out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

namespace {

ComplexMatrix spectral_sum(const ComplexMatrix& vecs, std::span<const double> f) {
  const std::size_t n = vecs.rows();
  ComplexMatrix r(n, n);
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f[k] == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vik = vecs(i, k) * f[k];
      for (std::size_t j = i; j < n; ++j) r(i, j) += vik * std::conj(vecs(j, k));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    r(i, i) = r(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) r(j, i) = std::conj(r(i, j));
  }
  return r;
}

}  // namespace

ComplexMatrix reconstruct(const HermitianEig& eig) {
  return spectral_sum(eig.vectors, eig.values);
}

double SpectralFunction::operator()(double x) const {
  switch (kind_) {
    case Kind::log2: return std::log2(x);
    case Kind::ln: return std::log(x);
    case Kind::sqrt: return std::sqrt(x);
    case Kind::inv_sqrt: return 1.0 / std::sqrt(x);
    case Kind::exp2: return std::exp2(x);
    case Kind::exp: return std::exp(x);
    case Kind::power: return std::pow(x, exponent_);
  }
  return 0.0;
}

std::size_t support_rank(std::span<const double> values) {
  if (values.empty() || values.front() <= 0.0) return 0;
  const double cutoff = kSupportCutoff * values.front();
  std::size_t r = 0;
  while (r < values.size() && values[r] > cutoff) ++r;
  return r;
}

ComplexMatrix matrix_function_on_support(const HermitianEig& eig, SpectralFunction f) {
  if (!eig.values.empty() && eig.values.back() < -kHermitianTol) {
    throw NegativeSpectrum("matrix_function_on_support: eigenvalue " +
                           std::to_string(eig.values.back()) + " below -1e-9");
  }
  const std::size_t r = support_rank(eig.values);
  std::vector<double> fv(eig.values.size(), 0.0);
  for (std::size_t k = 0; k < r; ++k) fv[k] = f(eig.values[k]);
  return spectral_sum(eig.vectors, fv);
}

ComplexMatrix matrix_function_on_support(const ComplexMatrix& m, SpectralFunction f) {
  return matrix_function_on_support(hermitian_eigendecompose(m), f);
}

ComplexMatrix hermitian_function(const HermitianEig& eig, SpectralFunction f) {
  std::vector<double> fv(eig.values.size());
  for (std::size_t k = 0; k < fv.size(); ++k) fv[k] = f(eig.values[k]);
  return spectral_sum(eig.vectors, fv);
}

ComplexMatrix hermitian_function(const ComplexMatrix& m, SpectralFunction f) {
  return hermitian_function(hermitian_eigendecompose(m), f);
}

ComplexMatrix support_projector(const HermitianEig& eig) {
  const std::size_t r = support_rank(eig.values);
  std::vector<double> ones(eig.values.size(), 0.0);
  std::fill(ones.begin(), ones.begin() + static_cast<std::ptrdiff_t>(r), 1.0);
  return spectral_sum(eig.vectors, ones);
}

ComplexMatrix kernel_projector(const HermitianEig& eig) {
  const std::size_t r = support_rank(eig.values);
  std::vector<double> ones(eig.values.size(), 1.0);
  std::fill(ones.begin(), ones.begin() + static_cast<std::ptrdiff_t>(r), 0.0);
  return spectral_sum(eig.vectors, ones);
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx(0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return r;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t d1, std::size_t d2,
                            std::size_t keep) {
  if (!m.square() || m.rows() != d1 * d2) {
    throw DimensionMismatch("partial_trace: matrix size is not d1*d2");
  }
  if (keep > 1) throw DimensionMismatch("partial_trace: keep must be 0 or 1");
  if (keep == 0) {
    ComplexMatrix r(d1, d1);
    for (std::size_t a = 0; a < d1; ++a)
      for (std::size_t b = 0; b < d1; ++b)
        for (std::size_t j = 0; j < d2; ++j) r(a, b) += m(a * d2 + j, b * d2 + j);
    return r;
  }
  ComplexMatrix r(d2, d2);
  for (std::size_t i = 0; i < d2; ++i)
    for (std::size_t j = 0; j < d2; ++j)
      for (std::size_t a = 0; a < d1; ++a) r(i, j) += m(a * d2 + i, a * d2 + j);
  return r;
}

ComplexMatrix polar_isometry(const ComplexMatrix& m) {
  return m * matrix_function_on_support(adjoint_times(m, m), SpectralFunction::inv_sqrt());
}

double trace_norm(const ComplexMatrix& hermitian) {
  const auto eig = hermitian_eigendecompose(hermitian);
  double s = 0.0;
  for (double v : eig.values) s += std::abs(v);
  return s;
}

}  // namespace qcap
