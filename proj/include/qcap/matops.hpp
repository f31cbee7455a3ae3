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

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "qcap/errors.hpp"

namespace qcap {

using cplx = std::complex<double>;

/// Relative support cutoff shared by every spectral routine: eigenvalues at
/// or below `kSupportCutoff * lambda_max` are treated as outside the support.
inline constexpr double kSupportCutoff = 1e-10;

/// Tolerance on the Hermiticity and positivity preconditions.
inline constexpr double kHermitianTol = 1e-9;

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix diagonal(std::span<const double> diag);
  /// Column vector built from `v`.
  static ComplexMatrix column(std::span<const cplx> v);
  /// |v><v| for a column vector v.
  static ComplexMatrix outer(const ComplexMatrix& v);
  /// |a><b| on an n-dimensional space.
  static ComplexMatrix unit(std::size_t n, std::size_t a, std::size_t b);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  cplx trace() const;

  ComplexMatrix col(std::size_t c) const;
  void set_col(std::size_t c, const ComplexMatrix& v);
  /// Columns [first, first + count).
  ComplexMatrix cols_range(std::size_t first, std::size_t count) const;

  double max_abs() const;
  double frobenius() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(ComplexMatrix a, double s) { return a *= cplx(s); }
  friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= cplx(s); }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// A†·B without materializing the adjoint.
ComplexMatrix adjoint_times(const ComplexMatrix& a, const ComplexMatrix& b);
/// A·B†.
ComplexMatrix times_adjoint(const ComplexMatrix& a, const ComplexMatrix& b);
/// <a|b> for column vectors (conjugate-linear in a).
cplx inner(const ComplexMatrix& a, const ComplexMatrix& b);
/// Re Tr(A† B) for equally shaped matrices.
double real_inner(const ComplexMatrix& a, const ComplexMatrix& b);
/// Tr(A·B) for square matrices of equal size.
cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Max-entry distance.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// Max-entry norm of M − M†.
double hermiticity_defect(const ComplexMatrix& m);
/// (M + M†)/2.
ComplexMatrix hermitian_part(const ComplexMatrix& m);
/// Commutator AB − BA.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

struct HermitianEig {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // columns are orthonormal eigenvectors
};

/// Cyclic complex Jacobi eigensolver. Throws NonSquare / NonHermitian.
HermitianEig hermitian_eigendecompose(const ComplexMatrix& m);

/// Σ λ_i v_i v_i†.
ComplexMatrix reconstruct(const HermitianEig& eig);

/// Scalar function applied to a Hermitian spectrum.
class SpectralFunction {
 public:
  enum class Kind { log2, ln, sqrt, inv_sqrt, exp2, exp, power };

  static SpectralFunction log2() { return SpectralFunction(Kind::log2); }
  static SpectralFunction ln() { return SpectralFunction(Kind::ln); }
  static SpectralFunction sqrt() { return SpectralFunction(Kind::sqrt); }
  static SpectralFunction inv_sqrt() { return SpectralFunction(Kind::inv_sqrt); }
  static SpectralFunction exp2() { return SpectralFunction(Kind::exp2); }
  static SpectralFunction exp() { return SpectralFunction(Kind::exp); }
  static SpectralFunction power(double p) { return SpectralFunction(Kind::power, p); }

  Kind kind() const { return kind_; }
  double exponent() const { return exponent_; }
  double operator()(double x) const;

 private:
  explicit SpectralFunction(Kind k, double p = 1.0) : kind_(k), exponent_(p) {}
  Kind kind_;
  double exponent_;
};

/// Applies f to eigenvalues strictly above the support cutoff; the rest map
/// to 0. Eigenvalues in [−1e-9, 0) are clipped; below that NegativeSpectrum.
ComplexMatrix matrix_function_on_support(const ComplexMatrix& m, SpectralFunction f);
ComplexMatrix matrix_function_on_support(const HermitianEig& eig, SpectralFunction f);

/// Applies f to every eigenvalue of a Hermitian matrix (no support rule).
ComplexMatrix hermitian_function(const ComplexMatrix& m, SpectralFunction f);
ComplexMatrix hermitian_function(const HermitianEig& eig, SpectralFunction f);

/// Index of the last eigenvalue above the support cutoff, plus one.
std::size_t support_rank(std::span<const double> descending_values);

/// Projector onto the span of eigenvectors above / at-or-below the cutoff.
ComplexMatrix support_projector(const HermitianEig& eig);
ComplexMatrix kernel_projector(const HermitianEig& eig);

/// Kronecker product, A-major index ordering.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Partial trace of a (d1·d2)-square matrix. `keep` is 0 (first factor) or 1.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t d1, std::size_t d2,
                            std::size_t keep);

/// M (M†M)^{-1/2}: nearest matrix with orthonormal columns.
ComplexMatrix polar_isometry(const ComplexMatrix& m);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const ComplexMatrix& hermitian);

}  // namespace qcap
