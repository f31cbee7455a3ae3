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

#include <optional>
#include <vector>

#include "qcap/matops.hpp"

namespace qcap {

/// Unit-trace positive Hermitian matrix.
class DensityMatrix {
 public:
  /// The unique state of a one-dimensional space.
  DensityMatrix() : m_(ComplexMatrix::identity(1)) {}
  /// Validates Hermiticity, positivity and unit trace within 1e-9.
  explicit DensityMatrix(ComplexMatrix m);

  /// Wraps a matrix known to be a state (output of a channel applied to a
  /// state, a normalized exponential, ...). Only the Hermitian part is kept.
  static DensityMatrix unchecked(ComplexMatrix m);
  /// |v><v| / <v|v>.
  static DensityMatrix pure(const ComplexMatrix& vec);
  static DensityMatrix maximally_mixed(std::size_t d);

  std::size_t dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  operator const ComplexMatrix&() const { return m_; }  // NOLINT(google-explicit-constructor)

 private:
  struct Unchecked {};
  DensityMatrix(ComplexMatrix m, Unchecked) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// Throws InvalidState if `m` is not a state within `tol`.
void validate_state(const ComplexMatrix& m, double tol = kHermitianTol);

struct EnsembleItem {
  double weight;
  DensityMatrix state;
  /// Set when the state is pure: a unit vector with state = |v><v|.
  std::optional<ComplexMatrix> vector;
};

/// Weighted family of states {π_i, ρ_i} sharing one dimension.
class Ensemble {
 public:
  explicit Ensemble(std::vector<EnsembleItem> items);

  /// Pure-state ensemble from weights and unit column vectors.
  static Ensemble from_vectors(std::span<const double> weights,
                               const std::vector<ComplexMatrix>& vectors);

  const std::vector<EnsembleItem>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  std::size_t dim() const { return items_.front().state.dim(); }
  DensityMatrix average() const;

  /// Drops items whose weight is at or below `min_weight` and renormalizes.
  Ensemble pruned(double min_weight) const;

 private:
  std::vector<EnsembleItem> items_;
};

}  // namespace qcap
