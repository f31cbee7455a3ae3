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

#include "qcap/state.hpp"

#include <cmath>
#include <string>

namespace qcap {

void validate_state(const ComplexMatrix& m, double tol) {
  if (!m.square()) throw InvalidState("density matrix must be square");
  const double defect = hermiticity_defect(m);
  if (defect > tol) throw InvalidState("density matrix is not Hermitian (defect " + std::to_string(defect) + ")");
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > tol) throw InvalidState("density matrix trace is " + std::to_string(tr));
  const auto eig = hermitian_eigendecompose(m);
  if (eig.values.back() < -tol) {
    throw InvalidState("density matrix has eigenvalue " + std::to_string(eig.values.back()));
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  validate_state(m_);
  m_ = hermitian_part(m_);
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix m) {
  return DensityMatrix(hermitian_part(m), Unchecked{});
}

DensityMatrix DensityMatrix::pure(const ComplexMatrix& vec) {
  const double n2 = std::real(inner(vec, vec));
  if (n2 <= 0.0) throw InvalidState("pure state from a zero vector");
  return DensityMatrix(ComplexMatrix::outer(vec) * (1.0 / n2), Unchecked{});
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t d) {
  return DensityMatrix(ComplexMatrix::identity(d) * (1.0 / static_cast<double>(d)), Unchecked{});
}

Ensemble::Ensemble(std::vector<EnsembleItem> items) : items_(std::move(items)) {
  if (items_.empty()) throw InvalidState("ensemble must be nonempty");
  double total = 0.0;
  for (const auto& it : items_) {
    if (it.weight < 0.0) throw InvalidState("ensemble weight is negative");
    if (it.state.dim() != items_.front().state.dim()) {
      throw DimensionMismatch("ensemble states differ in dimension");
    }
    total += it.weight;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw InvalidState("ensemble weights sum to " + std::to_string(total));
  }
}

Ensemble Ensemble::from_vectors(std::span<const double> weights,
                                const std::vector<ComplexMatrix>& vectors) {
  if (weights.size() != vectors.size()) throw DimensionMismatch("ensemble: weights/vectors length");
  std::vector<EnsembleItem> items;
  items.reserve(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double n = std::sqrt(std::real(inner(vectors[i], vectors[i])));
    ComplexMatrix unit = vectors[i] * (1.0 / n);
    items.push_back({weights[i], DensityMatrix::pure(unit), unit});
  }
  return Ensemble(std::move(items));
}

DensityMatrix Ensemble::average() const {
  ComplexMatrix avg(dim(), dim());
  for (const auto& it : items_) avg += it.state.matrix() * it.weight;
  return DensityMatrix::unchecked(std::move(avg));
}

Ensemble Ensemble::pruned(double min_weight) const {
  std::vector<EnsembleItem> kept;
  double total = 0.0;
  for (const auto& it : items_) {
    if (it.weight > min_weight) {
      kept.push_back(it);
      total += it.weight;
    }
  }
  if (kept.empty()) return *this;
  for (auto& it : kept) it.weight /= total;
  return Ensemble(std::move(kept));
}

}  // namespace qcap
