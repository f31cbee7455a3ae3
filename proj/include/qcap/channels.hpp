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

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "qcap/matops.hpp"
#include "qcap/state.hpp"

namespace qcap {

/// Default absolute tolerance for structure predicates (max-entry norms).
inline constexpr double kStructureTol = 1e-8;

/// Quantum channel ρ ↦ Σ_i V_i ρ V_i† on C^dim_in → C^dim_out.
class KrausChannel {
 public:
  /// Throws DimensionMismatch on shape errors and NotTracePreserving when
  /// ||Σ V_i†V_i − I||_max exceeds `tol`.
  KrausChannel(std::size_t dim_in, std::size_t dim_out, std::vector<ComplexMatrix> kraus,
               double tol = kHermitianTol);

  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_out() const { return dim_out_; }
  std::size_t num_kraus() const { return kraus_.size(); }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

 private:
  std::size_t dim_in_;
  std::size_t dim_out_;
  std::vector<ComplexMatrix> kraus_;
};

/// Σ_{a,b} |a><b| ⊗ Φ(|a><b|), input-major.
struct ChoiMatrix {
  std::size_t dim_in;
  std::size_t dim_out;
  ComplexMatrix matrix;
};

/// Φ(ρ) = Σ_k <k|ρ|k> σ_k for the orthonormal columns |k> of `basis`.
struct CqStructure {
  ComplexMatrix basis;
  std::vector<DensityMatrix> sigmas;
};

/// Negative outcome of classical-quantum detection. `witness` is the largest
/// commutator norm, or the reconstruction error when commutation passed.
struct NotCq {
  double witness;
  std::string reason;
};

using CqDetection = std::variant<CqStructure, NotCq>;

/// Linear action on an arbitrary operator; no state checks.
ComplexMatrix apply(const KrausChannel& ch, const ComplexMatrix& op);
DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

/// Heisenberg-picture map Σ_i V_i† A V_i.
ComplexMatrix dual_apply(const KrausChannel& ch, const ComplexMatrix& a);

/// Complementary channel with Kraus family (F_m)_{i,a} = (V_i)_{m,a}.
KrausChannel complement(const KrausChannel& ch);

ChoiMatrix choi(const KrausChannel& ch);
/// Kraus operators from Choi eigenvectors above the support cutoff.
KrausChannel from_choi(const ChoiMatrix& c);
/// Kraus family of minimal size (the Choi rank).
KrausChannel minimal_kraus(const KrausChannel& ch);

/// W_k = Σ_i <ψ_k|i> V_i for the columns ψ_k of `vectors`, which must
/// resolve the identity on the Kraus index space.
KrausChannel rekraus_from_overcomplete(const KrausChannel& ch, const ComplexMatrix& vectors);

/// outer ∘ inner.
KrausChannel compose(const KrausChannel& outer, const KrausChannel& inner);
KrausChannel tensor(const KrausChannel& a, const KrausChannel& b);
/// Φ restricted to states supported on the range of `isometry` (dim_in × k).
KrausChannel restrict_input(const KrausChannel& ch, const ComplexMatrix& isometry);

CqDetection detect_classical_quantum(const KrausChannel& ch, double tol = kStructureTol);

/// True iff Φ(V·V†) = WΦ(·)W† on all matrix units for every supplied pair.
bool verify_covariance(const KrausChannel& ch, const std::vector<ComplexMatrix>& input_unitaries,
                       const std::vector<ComplexMatrix>& output_unitaries,
                       double tol = kStructureTol);

/// True iff Ψ∘Φ equals complement(minimal_kraus(Φ)) as Choi matrices.
bool verify_degrading(const KrausChannel& ch, const KrausChannel& degrader,
                      double tol = kStructureTol);

/// Channel whose action on matrix units is given by `action`; built through
/// Choi-matrix extraction.
KrausChannel from_action(std::size_t dim_in, std::size_t dim_out,
                         const std::function<ComplexMatrix(const ComplexMatrix&)>& action);

namespace catalog {

KrausChannel noiseless(std::size_t d);
KrausChannel unitary(const ComplexMatrix& u);
/// Π(ρ) = Σ <k|ρ|k> |k><k| in the computational basis.
KrausChannel dephasing(std::size_t d);
/// Same, in the basis given by the orthonormal columns of `basis`.
KrausChannel dephasing(const ComplexMatrix& basis);
KrausChannel cq_channel(const CqStructure& s);
/// ρ ↦ Σ <φ_k|ρ|φ_k> |k><k| for columns φ_k with Σ|φ_k><φ_k| = I.
KrausChannel measurement_channel(const ComplexMatrix& vectors);
/// ρ ↦ Σ Tr(M_k ρ) |k><k| for a POVM {M_k}.
KrausChannel qc_channel(const std::vector<ComplexMatrix>& povm);
/// ρ ↦ Σ Tr(M_k ρ) τ_k for a POVM {M_k} and output states {τ_k}.
KrausChannel measure_prepare(const std::vector<ComplexMatrix>& povm,
                             const std::vector<DensityMatrix>& states);
/// ρ ↦ (1 − p)ρ + p Tr(ρ) I/d.
KrausChannel depolarizing(std::size_t d, double p);
/// ρ ↦ Tr(ρ) σ.
KrausChannel completely_depolarizing(std::size_t d_in, const DensityMatrix& sigma);
KrausChannel completely_depolarizing(std::size_t d);
/// Columns √(2/3)(cos 2πk/3, sin 2πk/3), k = 0, 1, 2.
ComplexMatrix trine_vectors();
KrausChannel trine();
/// The 8 → 4 channel on H1⊗H2⊗H3 (qubits, in that order) with output
/// K = H1⊗H2: the |+> branch of H3 is dephased in the product basis of K,
/// the |−> branch keeps H1 and replaces H2 by I/2.
KrausChannel bsst_plus();
/// The d-dimensional generalized Pauli (Weyl) operators X^a Z^b.
std::vector<ComplexMatrix> weyl_operators(std::size_t d);

}  // namespace catalog

}  // namespace qcap
