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
#include <span>
#include <vector>

#include "qcap/capacity.hpp"
#include "qcap/channels.hpp"
#include "qcap/state.hpp"

namespace qcap {

/// Θ(σ) = ρ̂^{1/2} Φ̂*(Φ̂(ρ̂)^{-1/2} σ Φ̂(ρ̂)^{-1/2}) ρ̂^{1/2}, kept in action form.
/// Θ maps the environment of `source` back to its input and inverts Φ̂ on ρ̂.
class RecoveryChannel {
 public:
  RecoveryChannel(DensityMatrix base_state, KrausChannel source);

  const DensityMatrix& base_state() const { return base_; }
  /// Φ̂ = complement(minimal_kraus(Φ)).
  const KrausChannel& source_channel() const { return source_; }
  /// Projector onto supp Φ̂(ρ̂).
  const ComplexMatrix& domain_projector() const { return domain_; }

  ComplexMatrix apply(const ComplexMatrix& sigma) const;
  /// Choi matrix of Θ on the domain, Σ_ij E_ij ⊗ Θ(|v_i><v_j|) over an
  /// orthonormal basis {v_i} of the domain.
  ComplexMatrix domain_choi() const;

 private:
  DensityMatrix base_;
  KrausChannel source_;
  ComplexMatrix domain_;
  ComplexMatrix domain_basis_;
  ComplexMatrix base_sqrt_;
  ComplexMatrix out_inv_sqrt_;
};

/// Petz map of the complement of Φ at ρ̂ = Σ π̂_i ρ_i, or at `base` directly
/// when no weights are given. Throws DegenerateBase for a zero base state.
RecoveryChannel petz_recovery(const KrausChannel& ch, const DensityMatrix& base);
RecoveryChannel petz_recovery(const KrausChannel& ch, std::span<const DensityMatrix> states,
                              std::span<const double> weights);

struct InversionCheck {
  /// ‖Θ(Φ̂(ρ_i)) − ρ_i‖_1 per state.
  std::vector<double> residuals;
  bool pass = true;
};

InversionCheck check_inversion(const RecoveryChannel& theta, std::span<const DensityMatrix> states, double tol);

/// Span of the pure states of near-optimal Holevo ensembles. This is only a
/// lower bound on the subspace containing every optimal ensemble.
struct ChiEssential {
  ComplexMatrix projector;
  /// Orthonormal basis of the span (d_A × dimension).
  ComplexMatrix isometry;
  std::size_t dimension = 0;
  double holevo = 0.0;
};

ChiEssential chi_essential_subspace(const KrausChannel& ch, const OptimizerOptions& opts = {});

enum class Verdict { Equal, Gap, Inconclusive };

const char* to_string(Verdict v);

struct EqualityVerdict {
  Verdict verdict = Verdict::Inconclusive;
  /// C_ea − C̄ in bits.
  double gap_estimate = 0.0;
  CapacityResult holevo;
  CapacityResult ea;
  std::optional<Ensemble> ensemble;
  std::vector<double> inversion_residuals;
  bool inversion_pass = false;
  std::size_t chi_essential_dimension = 0;
  std::optional<CqStructure> restriction;
};

/// C̄ = C_ea test: a numerical gap above 10·obj_tol gives Gap; Equal needs
/// the recovery map to invert Φ̂ on the optimal ensemble and the channel
/// restricted to the χ-essential span to be classical-quantum.
EqualityVerdict equality_certificate(const KrausChannel& ch, const OptimizerOptions& opts = {});

}  // namespace qcap
