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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcap/channels.hpp"
#include "qcap/state.hpp"

namespace qcap {

struct OptimizerOptions {
  std::uint64_t seed = 0;
  int restarts = 32;
  /// 0 selects d_A².
  std::size_t max_ensemble_size = 0;
  double obj_tol = 1e-7;
  double grad_tol = 1e-6;
  int max_iters = 5000;

  /// Throws InvalidOptions unless every field is positive and the ensemble
  /// cap is at least d_A.
  void validate(std::size_t dim_in) const;
  std::size_t ensemble_cap(std::size_t dim_in) const;
};

/// Linear input constraint Tr Hρ ≤ h.
struct ConstraintSpec {
  ComplexMatrix H;
  double h = 0.0;

  /// Throws InvalidState for a non-Hermitian or non-PSD H or h ≤ 0, and
  /// Infeasible when λ_min(H) > h.
  void validate(std::size_t dim_in) const;
};

/// Outcome of a maximization (or minimization) over states or ensembles.
/// `state` is the arg-max state, or the average of `ensemble` when one is
/// reported. `certificate_gap` is an upper bound minus `value`; for
/// minimizations it is the stationarity residual in bits.
struct CapacityResult {
  double value = 0.0;
  DensityMatrix state;
  std::optional<Ensemble> ensemble;
  double certificate_gap = 0.0;
  bool converged = true;
  int iterations = 0;
};

struct ConstrainedResult {
  CapacityResult result;
  /// False when an unconstrained optimizer already satisfies Tr Hρ ≤ h.
  bool active = false;
  /// Lagrange multiplier of the constraint (bits per unit of H).
  double multiplier = 0.0;
  double energy = 0.0;
};

struct GibbsResult {
  DensityMatrix state;
  double lambda = 0.0;
  /// Set when h ≥ Tr H/d_A; the state is then ρ_c.
  bool constraint_slack = false;
};

/// χ_Φ(ρ) = H(Φρ) − Ĥ_Φ(ρ); the ensemble is a pure decomposition of ρ
/// attaining the roof value found.
CapacityResult chi_function(const KrausChannel& ch, const DensityMatrix& rho, const OptimizerOptions& opts = {});

/// Ĥ_Φ(ρ): minimal average output entropy over pure decompositions of ρ.
CapacityResult output_entropy_roof(const KrausChannel& ch, const DensityMatrix& rho,
                                   const OptimizerOptions& opts = {});

CapacityResult holevo_capacity(const KrausChannel& ch, const OptimizerOptions& opts = {});
CapacityResult ea_capacity(const KrausChannel& ch, const OptimizerOptions& opts = {});

/// Gradient of I(·, Φ) in bits at a full-rank state, defined up to a multiple
/// of the identity.
ComplexMatrix ea_gradient(const KrausChannel& ch, const DensityMatrix& rho);

/// max_ρ [H(Φρ) − H(Φ̂ρ)].
CapacityResult q1(const KrausChannel& ch, const OptimizerOptions& opts = {});

CapacityResult min_output_entropy(const KrausChannel& ch, const OptimizerOptions& opts = {});

/// Δ_Φ(ρ) = H(ρ) − H(Φ̂ρ) + Ĥ_Φ(ρ); the ensemble attains the roof value.
CapacityResult delta(const KrausChannel& ch, const DensityMatrix& rho, const OptimizerOptions& opts = {});

/// Δ_Φ(ρ) evaluated twice: as H(ρ) − χ_Φ̂(ρ) with the roof taken through Φ̂,
/// and as I(ρ,Φ) − χ_Φ(ρ) with the roof taken through Φ.
std::pair<double, double> delta_both_routes(const KrausChannel& ch, const DensityMatrix& rho,
                                            const OptimizerOptions& opts = {});

/// D(Φ) = max_ρ Δ_Φ(ρ).
CapacityResult max_delta(const KrausChannel& ch, const OptimizerOptions& opts = {});

ConstrainedResult constrained_holevo(const KrausChannel& ch, const ConstraintSpec& c,
                                     const OptimizerOptions& opts = {});
ConstrainedResult constrained_ea(const KrausChannel& ch, const ConstraintSpec& c,
                                 const OptimizerOptions& opts = {});

/// exp(−λH)/Tr with Tr Hρ = h. Throws DegenerateH when H ∝ I and
/// Infeasible when h < λ_min(H).
GibbsResult gibbs_state(const ConstraintSpec& c);

struct BoundLine {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool pass = true;
};

struct BoundsReport {
  CapacityResult holevo;
  CapacityResult holevo_env;
  CapacityResult ea;
  CapacityResult q1;
  CapacityResult min_entropy;
  /// Average of the optimal ensemble, and the mutual-information maximizer.
  DensityMatrix rho1;
  DensityMatrix rho2;
  double chi_env_rho2 = 0.0;
  double roof_rho2 = 0.0;
  std::size_t dim_env = 0;
  /// H(Φρ) ≥ H(ρ) held on every sampled and locally minimized state.
  bool output_entropy_dominates = false;
  std::vector<BoundLine> lines;
  bool all_pass = true;
};

BoundsReport bounds_report(const KrausChannel& ch, const OptimizerOptions& opts = {});

/// Closed forms for a channel covariant under the supplied unitary pairs, with
/// an irreducible input action. Throws CovarianceNotVerified otherwise.
std::pair<CapacityResult, CapacityResult> covariant_capacities(const KrausChannel& ch,
                                                               const std::vector<ComplexMatrix>& input_unitaries,
                                                               const std::vector<ComplexMatrix>& output_unitaries,
                                                               const OptimizerOptions& opts = {});

}  // namespace qcap
