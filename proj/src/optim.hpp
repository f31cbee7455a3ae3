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

// Shared numerical kernels for the capacity optimizers. Everything here works
// in nats; callers convert at the boundary.

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "qcap/capacity.hpp"
#include "qcap/channels.hpp"
#include "qcap/random.hpp"

namespace qcap::detail {

inline constexpr double kLn2 = 0.69314718055994530942;
inline constexpr double kLogFloor = 1e-300;

/// ln(max(λ, 1e-300)) on the whole spectrum.
ComplexMatrix log_floor(const HermitianEig& eig);
/// −Σ λ ln λ over positive eigenvalues (no normalization).
double entropy_nats(std::span<const double> values);

/// Output data for one unnormalized input vector w: Y = [V_k w]_k,
/// S = Φ(ww†) = Y Y†, h = Tr S · H(S/Tr S), and grad = −Φ*(ln σ) w with
/// σ = S/Tr S, the Wirtinger gradient of h.
struct OutputTerm {
  ComplexMatrix y;
  ComplexMatrix s;
  double h = 0.0;
  ComplexMatrix grad;
};

OutputTerm output_term(const KrausChannel& ch, const ComplexMatrix& w, bool with_grad = true);
/// Σ_k V_k† (L y_k) for the columns y_k of Y; equals Φ*(L) w when Y = [V_k w].
ComplexMatrix dual_on_columns(const KrausChannel& ch, const ComplexMatrix& l, const ComplexMatrix& y);

/// The channel with the smaller output among Φ and Φ̂; pure-state output
/// entropies of the two coincide.
const KrausChannel& roof_channel(const KrausChannel& ch, const KrausChannel& env);

/// Rows-orthonormal matrix nearest to U (polar factor of the rows).
ComplexMatrix orthonormalize_rows(const ComplexMatrix& u);

/// Local minimum of h(Φψψ†) + <ψ|B|ψ> over unit vectors, from `psi0`.
struct SphereResult {
  ComplexMatrix psi;
  double value = 0.0;
  double grad_norm = 0.0;
};
SphereResult sphere_minimize(const KrausChannel& ch, const ComplexMatrix& b, ComplexMatrix psi0, int max_iters,
                             double grad_tol);

/// Best of several sphere_minimize runs from the given starts plus `random_starts`
/// random vectors.
SphereResult sphere_minimize_multistart(const KrausChannel& ch, const ComplexMatrix& b,
                                        const std::vector<ComplexMatrix>& starts, std::size_t random_starts,
                                        random::Rng& rng, int max_iters, double grad_tol);

/// Convex-roof descent: minimize Σ h(Φ(w_i w_i†)) over W = X U, U U† = I.
struct RoofResult {
  ComplexMatrix u;
  ComplexMatrix w;
  double value = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
};
RoofResult roof_descend(const KrausChannel& ch, const ComplexMatrix& x, ComplexMatrix u0, int max_iters,
                        double obj_tol, double grad_tol);

/// Multi-start roof minimization at ρ = X X†. `warm` (r × m), when given, is
/// used as restart 0 instead of the eigen-ensemble.
RoofResult roof_minimize(const KrausChannel& ch, const ComplexMatrix& x, std::size_t m, int restarts,
                         std::uint64_t seed, int max_iters, double obj_tol, double grad_tol,
                         const ComplexMatrix* warm = nullptr);

/// √ρ factor X = V_r √Λ_r of rank r.
ComplexMatrix sqrt_factor(const ComplexMatrix& rho);

/// Pure ensemble from the columns of W, dropping zero columns.
Ensemble ensemble_from_columns(const ComplexMatrix& w);

/// Mirror ascent over states: ln ρ' = ln ρ + η G(ρ), normalized.
struct MirrorObjective {
  // Returns the objective and fills `grad` with its gradient (nats).
  std::function<double(const DensityMatrix&, ComplexMatrix& grad)> eval;
};
struct MirrorResult {
  DensityMatrix state;
  ComplexMatrix log_state;
  double value = 0.0;
  int iterations = 0;
  bool stalled = false;
};
MirrorResult mirror_ascent(const MirrorObjective& obj, const ComplexMatrix& log_start, int max_iters,
                           double obj_tol, const std::function<bool(const MirrorResult&)>& done = {});

/// Gradient ascent over ρ = W W† with ‖W‖_F = 1, from W = `w0` (d × d).
/// Unlike mirror ascent it reaches rank-deficient maximizers at finite W.
/// `log_state` of the result holds the final W.
MirrorResult factor_ascent(const MirrorObjective& obj, ComplexMatrix w0, int max_iters, double obj_tol,
                           double grad_tol);

/// State exp(L)/Tr exp(L).
DensityMatrix state_from_log(const ComplexMatrix& l);

}  // namespace qcap::detail
