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

#include "qcap/petz.hpp"

#include <algorithm>
#include <cmath>

namespace qcap {

namespace {

// Inversion residual allowed for numerically optimal ensembles, whose states
// carry errors of order √obj_tol.
constexpr double kInversionTol = 1e-3;
// Commutator and reconstruction tolerance for the c-q test on a numerically
// estimated subspace.
constexpr double kRestrictionCqTol = 1e-4;
constexpr double kSpanCutoff = 1e-4;

}  // namespace

RecoveryChannel::RecoveryChannel(DensityMatrix base_state, KrausChannel source)
    : base_(std::move(base_state)), source_(std::move(source)) {
  if (base_.dim() != source_.dim_in()) throw DimensionMismatch("base state does not match the source channel");
  const auto be = hermitian_eigendecompose(base_.matrix());
  if (support_rank(be.values) == 0) throw DegenerateBase("base state has empty support");
  base_sqrt_ = matrix_function_on_support(be, SpectralFunction::sqrt());
  const auto oe = hermitian_eigendecompose(hermitian_part(qcap::apply(source_, base_.matrix())));
  out_inv_sqrt_ = matrix_function_on_support(oe, SpectralFunction::inv_sqrt());
  domain_ = support_projector(oe);
  const std::size_t r = support_rank(oe.values);
  domain_basis_ = ComplexMatrix(oe.vectors.rows(), r);
  for (std::size_t k = 0; k < r; ++k) domain_basis_.set_col(k, oe.vectors.col(k));
}

ComplexMatrix RecoveryChannel::apply(const ComplexMatrix& sigma) const {
  if (sigma.rows() != source_.dim_out() || !sigma.square()) {
    throw DimensionMismatch("recovery input does not live on the environment");
  }
  return base_sqrt_ * dual_apply(source_, out_inv_sqrt_ * sigma * out_inv_sqrt_) * base_sqrt_;
}

ComplexMatrix RecoveryChannel::domain_choi() const {
  const std::size_t r = domain_basis_.cols();
  const std::size_t d = source_.dim_in();
  ComplexMatrix c(r * d, r * d);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const ComplexMatrix block = apply(times_adjoint(domain_basis_.col(i), domain_basis_.col(j)));
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) c(i * d + a, j * d + b) = block(a, b);
    }
  return c;
}

RecoveryChannel petz_recovery(const KrausChannel& ch, const DensityMatrix& base) {
  if (base.dim() != ch.dim_in()) throw DimensionMismatch("base state does not match channel input");
  return RecoveryChannel(base, complement(minimal_kraus(ch)));
}

RecoveryChannel petz_recovery(const KrausChannel& ch, std::span<const DensityMatrix> states,
                              std::span<const double> weights) {
  if (states.empty() || states.size() != weights.size()) {
    throw DimensionMismatch("petz_recovery: one weight per state");
  }
  ComplexMatrix avg(ch.dim_in(), ch.dim_in());
  double total = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (weights[i] < 0.0) throw InvalidState("negative ensemble weight");
    avg += states[i].matrix() * weights[i];
    total += weights[i];
  }
  if (total <= 0.0) throw DegenerateBase("all ensemble weights vanish");
  return petz_recovery(ch, DensityMatrix::unchecked(avg * (1.0 / total)));
}

InversionCheck check_inversion(const RecoveryChannel& theta, std::span<const DensityMatrix> states, double tol) {
  InversionCheck out;
  for (const auto& s : states) {
    if (s.dim() != theta.source_channel().dim_in()) throw DimensionMismatch("state does not match channel input");
    const ComplexMatrix back = theta.apply(apply(theta.source_channel(), s.matrix()));
    out.residuals.push_back(trace_norm(hermitian_part(back - s.matrix())));
    out.pass = out.pass && out.residuals.back() <= tol;
  }
  return out;
}

ChiEssential chi_essential_subspace(const KrausChannel& ch, const OptimizerOptions& opts) {
  opts.validate(ch.dim_in());
  std::vector<CapacityResult> runs;
  for (int i = 0; i < opts.restarts; ++i) {
    OptimizerOptions one = opts;
    one.restarts = 1;
    one.seed = opts.seed + 0x9e37ULL * static_cast<std::uint64_t>(i + 1);
    runs.push_back(holevo_capacity(ch, one));
  }
  const auto best = std::max_element(runs.begin(), runs.end(),
                                     [](const auto& a, const auto& b) { return a.value < b.value; });
  if (!best->converged) throw NotConverged("no Holevo run reached its certificate tolerance");
  const std::size_t d = ch.dim_in();
  ComplexMatrix span(d, d);
  for (const auto& r : runs) {
    if (r.value < best->value - 10.0 * opts.obj_tol) continue;
    for (const auto& it : r.ensemble->items()) span += it.state.matrix() * it.weight;
  }
  const auto eig = hermitian_eigendecompose(hermitian_part(span));
  ChiEssential out;
  out.holevo = best->value;
  for (double l : eig.values)
    if (l > kSpanCutoff * eig.values.front()) ++out.dimension;
  out.isometry = ComplexMatrix(d, out.dimension);
  for (std::size_t k = 0; k < out.dimension; ++k) out.isometry.set_col(k, eig.vectors.col(k));
  out.projector = times_adjoint(out.isometry, out.isometry);
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Equal: return "EQUAL";
    case Verdict::Gap: return "GAP";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

EqualityVerdict equality_certificate(const KrausChannel& ch, const OptimizerOptions& opts) {
  opts.validate(ch.dim_in());
  EqualityVerdict v;
  v.holevo = holevo_capacity(ch, opts);
  v.ea = ea_capacity(ch, opts);
  v.gap_estimate = v.ea.value - v.holevo.value;
  v.ensemble = v.holevo.ensemble->pruned(1e-6);
  std::vector<DensityMatrix> states;
  for (const auto& it : v.ensemble->items()) states.push_back(it.state);
  const std::vector<double> uniform(states.size(), 1.0 / static_cast<double>(states.size()));
  const RecoveryChannel theta = petz_recovery(ch, states, uniform);
  const InversionCheck inv = check_inversion(theta, states, kInversionTol);
  v.inversion_residuals = inv.residuals;
  v.inversion_pass = inv.pass;
  if (v.gap_estimate > 10.0 * opts.obj_tol) {
    v.verdict = Verdict::Gap;
    return v;
  }

  const ChiEssential ess = chi_essential_subspace(ch, opts);
  v.chi_essential_dimension = ess.dimension;
  const KrausChannel restricted = restrict_input(ch, ess.isometry);
  const auto cq = detect_classical_quantum(restricted, kRestrictionCqTol);
  if (const auto* s = std::get_if<CqStructure>(&cq)) v.restriction = *s;

  v.verdict = v.inversion_pass && v.restriction ? Verdict::Equal : Verdict::Inconclusive;
  return v;
}

}  // namespace qcap
