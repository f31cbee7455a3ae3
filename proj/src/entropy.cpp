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

#include "qcap/entropy.hpp"

#include <algorithm>
#include <cmath>

namespace qcap {

double entropy_of_spectrum(std::span<const double> eigenvalues) {
  double lmax = 0.0;
  for (double l : eigenvalues) lmax = std::max(lmax, l);
  if (lmax <= 0.0) return 0.0;
  const double cut = kSupportCutoff * lmax;
  double h = 0.0;
  for (double l : eigenvalues)
    if (l > cut) h -= l * std::log2(l);
  return std::max(h, 0.0);
}

double entropy(const DensityMatrix& rho) {
  return entropy_of_spectrum(hermitian_eigendecompose(rho.matrix()).values);
}

Divergence relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionMismatch("relative_entropy: dimensions differ");
  const auto se = hermitian_eigendecompose(sigma.matrix());
  const double outside = real_inner(kernel_projector(se), rho.matrix());
  if (outside > 1e-9) return Divergence::infinity();
  const auto re = hermitian_eigendecompose(rho.matrix());
  const double tr_rho_log_rho = -entropy_of_spectrum(re.values);
  const ComplexMatrix log_sigma = matrix_function_on_support(se, SpectralFunction::log2());
  const double value = tr_rho_log_rho - real_inner(log_sigma, rho.matrix());
  return {std::max(value, 0.0), false};
}

double holevo_quantity(const Ensemble& ens, const KrausChannel& ch) {
  if (ens.dim() != ch.dim_in()) throw DimensionMismatch("holevo_quantity: ensemble dimension");
  const DensityMatrix avg = apply(ch, ens.average());
  double chi = 0.0;
  for (const auto& it : ens.items()) {
    if (it.weight <= 0.0) continue;
    const Divergence d = relative_entropy(apply(ch, it.state), avg);
    // Every member of an ensemble is dominated by its average.
    if (d.finite()) chi += it.weight * d.value;
  }
  return chi;
}

double mutual_information(const DensityMatrix& rho, const KrausChannel& ch, const KrausChannel& env) {
  return entropy(rho) + coherent_information(rho, ch, env);
}

double mutual_information(const DensityMatrix& rho, const KrausChannel& ch) {
  return mutual_information(rho, ch, complement(minimal_kraus(ch)));
}

double coherent_information(const DensityMatrix& rho, const KrausChannel& ch, const KrausChannel& env) {
  if (rho.dim() != ch.dim_in() || env.dim_in() != ch.dim_in()) {
    throw DimensionMismatch("state dimension does not match channel input");
  }
  return entropy(apply(ch, rho)) - entropy(apply(env, rho));
}

double coherent_information(const DensityMatrix& rho, const KrausChannel& ch) {
  return coherent_information(rho, ch, complement(minimal_kraus(ch)));
}

}  // namespace qcap
