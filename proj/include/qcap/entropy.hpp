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

#include "qcap/channels.hpp"
#include "qcap/state.hpp"

namespace qcap {

/// Relative entropy value; `infinite` marks a support violation.
struct Divergence {
  double value = 0.0;
  bool infinite = false;

  static Divergence infinity() { return {0.0, true}; }
  bool finite() const { return !infinite; }
};

/// −Σ λ log2 λ over eigenvalues above the support cutoff.
double entropy(const DensityMatrix& rho);
double entropy_of_spectrum(std::span<const double> eigenvalues);

/// H(ρ‖σ) in bits. Infinite when more than 1e-9 of ρ's mass lies in ker σ.
Divergence relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Σ π_i H(Φ(ρ_i)‖Φ(ρ̄)).
double holevo_quantity(const Ensemble& ens, const KrausChannel& ch);

/// H(ρ) + H(Φρ) − H(Φ̂ρ), with Φ̂ from the minimal Kraus family.
double mutual_information(const DensityMatrix& rho, const KrausChannel& ch);
/// Same with an explicitly supplied complementary channel.
double mutual_information(const DensityMatrix& rho, const KrausChannel& ch, const KrausChannel& env);

/// H(Φρ) − H(Φ̂ρ).
double coherent_information(const DensityMatrix& rho, const KrausChannel& ch);
double coherent_information(const DensityMatrix& rho, const KrausChannel& ch, const KrausChannel& env);

}  // namespace qcap
