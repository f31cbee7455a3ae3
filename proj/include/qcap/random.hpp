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
#include <random>

#include "qcap/matops.hpp"
#include "qcap/state.hpp"

namespace qcap {

class KrausChannel;
struct CqStructure;

namespace random {

/// splitmix64 finalizer; used to derive independent per-stream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
 public:
  /// Stream `stream` of master seed `seed`; streams are independent.
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : engine_(mix_seed(seed, stream)) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  /// Standard complex Gaussian (E|z|^2 = 1).
  cplx complex_normal();
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

ComplexMatrix ginibre(Rng& rng, std::size_t rows, std::size_t cols);
/// Haar-random unitary.
ComplexMatrix haar_unitary(Rng& rng, std::size_t n);
/// Haar-random rows × cols isometry (cols ≤ rows).
ComplexMatrix haar_isometry(Rng& rng, std::size_t rows, std::size_t cols);
/// Uniform unit vector (column).
ComplexMatrix pure_vector(Rng& rng, std::size_t d);
DensityMatrix pure_state(Rng& rng, std::size_t d);
/// Induced-measure random state of the given rank.
DensityMatrix mixed_state(Rng& rng, std::size_t d, std::size_t rank = 0);
ComplexMatrix hermitian(Rng& rng, std::size_t d);
/// Random traceless Hermitian matrix of unit Frobenius norm.
ComplexMatrix traceless_direction(Rng& rng, std::size_t d);
/// Channel from a Haar-random Stinespring isometry with `num_kraus` operators,
/// raised to ⌈d_in/d_out⌉ when fewer cannot form an isometry.
KrausChannel channel(Rng& rng, std::size_t d_in, std::size_t d_out, std::size_t num_kraus);
/// Haar-random input basis with independent random output states of random rank.
CqStructure cq_structure(Rng& rng, std::size_t d_in, std::size_t d_out);

}  // namespace random
}  // namespace qcap
