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
#include "qcap/random.hpp"

namespace qcap::testing {

inline ComplexMatrix ket(std::initializer_list<cplx> entries) {
  return ComplexMatrix::column(std::vector<cplx>(entries));
}

inline double choi_distance(const KrausChannel& a, const KrausChannel& b) {
  return max_abs_diff(choi(a).matrix, choi(b).matrix);
}

inline DensityMatrix bloch(double x, double y, double z) {
  return DensityMatrix(ComplexMatrix{{0.5 * (1 + z), cplx(0.5 * x, -0.5 * y)},
                                     {cplx(0.5 * x, 0.5 * y), 0.5 * (1 - z)}});
}

}  // namespace qcap::testing
