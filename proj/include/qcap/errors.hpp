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

#include <stdexcept>
#include <string>

namespace qcap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define QCAP_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& what) : Error(what) {}      \
  }

QCAP_DEFINE_ERROR(NonSquare);
QCAP_DEFINE_ERROR(NonHermitian);
QCAP_DEFINE_ERROR(DimensionMismatch);
QCAP_DEFINE_ERROR(NegativeSpectrum);
QCAP_DEFINE_ERROR(InvalidState);
QCAP_DEFINE_ERROR(InvalidChannel);
QCAP_DEFINE_ERROR(NotCompletelyPositive);
QCAP_DEFINE_ERROR(NotTracePreserving);
QCAP_DEFINE_ERROR(NotOvercomplete);
QCAP_DEFINE_ERROR(NotUnitary);
QCAP_DEFINE_ERROR(Infeasible);
QCAP_DEFINE_ERROR(DegenerateH);
QCAP_DEFINE_ERROR(DegenerateBase);
QCAP_DEFINE_ERROR(CovarianceNotVerified);
QCAP_DEFINE_ERROR(InvalidOptions);
QCAP_DEFINE_ERROR(NotConverged);

#undef QCAP_DEFINE_ERROR

}  // namespace qcap
