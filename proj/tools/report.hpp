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

#include <string>

#include "json.hpp"
#include "qcap/capacity.hpp"
#include "qcap/petz.hpp"

namespace qcap::cli {

/// What a reported value measures; decides how `recheck` re-evaluates it.
enum class Quantity { Holevo, MutualInfo, CoherentInfo, MinEntropy, Delta };

nlohmann::json result_json(const CapacityResult& r);
nlohmann::json bounds_json(const BoundsReport& r);
nlohmann::json verdict_json(const EqualityVerdict& v);
nlohmann::json ensemble_json(const Ensemble& e);
Ensemble ensemble_from_json(const nlohmann::json& j);

/// Largest |re-evaluated − reported| over the capacity entries of a report,
/// using the stored states and ensembles only.
double recheck(const nlohmann::json& report, const KrausChannel& ch);

}  // namespace qcap::cli
