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

#include "report.hpp"

#include <algorithm>
#include <cmath>

#include "qcap/entropy.hpp"
#include "spec_file.hpp"

namespace qcap::cli {

using nlohmann::json;

json ensemble_json(const Ensemble& e) {
  json weights = json::array();
  json vectors = json::array();
  for (const auto& it : e.items()) {
    weights.push_back(it.weight);
    vectors.push_back(matrix_to_json(*it.vector));
  }
  return {{"weights", weights}, {"vectors", vectors}};
}

Ensemble ensemble_from_json(const json& j) {
  std::vector<double> w = j.at("weights").get<std::vector<double>>();
  std::vector<ComplexMatrix> v;
  for (const auto& x : j.at("vectors")) v.push_back(matrix_from_json(x));
  return Ensemble::from_vectors(w, v);
}

json result_json(const CapacityResult& r) {
  json out{{"value", r.value},
           {"certificate_gap", r.certificate_gap},
           {"converged", r.converged},
           {"iterations", r.iterations},
           {"state", matrix_to_json(r.state.matrix())}};
  if (r.ensemble) out["ensemble"] = ensemble_json(*r.ensemble);
  return out;
}

json bounds_json(const BoundsReport& r) {
  json lines = json::array();
  for (const auto& l : r.lines) {
    lines.push_back({{"name", l.name}, {"lhs", l.lhs}, {"rhs", l.rhs}, {"slack", l.slack}, {"pass", l.pass}});
  }
  return {{"lines", lines},
          {"all_pass", r.all_pass},
          {"holevo_env", r.holevo_env.value},
          {"chi_env_rho2", r.chi_env_rho2},
          {"roof_rho2", r.roof_rho2},
          {"dim_env", r.dim_env},
          {"output_entropy_dominates", r.output_entropy_dominates}};
}

json verdict_json(const EqualityVerdict& v) {
  json out{{"verdict", to_string(v.verdict)},
           {"gap_estimate", v.gap_estimate},
           {"inversion_residuals", v.inversion_residuals},
           {"inversion_pass", v.inversion_pass},
           {"chi_essential_dimension", v.chi_essential_dimension}};
  if (v.restriction) {
    json sigmas = json::array();
    for (const auto& s : v.restriction->sigmas) sigmas.push_back(matrix_to_json(s.matrix()));
    out["restriction"] = {{"classical_quantum", true},
                          {"basis", matrix_to_json(v.restriction->basis)},
                          {"sigmas", sigmas}};
  } else {
    out["restriction"] = {{"classical_quantum", false}};
  }
  return out;
}

namespace {

double reevaluate(Quantity q, const json& entry, const KrausChannel& ch) {
  const DensityMatrix state = DensityMatrix::unchecked(matrix_from_json(entry.at("state")));
  switch (q) {
    case Quantity::Holevo:
      return holevo_quantity(ensemble_from_json(entry.at("ensemble")), ch);
    case Quantity::MutualInfo:
      return mutual_information(state, ch);
    case Quantity::CoherentInfo:
      return coherent_information(state, ch);
    case Quantity::MinEntropy:
      return entropy(apply(ch, state));
    case Quantity::Delta: {
      const KrausChannel env = complement(minimal_kraus(ch));
      double roof = 0.0;
      const Ensemble e = ensemble_from_json(entry.at("ensemble"));
      for (const auto& it : e.items())
        roof += it.weight * entropy(apply(ch, it.state));
      return entropy(state) - entropy(apply(env, state)) + roof;
    }
  }
  return 0.0;
}

}  // namespace

double recheck(const json& report, const KrausChannel& ch) {
  static const std::pair<const char*, Quantity> kinds[] = {
      {"holevo", Quantity::Holevo},          {"ea", Quantity::MutualInfo},
      {"q1", Quantity::CoherentInfo},        {"min_output_entropy", Quantity::MinEntropy},
      {"max_delta", Quantity::Delta},        {"constrained_holevo", Quantity::Holevo},
      {"constrained_ea", Quantity::MutualInfo}};
  double worst = 0.0;
  const json& caps = report.at("capacities");
  for (const auto& [key, q] : kinds) {
    if (!caps.contains(key)) continue;
    const json& entry = caps.at(key);
    worst = std::max(worst, std::abs(reevaluate(q, entry, ch) - entry.at("value").get<double>()));
  }
  return worst;
}

}  // namespace qcap::cli
