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

#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>

#include "qcap/entropy.hpp"
#include "qcap/petz.hpp"
#include "report.hpp"

namespace qcap::cli {

using nlohmann::json;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json header(const char* command, const ChannelSpec& spec, const OptimizerOptions& opts) {
  return {{"command", command},
          {"input", spec.echo},
          {"seed", opts.seed},
          {"restarts", opts.restarts},
          {"obj_tol", opts.obj_tol}};
}

}  // namespace

CommandResult analyze(const ChannelSpec& spec, const OptimizerOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const KrausChannel& ch = spec.channel;
  CommandResult out;
  out.report = header("analyze", spec, opts);
  const BoundsReport bounds = bounds_report(ch, opts);
  const CapacityResult d = max_delta(ch, opts);
  const EqualityVerdict verdict = equality_certificate(ch, opts);
  json caps;
  caps["holevo"] = result_json(bounds.holevo);
  caps["ea"] = result_json(bounds.ea);
  caps["q1"] = result_json(bounds.q1);
  caps["min_output_entropy"] = result_json(bounds.min_entropy);
  caps["max_delta"] = result_json(d);
  out.report["capacities"] = caps;
  out.report["gap"] = bounds.ea.value - bounds.holevo.value;
  out.report["bounds"] = bounds_json(bounds);
  out.report["verdict"] = verdict_json(verdict);
  out.converged = bounds.holevo.converged && bounds.ea.converged && bounds.q1.converged &&
                  bounds.min_entropy.converged && d.converged;
  out.report["converged"] = out.converged;
  out.report["wall_clock_seconds"] = seconds_since(t0);
  return out;
}

CommandResult certify(const ChannelSpec& spec, const OptimizerOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  CommandResult out;
  out.report = header("certify", spec, opts);
  const EqualityVerdict v = equality_certificate(spec.channel, opts);
  out.report["capacities"] = {{"holevo", result_json(v.holevo)}, {"ea", result_json(v.ea)}};
  out.report["verdict"] = verdict_json(v);
  out.converged = v.holevo.converged && v.ea.converged;
  out.report["converged"] = out.converged;
  out.report["wall_clock_seconds"] = seconds_since(t0);
  return out;
}

CommandResult constrained(const ChannelSpec& spec, const OptimizerOptions& opts) {
  if (!spec.constraint) throw SpecError("constrained analysis needs a \"constraint\" block", 0, 0);
  const auto t0 = std::chrono::steady_clock::now();
  const ConstraintSpec& c = *spec.constraint;
  CommandResult out;
  out.report = header("constrained", spec, opts);
  const ConstrainedResult cbar = constrained_holevo(spec.channel, c, opts);
  const ConstrainedResult cea = constrained_ea(spec.channel, c, opts);
  auto side = [](const ConstrainedResult& r) {
    json j = result_json(r.result);
    j["active"] = r.active;
    j["multiplier"] = std::isfinite(r.multiplier) ? json(r.multiplier) : json("inf");
    j["energy"] = r.energy;
    return j;
  };
  out.report["capacities"] = {{"constrained_holevo", side(cbar)}, {"constrained_ea", side(cea)}};
  out.report["gap"] = cea.result.value - cbar.result.value;
  json gibbs;
  try {
    const GibbsResult g = gibbs_state(c);
    gibbs = {{"state", matrix_to_json(g.state.matrix())},
             {"lambda", g.lambda},
             {"entropy", entropy(g.state)},
             {"constraint_slack", g.constraint_slack}};
  } catch (const DegenerateH&) {
    gibbs = {{"skipped", "constraint operator is proportional to the identity"}};
  }
  out.report["gibbs"] = gibbs;
  out.converged = cbar.result.converged && cea.result.converged;
  out.report["converged"] = out.converged;
  out.report["wall_clock_seconds"] = seconds_since(t0);
  return out;
}

namespace {

struct Check {
  std::string name;
  double value;
  double target;
  double tol;
  // |value − target| ≤ tol, or value ≤ target + tol / value ≥ target − tol.
  enum Kind { Near, AtMost, AtLeast } kind = Near;

  bool pass() const {
    switch (kind) {
      case Near: return std::abs(value - target) <= tol;
      case AtMost: return value <= target + tol;
      case AtLeast: return value >= target - tol;
    }
    return false;
  }
  json to_json() const {
    static const char* kinds[] = {"near", "at_most", "at_least"};
    return {{"name", name}, {"value", value}, {"target", target}, {"tol", tol}, {"kind", kinds[kind]},
            {"pass", pass()}};
  }
};

struct Entry {
  std::string name;
  std::function<std::vector<Check>(json&, const OptimizerOptions&)> run;
};

json catalog_echo(const std::string& name, json params = json::object()) {
  return {{"version", 1}, {"channel", {{"kind", "catalog"}, {"name", name}, {"params", std::move(params)}}}};
}

std::vector<Entry> suite_entries() {
  std::vector<Entry> e;
  e.push_back({"superdense", [](json& rep, const OptimizerOptions& o) {
                 const KrausChannel ch = catalog::noiseless(2);
                 rep["input"] = catalog_echo("noiseless", {{"d", 2}});
                 const CapacityResult cbar = holevo_capacity(ch, o);
                 const CapacityResult cea = ea_capacity(ch, o);
                 const CapacityResult d = max_delta(ch, o);
                 rep["capacities"] = {{"holevo", result_json(cbar)}, {"ea", result_json(cea)},
                                      {"max_delta", result_json(d)}};
                 return std::vector<Check>{{"Cbar", cbar.value, 1.0, 1e-5},
                                           {"Cea", cea.value, 2.0, 1e-4},
                                           {"D", d.value, 1.0, 1e-3}};
               }});
  e.push_back({"example1", [](json& rep, const OptimizerOptions& o) {
                 const KrausChannel ch = catalog::trine();
                 rep["input"] = catalog_echo("trine");
                 const EqualityVerdict v = equality_certificate(ch, o);
                 rep["capacities"] = {{"holevo", result_json(v.holevo)}, {"ea", result_json(v.ea)}};
                 rep["verdict"] = verdict_json(v);
                 return std::vector<Check>{
                     {"Cea", v.ea.value, 1.0, 1e-4},
                     {"Cbar = log 3 - 1", v.holevo.value, std::log2(3.0) - 1.0, 5e-3},
                     {"Cea - Cbar", v.ea.value - v.holevo.value, 0.0, 0.0, Check::AtLeast},
                     {"verdict is GAP", v.verdict == Verdict::Gap ? 1.0 : 0.0, 1.0, 0.0},
                     {"inversion fails", v.inversion_pass ? 0.0 : 1.0, 1.0, 0.0}};
               }});
  e.push_back({"example2", [](json& rep, const OptimizerOptions& o) {
                 const KrausChannel ch = catalog::bsst_plus();
                 rep["input"] = catalog_echo("bsst_plus");
                 const EqualityVerdict v = equality_certificate(ch, o);
                 const CapacityResult q = q1(ch, o);
                 rep["capacities"] = {{"holevo", result_json(v.holevo)}, {"ea", result_json(v.ea)},
                                      {"q1", result_json(q)}};
                 rep["verdict"] = verdict_json(v);
                 return std::vector<Check>{
                     {"Cbar", v.holevo.value, 2.0, 1e-3},
                     {"Cea", v.ea.value, 2.0, 1e-3},
                     {"verdict is EQUAL", v.verdict == Verdict::Equal ? 1.0 : 0.0, 1.0, 0.0},
                     {"restriction is c-q", v.restriction ? 1.0 : 0.0, 1.0, 0.0},
                     {"chi-essential dimension", static_cast<double>(v.chi_essential_dimension), 4.0, 0.0},
                     {"Q1 lower bound", q.value, 1.0, 1e-3, Check::AtLeast}};
               }});
  e.push_back({"example3", [](json& rep, const OptimizerOptions& o) {
                 const KrausChannel ch = catalog::dephasing(2);
                 const ComplexMatrix h = ComplexMatrix::diagonal(std::vector<double>{0.0, 1.0});
                 const ConstraintSpec diag{h, 0.3};
                 const GibbsResult g = gibbs_state(diag);
                 const double target = entropy(g.state);
                 const ConstrainedResult cbar = constrained_holevo(ch, diag, o);
                 const ConstrainedResult cea = constrained_ea(ch, diag, o);
                 const double s = std::sin(std::numbers::pi / 4.0);
                 const ComplexMatrix r{{s, -s}, {s, s}};
                 const ConstraintSpec rotated{r * h * r.adjoint(), 0.3};
                 const ConstrainedResult rbar = constrained_holevo(ch, rotated, o);
                 const ConstrainedResult rea = constrained_ea(ch, rotated, o);
                 rep["input"] = catalog_echo("dephasing", {{"d", 2}});
                 rep["input"]["constraint"] = {{"H", matrix_to_json(h)}, {"h", 0.3}};
                 rep["capacities"] = {{"constrained_holevo", result_json(cbar.result)},
                                      {"constrained_ea", result_json(cea.result)}};
                 rep["rotated"] = {{"constrained_holevo", result_json(rbar.result)},
                                   {"constrained_ea", result_json(rea.result)}};
                 rep["gibbs"] = {{"state", matrix_to_json(g.state.matrix())}, {"lambda", g.lambda}};
                 return std::vector<Check>{
                     {"Gibbs energy", real_inner(h, g.state.matrix()), 0.3, 1e-10},
                     {"Cbar(H,h) = H(rho*)", cbar.result.value, target, 1e-4},
                     {"Cea(H,h) = H(rho*)", cea.result.value, target, 1e-4},
                     {"rotated gap", rea.result.value - rbar.result.value, 0.01, 0.0, Check::AtLeast}};
               }});
  e.push_back({"completely_depolarizing", [](json& rep, const OptimizerOptions& o) {
                 const KrausChannel ch = catalog::completely_depolarizing(2);
                 rep["input"] = catalog_echo("completely_depolarizing", {{"d", 2}});
                 const CapacityResult d = max_delta(ch, o);
                 rep["capacities"] = {{"max_delta", result_json(d)}};
                 return std::vector<Check>{{"D", d.value, 0.0, 1e-4, Check::AtMost}};
               }});
  e.push_back({"dephasing_equality", [](json& rep, const OptimizerOptions& o) {
                 const KrausChannel ch = catalog::dephasing(4);
                 rep["input"] = catalog_echo("dephasing", {{"d", 4}});
                 const EqualityVerdict v = equality_certificate(ch, o);
                 rep["capacities"] = {{"holevo", result_json(v.holevo)}, {"ea", result_json(v.ea)}};
                 rep["verdict"] = verdict_json(v);
                 return std::vector<Check>{{"Cbar", v.holevo.value, 2.0, 1e-5},
                                           {"Cea", v.ea.value, 2.0, 1e-5},
                                           {"verdict is EQUAL", v.verdict == Verdict::Equal ? 1.0 : 0.0, 1.0, 0.0}};
               }});
  e.push_back({"dimension_bound", [](json& rep, const OptimizerOptions& o) {
                 const KrausChannel ch = catalog::noiseless(2);
                 rep["input"] = catalog_echo("noiseless", {{"d", 2}});
                 const BoundsReport b = bounds_report(ch, o);
                 rep["capacities"] = {{"holevo", result_json(b.holevo)}, {"ea", result_json(b.ea)}};
                 rep["bounds"] = bounds_json(b);
                 const double gap = b.ea.value - b.holevo.value;
                 return std::vector<Check>{{"Cea - Cbar = log dA - log dE", gap, 1.0, 1e-4},
                                           {"all bounds pass", b.all_pass ? 1.0 : 0.0, 1.0, 0.0}};
               }});
  return e;
}

}  // namespace

int reproduction_suite(const std::string& out_dir, const std::optional<std::string>& only, const OptimizerOptions& opts) {
  std::filesystem::create_directories(out_dir);
  const auto entries = suite_entries();
  bool matched = false;
  bool all_pass = true;
  json summary = json::array();
  for (const auto& entry : entries) {
    if (only && *only != entry.name) continue;
    matched = true;
    const auto t0 = std::chrono::steady_clock::now();
    json rep{{"command", "paper-suite"}, {"entry", entry.name}, {"seed", opts.seed}, {"restarts", opts.restarts}};
    const std::vector<Check> checks = entry.run(rep, opts);
    json cj = json::array();
    bool pass = true;
    for (const auto& c : checks) {
      cj.push_back(c.to_json());
      pass = pass && c.pass();
    }
    rep["checks"] = cj;
    rep["pass"] = pass;
    rep["wall_clock_seconds"] = seconds_since(t0);
    std::ofstream(std::filesystem::path(out_dir) / (entry.name + ".json")) << rep.dump(2) << '\n';
    all_pass = all_pass && pass;
    summary.push_back({{"entry", entry.name}, {"pass", pass}});
    std::cout << (pass ? "PASS  " : "FAIL  ") << entry.name << '\n';
    for (const auto& c : checks) {
      std::cout << "        " << (c.pass() ? "ok   " : "FAIL ") << c.name << ": " << c.value << '\n';
    }
  }
  if (!matched) {
    std::cerr << "no suite entry named \"" << *only << "\"\n";
    return kSuiteFailure;
  }
  std::ofstream(std::filesystem::path(out_dir) / "summary.json") << summary.dump(2) << '\n';
  return all_pass ? kOk : kSuiteFailure;
}

}  // namespace qcap::cli
