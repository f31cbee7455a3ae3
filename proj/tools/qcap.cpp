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

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "qcap/errors.hpp"

namespace {

using namespace qcap::cli;

struct Flags {
  std::string spec_path;
  std::uint64_t seed = 0;
  int restarts = 32;
  double tol = 1e-7;
  std::string out;
  std::string only;
};

qcap::OptimizerOptions options(const Flags& f) {
  qcap::OptimizerOptions o;
  o.seed = f.seed;
  o.restarts = f.restarts;
  o.obj_tol = f.tol;
  return o;
}

int emit(const CommandResult& r, const std::string& out) {
  const std::string text = r.report.dump(2);
  if (out.empty()) {
    std::cout << text << '\n';
  } else {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "cannot write " << out << '\n';
      return kInvariantViolation;
    }
    f << text << '\n';
  }
  if (!r.converged) {
    std::cerr << "warning: at least one optimizer did not converge; report flagged\n";
    return kNotConverged;
  }
  return kOk;
}

int run_on_spec(CommandResult (*cmd)(const ChannelSpec&, const qcap::OptimizerOptions&), const Flags& f) {
  try {
    const ChannelSpec spec = load_spec(f.spec_path);
    return emit(cmd(spec, options(f)), f.out);
  } catch (const SpecError& e) {
    std::cerr << f.spec_path;
    if (e.line() > 0) std::cerr << ':' << e.line() << ':' << e.column();
    std::cerr << ": " << e.what() << '\n';
    return kParseError;
  } catch (const qcap::Infeasible& e) {
    std::cerr << f.spec_path << ": infeasible constraint: " << e.what() << '\n';
    return kInfeasible;
  } catch (const qcap::InvalidOptions& e) {
    std::cerr << "invalid options: " << e.what() << '\n';
    return kParseError;
  } catch (const qcap::NotConverged& e) {
    std::cerr << "not converged: " << e.what() << '\n';
    return kNotConverged;
  } catch (const qcap::Error& e) {
    std::cerr << f.spec_path << ": " << e.what() << '\n';
    return kInvariantViolation;
  }
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--seed", f.seed, "RNG seed");
  sub->add_option("--restarts", f.restarts, "random restarts per optimization")->check(CLI::PositiveNumber);
  sub->add_option("--tol", f.tol, "objective tolerance")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capacity analysis of finite-dimensional quantum channels"};
  app.require_subcommand(1);
  Flags f;

  auto* analyze_cmd = app.add_subcommand("analyze", "capacities, bounds and verdict for one channel");
  auto* certify_cmd = app.add_subcommand("certify", "decide whether C_ea equals the Holevo capacity");
  auto* constrained_cmd = app.add_subcommand("constrained", "capacities under a linear input constraint");
  for (auto* sub : {analyze_cmd, certify_cmd, constrained_cmd}) {
    sub->add_option("spec", f.spec_path, "channel specification (JSON)")->required();
    sub->add_option("--out", f.out, "report path; stdout when omitted");
    add_common(sub, f);
  }
  auto* suite_cmd = app.add_subcommand("paper-suite", "reproduce the reference examples");
  suite_cmd->add_option("--out", f.out, "output directory")->required();
  suite_cmd->add_option("--only", f.only, "run a single entry");
  add_common(suite_cmd, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParseError;
  }

  if (*analyze_cmd) return run_on_spec(analyze, f);
  if (*certify_cmd) return run_on_spec(certify, f);
  if (*constrained_cmd) return run_on_spec(constrained, f);
  try {
    return reproduction_suite(f.out, f.only.empty() ? std::nullopt : std::optional<std::string>(f.only), options(f));
  } catch (const std::exception& e) {
    std::cerr << "paper-suite: " << e.what() << '\n';
    return kSuiteFailure;
  }
}
