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

#include <optional>
#include <string>

#include "json.hpp"
#include "qcap/capacity.hpp"
#include "spec_file.hpp"

namespace qcap::cli {

enum ExitCode : int {
  kOk = 0,
  kSuiteFailure = 1,
  kParseError = 2,
  kInvariantViolation = 3,
  kNotConverged = 4,
  kInfeasible = 5,
};

struct CommandResult {
  nlohmann::json report;
  bool converged = true;
};

CommandResult analyze(const ChannelSpec& spec, const OptimizerOptions& opts);
CommandResult certify(const ChannelSpec& spec, const OptimizerOptions& opts);
/// Throws SpecError when the specification has no constraint block.
CommandResult constrained(const ChannelSpec& spec, const OptimizerOptions& opts);

/// Runs the reproduction suite, writing one report per entry into `out_dir`.
/// `only` selects a single entry by name. Returns kOk or kSuiteFailure.
int reproduction_suite(const std::string& out_dir, const std::optional<std::string>& only, const OptimizerOptions& opts);

}  // namespace qcap::cli
