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
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qcap/capacity.hpp"
#include "qcap/channels.hpp"

namespace qcap::cli {

/// Malformed specification. `line` and `column` are 1-based; 0 when unknown.
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct ChannelSpec {
  KrausChannel channel;
  std::optional<ConstraintSpec> constraint;
  nlohmann::json echo;
};

/// Parses a specification document. Throws SpecError for syntax and schema
/// problems, and the library's errors when the operators do not form a channel.
ChannelSpec parse_spec(const std::string& text);
ChannelSpec load_spec(const std::string& path);

/// Catalog channel by name with parameters from `params`.
KrausChannel catalog_channel(const std::string& name, const nlohmann::json& params);

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace qcap::cli
