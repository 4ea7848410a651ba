// Copyright 2026 The stablefield Authors
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

#ifndef STABLEFIELD_CLI_COMMANDS_HPP
#define STABLEFIELD_CLI_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "config.hpp"
#include "stablefield/diagnostics.hpp"

namespace stablefield::cli {

struct RunContext {
  std::filesystem::path out;
  std::filesystem::path config_dir;  ///< base for relative input paths
  std::uint64_t seed = 0;
};

struct CommandResult {
  nlohmann::json results = nlohmann::json::object();
  /// Acceptance rule for --check.
  Verdict check{true, ""};
  /// The command ran but its input failed validation (exit status 2).
  bool invalid = false;
};

/// Parses the config (throwing ConfigError) and returns the computation to run afterwards.
using Runner = std::function<CommandResult()>;
using Command = std::function<Runner(ConfigNode&, const RunContext&)>;

struct CommandInfo {
  std::string name;
  std::string description;
  Command command;
};

const std::vector<CommandInfo>& command_table();

}  // namespace stablefield::cli

#endif  // STABLEFIELD_CLI_COMMANDS_HPP
