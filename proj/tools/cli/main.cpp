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

#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "stablefield/parallel.hpp"

namespace {

namespace fs = std::filesystem;
namespace cli = stablefield::cli;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitCheckFailed = 3;

struct Options {
  std::string config;
  std::string out;
  std::uint64_t seed = 1;
  std::optional<std::size_t> threads;
  bool check = false;
};

std::optional<std::size_t> env_threads() {
  const char* raw = std::getenv("STABLE_FIELD_THREADS");
  if (raw == nullptr || *raw == '\0') {
    return std::nullopt;
  }
  try {
    const long v = std::stol(raw);
    if (v > 0) {
      return static_cast<std::size_t>(v);
    }
  } catch (const std::exception&) {
  }
  throw cli::ConfigError(std::string{"STABLE_FIELD_THREADS must be a positive integer, got '"} + raw + "'");
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  std::ofstream out{path};
  out << j.dump(2) << '\n';
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
}

int run(const cli::CommandInfo& info, const Options& opts) {
  try {
    stablefield::set_thread_count(opts.threads ? opts.threads : env_threads());

    cli::ConfigNode node = opts.config.empty() ? cli::ConfigNode{nlohmann::json::object(), ""}
                                               : cli::load_config(opts.config);
    if (opts.config.empty()) {
      node.get<int>("schema_version", cli::kSchemaVersion);
    }
    cli::RunContext ctx;
    ctx.out = opts.out;
    ctx.config_dir = opts.config.empty() ? fs::current_path() : fs::absolute(opts.config).parent_path();
    ctx.seed = opts.seed;
    const cli::Runner runner = info.command(node, ctx);
    node.finish();

    std::error_code ec;
    fs::create_directories(ctx.out, ec);
    if (ec || !fs::is_directory(ctx.out)) {
      std::cerr << "error: cannot create output directory " << ctx.out.string() << '\n';
      return kExitError;
    }
    nlohmann::json effective = node.effective();
    effective["seed"] = opts.seed;
    write_json(ctx.out / "effective_config.json", effective);

    const cli::CommandResult result = runner();
    nlohmann::json summary = {{"command", info.name},
                              {"version", STABLEFIELD_VERSION},
                              {"seed", opts.seed},
                              {"config", effective},
                              {"results", result.results},
                              {"check", {{"passed", result.check.passed}, {"detail", result.check.detail}}}};
    write_json(ctx.out / "summary.json", summary);

    if (result.invalid) {
      std::cerr << info.name << ": " << result.check.detail << '\n';
      return kExitInvalid;
    }
    if (opts.check) {
      std::cout << (result.check.passed ? "PASS " : "FAIL ") << info.name << ": " << result.check.detail << '\n';
      return result.check.passed ? kExitOk : kExitCheckFailed;
    }
    return kExitOk;
  } catch (const cli::ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reproducible experiments with alpha-stable random networks"};
  app.set_version_flag("--version", std::string{STABLEFIELD_VERSION});
  app.require_subcommand(1);

  Options opts;
  const cli::CommandInfo* chosen = nullptr;
  for (const cli::CommandInfo& info : cli::command_table()) {
    CLI::App* sub = app.add_subcommand(info.name, info.description);
    sub->add_option("--config", opts.config, "JSON config file (defaults apply to omitted keys)")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out, "Output directory")->required();
    sub->add_option("--seed", opts.seed, "Master seed")->capture_default_str();
    sub->add_option("--threads", opts.threads, "Worker threads (fallback: STABLE_FIELD_THREADS)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--check", opts.check, "Exit with status 3 when the acceptance rule fails");
    sub->callback([&chosen, &info] { chosen = &info; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }
  return run(*chosen, opts);
}
