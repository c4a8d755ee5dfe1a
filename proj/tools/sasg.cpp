// Copyright 2026 The sasg Authors. All rights reserved.
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

// sasg enumerate|sweep|repeated --config <path> [--seed N] [--out DIR]
//
// Exit codes: 0 success, 2 configuration error, 3 verification failure.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sasg/cli/commands.hpp"
#include "sasg/cli/config.hpp"

int main(int argc, char** argv) {
  using namespace sasg::cli;

  CLI::App app{"Sensor access signaling game: equilibria, sweeps, repeated play"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;

  auto add_command = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--seed", seed, "override the configured seed");
    sub->add_option("--out", out_dir, "output directory");
    return sub;
  };
  auto* enumerate = add_command("enumerate", "list and verify equilibria, write pbne.csv");
  auto* sweep = add_command("sweep", "Monte Carlo theta sweep, write sweep_<scenario>.csv");
  auto* repeated = add_command("repeated", "repeated reward/punishment game, write repeated_trace.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  Command command = Command::Enumerate;
  if (sweep->parsed()) command = Command::Sweep;
  if (repeated->parsed()) command = Command::Repeated;
  (void)enumerate;

  RunConfig cfg;
  try {
    cfg = load_run_config(config_path, command);
    apply_eps_override(cfg, std::getenv("SAG_EPS"));
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  if (seed) cfg.seed = *seed;
  if (out_dir) cfg.output_path = *out_dir;

  try {
    return run_command(command, cfg, std::cout);
  } catch (const sasg::InvalidParameters& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
}
