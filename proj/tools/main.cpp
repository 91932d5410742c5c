// Copyright 2026 The dmkt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "run_config.hpp"

namespace {

using dmkt::cli::RunConfig;

struct Invocation {
  std::string config_path;
  std::string save_path;
  // Flag overrides in command-line order; applied after the config file.
  std::vector<std::pair<std::string, std::string>> overrides;
};

void add_key_option(CLI::App* app, Invocation& inv, const std::string& flag,
                    const std::string& key, const std::string& help) {
  app->add_option_function<std::string>(
         flag,
         [&inv, key](const std::string& v) { inv.overrides.emplace_back(key, v); },
         help)
      ->type_name("VALUE")
      ->allow_extra_args(false);
}

void add_common_options(CLI::App* app, Invocation& inv) {
  app->add_option("--config", inv.config_path,
                  "Read a key = value run configuration file")
      ->check(CLI::ExistingFile);
  app->add_option("--save-config", inv.save_path,
                  "Write the effective run configuration to a file");
  app->add_option_function<std::vector<std::string>>(
         "--set",
         [&inv](const std::vector<std::string>& items) {
           for (const auto& item : items) {
             const auto eq = item.find('=');
             if (eq == std::string::npos) {
               throw CLI::ValidationError("--set", "expected key=value");
             }
             inv.overrides.emplace_back(item.substr(0, eq),
                                        item.substr(eq + 1));
           }
         },
         "Override any configuration key (key=value, repeatable)")
      ->type_name("KEY=VALUE");

  const std::pair<const char*, const char*> market[] = {
      {"--eta-max", "eta_max"}, {"--eta-0", "eta_0"}, {"--k", "k"},
      {"--delta", "delta"},     {"--c", "c"},         {"--c0", "c0"},
      {"--F", "F"}};
  for (const auto& [flag, key] : market) {
    add_key_option(app, inv, flag, key, std::string("Market parameter ") + key);
  }
  const std::pair<const char*, const char*> settings[] = {
      {"--grid-n", "grid_n"},
      {"--stage0-grid-n", "stage0_grid_n"},
      {"--tol-x", "tol_x"},
      {"--tol-fp", "tol_fp"},
      {"--max-iter", "max_iter"},
      {"--damping", "damping"},
      {"--hi-factor", "hi_factor"},
      {"--eps-det", "eps_det"},
      {"--fd-step", "fd_step"},
      {"--dead-band", "dead_band"}};
  for (const auto& [flag, key] : settings) {
    add_key_option(app, inv, flag, key, std::string("Solver setting ") + key);
  }
  add_key_option(app, inv, "--format", "format", "Output: table, csv or json");
}

RunConfig resolve(const Invocation& inv) {
  RunConfig config =
      inv.config_path.empty() ? RunConfig{} : dmkt::cli::load_config(inv.config_path);
  for (const auto& [key, value] : inv.overrides) config.set(key, value);
  if (!inv.save_path.empty()) dmkt::cli::save_config(inv.save_path, config);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium solver for the data-market entry game"};
  app.set_version_flag("--version", std::string(dmkt_version()));
  app.require_subcommand(1);

  Invocation inv;
  using Command = int (*)(const RunConfig&, std::ostream&, std::ostream&);
  std::vector<std::pair<CLI::App*, Command>> commands;

  auto* solve = app.add_subcommand("solve", "Solve the full equilibrium");
  add_common_options(solve, inv);
  commands.emplace_back(solve, dmkt::cli::cmd_solve);

  auto* sweep = app.add_subcommand(
      "sweep", "Comparative statics over c0, delta or F; one CSV per F level");
  add_common_options(sweep, inv);
  add_key_option(sweep, inv, "--param", "param", "Swept parameter: c0, delta or F");
  add_key_option(sweep, inv, "--grid", "grid",
                 "Comma-separated grid values (ratios like 5/6 allowed)");
  add_key_option(sweep, inv, "--f-levels", "f_levels",
                 "Comma-separated entry costs, one output file each");
  add_key_option(sweep, inv, "--dense", "dense",
                 "Use an evenly spaced default grid with this many points");
  add_key_option(sweep, inv, "--threads", "threads",
                 "Worker threads (0: hardware concurrency)");
  add_key_option(sweep, inv, "--out", "out", "Output directory");
  commands.emplace_back(sweep, dmkt::cli::cmd_sweep);

  auto* diagnose = app.add_subcommand(
      "diagnose", "Strategic-effect decomposition at one or more d0 values");
  add_common_options(diagnose, inv);
  add_key_option(diagnose, inv, "--d0", "d0",
                 "Comma-separated d0 values (default: equilibrium d0)");
  add_key_option(diagnose, inv, "--mode", "mode",
                 "auto, deter or accommodate");
  commands.emplace_back(diagnose, dmkt::cli::cmd_diagnose);

  auto* selftest = app.add_subcommand(
      "selftest", "Compare the solvers with brute-force grid search");
  add_common_options(selftest, inv);
  add_key_option(selftest, inv, "--seed", "seed", "Random seed");
  add_key_option(selftest, inv, "--draws", "draws", "Number of random draws");
  commands.emplace_back(selftest, dmkt::cli::cmd_selftest);

  CLI11_PARSE(app, argc, argv);

  RunConfig config;
  try {
    config = resolve(inv);
  } catch (const dmkt::cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return dmkt::cli::kExitConfig;
  }
  for (const auto& [sub, run] : commands) {
    if (sub->parsed()) return run(config, std::cout, std::cerr);
  }
  return dmkt::cli::kExitConfig;
}
