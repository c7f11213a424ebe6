// Copyright 2026 The diamondsim Authors
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


// diamondsim run <scenario> --config <path> [--seed N] [--workers N] [--out <path>]
// diamondsim verify [--criteria 1,2,...] [--workers N]
// diamondsim keys <scenario>
//
// Exit codes: 0 success, 2 tolerance failure, 1 error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "diamond/acceptance.hpp"
#include "diamond/config.hpp"
#include "diamond/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitTolerance = 2;

int run_command(const std::string& scenario, const std::string& config_path,
                std::optional<std::uint64_t> seed, int workers, const std::string& out_path) {
  diamond::RunRequest req;
  req.scenario = scenario;
  req.workers = workers;
  if (!config_path.empty()) {
    diamond::ConfigSource src = diamond::load_config_file(config_path);
    if (src.scenario && *src.scenario != scenario) {
      throw diamond::ConfigError("config header belongs to scenario '" + *src.scenario + "'");
    }
    req.raw = std::move(src.values);
    if (src.seed) req.seed = *src.seed;
  }
  if (seed) req.seed = *seed;
  const diamond::RunResult result = diamond::run_scenario(req);
  if (out_path.empty()) {
    std::cout << result.text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + out_path + "'");
    f << result.text;
    if (!f) throw std::runtime_error("write to '" + out_path + "' failed");
  }
  if (result.table.tolerance_failure) {
    std::cerr << "diamondsim: some rows did not meet their tolerance (see status column)\n";
    return kExitTolerance;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Four-qubit diamond gate simulator"};
  app.require_subcommand(1);

  std::string scenario, config_path, out_path;
  std::optional<std::uint64_t> seed;
  int workers = 1;
  auto* run = app.add_subcommand("run", "run a scenario and write CSV output");
  run->add_option("scenario", scenario, "scenario id")->required();
  run->add_option("--config", config_path, "flat key-value config, or an earlier output file");
  run->add_option("--seed", seed, "64-bit RNG seed (overrides the config)");
  run->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  run->add_option("--out", out_path, "output path (default: stdout)");

  std::vector<int> criteria;
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--criteria", criteria, "subset of criteria ids")->delimiter(',');
  verify->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);

  std::string keys_scenario;
  auto* keys = app.add_subcommand("keys", "list the config keys of a scenario");
  keys->add_option("scenario", keys_scenario, "scenario id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*run) return run_command(scenario, config_path, seed, workers, out_path);
    if (*verify) {
      diamond::AcceptanceOptions opt;
      opt.criteria = criteria;
      opt.workers = workers;
      bool all = true;
      for (const auto& r : diamond::run_acceptance(std::cout, opt)) all = all && r.passed;
      return all ? kExitOk : kExitTolerance;
    }
    if (*keys) {
      const auto& schema = diamond::scenario_schema(keys_scenario);
      const diamond::ConfigMap defaults = diamond::resolve_config(schema, {});
      for (const auto& k : schema) {
        std::cout << k.key << " = " << defaults.at(k.key) << "    # " << k.help << '\n';
      }
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "diamondsim: " << e.what() << '\n';
    return kExitError;
  }
  return kExitOk;
}
