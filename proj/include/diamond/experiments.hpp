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


// Scenario runner. Each scenario resolves a flat config against its schema,
// evaluates independent work items on a worker pool and renders a CSV table
// behind a '#'-prefixed JSON header (resolved config, config hash, seed and
// code version). Rendered output depends only on scenario, config and seed.

#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "diamond/config.hpp"
#include "diamond/fidelity.hpp"
#include "diamond/qubit_model.hpp"

namespace diamond {

std::string_view code_version();

struct ScenarioTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::map<std::string, std::string> derived;  // scalar results for the header
  bool tolerance_failure = false;
};

struct RunRequest {
  std::string scenario;
  ConfigMap raw;
  std::uint64_t seed = 0;
  int workers = 1;
};

struct RunResult {
  ConfigMap resolved;
  ScenarioTable table;
  std::string text;  // header + CSV
};

std::vector<std::string> scenario_names();
/// Throws ConfigError for an unknown scenario.
const std::vector<KeySpec>& scenario_schema(std::string_view scenario);

/// Throws ConfigError for bad configs; numerical failures propagate.
RunResult run_scenario(const RunRequest& request);

std::string render_output(std::string_view scenario, const ConfigMap& resolved,
                          std::uint64_t seed, const ScenarioTable& table);

/// Independent random stream for work item `index`.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index);

/// (A + A†)/2 with A standard complex Gaussian.
OperatorMatrix random_hermitian(int dim, std::mt19937_64& rng);

/// 1 - min over the four control states of |<φ|V|φ>|².
double max_control_infidelity(const OperatorMatrix& v);

/// Gate search at J_C and at -J_C. The sign flip exchanges the roles of
/// |00> and |11>, so F and F_Ψ± are compared directly and F_00, F_11
/// crosswise. max_difference is the largest of these differences.
struct SignFlipReport {
  GateFidelityResult plus;
  GateFidelityResult minus;
  double max_difference = 0.0;
  double time_difference = 0.0;
};
SignFlipReport jc_sign_flip_check(const QubitModelParams& p, const GateSearchOptions& options = {});

}  // namespace diamond
