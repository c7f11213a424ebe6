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


// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line.

#pragma once

#include <array>
#include <ostream>
#include <string>
#include <vector>

namespace diamond {

/// Published gate times (ns) and fidelities (F, F_00, F_11, F_Ψ+, F_Ψ-) of the
/// two reference parameter sets.
struct ReferenceRow {
  double t_predicted_ns = 0.0;
  double t_simulated_ns = 0.0;
  std::array<double, 5> fidelities{};
  double fidelity_tolerance = 0.0;
};
const ReferenceRow& reference_row(int set);

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::vector<int> criteria;  // empty: all nine
  int workers = 1;
};

std::vector<CriterionResult> run_acceptance(std::ostream& out, const AcceptanceOptions& options = {});

}  // namespace diamond
