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


#include "diamond/experiments.hpp"

#include <algorithm>
#include <stdexcept>

#include <gtest/gtest.h>

#include "diamond/parallel.hpp"
#include "json.hpp"

namespace diamond {
namespace {

nlohmann::json header_of(const std::string& text) {
  std::string joined;
  std::size_t pos = 0;
  while (pos < text.size() && text[pos] == '#') {
    const std::size_t end = text.find('\n', pos);
    joined += text.substr(pos + 1, end - pos - 1);
    pos = end + 1;
  }
  return nlohmann::json::parse(joined);
}

RunRequest small_circuit_request(int workers) {
  return {"circuit_map", {{"c_ff", "5, 8.1859"}, {"inverse_design", "false"}}, 11, workers};
}

RunRequest small_noise_request(int workers, std::uint64_t seed) {
  return {"noise_couplings",
          {{"set", "2"},
           {"gamma", "0"},
           {"points", "2"},
           {"repetitions", "2"},
           {"coarse_points", "11"},
           {"fine_points", "5"}},
          seed,
          workers};
}

TEST(ParallelMap, ResultsKeepIndexOrder) {
  for (int workers : {1, 2, 5}) {
    const auto out = parallel_map(37, workers, [](std::size_t i) { return 3 * i + 1; });
    ASSERT_EQ(out.size(), 37u);
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], 3 * i + 1);
  }
}

TEST(ParallelMap, RethrowsLowestIndexFailure) {
  try {
    parallel_map(20, 4, [](std::size_t i) -> int {
      if (i == 7 || i == 13) throw std::runtime_error("item " + std::to_string(i));
      return 0;
    });
    FAIL() << "expected an exception";
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "item 7");
  }
}

TEST(Substream, DeterministicAndDistinctPerIndex) {
  auto a = substream(5, 0), b = substream(5, 0), c = substream(5, 1), d = substream(6, 0);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
  EXPECT_NE(x, d());
}

TEST(RandomHermitian, IsHermitian) {
  auto rng = substream(1, 2);
  EXPECT_TRUE(is_hermitian(random_hermitian(4, rng)));
}

TEST(ControlInfidelity, IdentityAndFlip) {
  EXPECT_NEAR(max_control_infidelity(OperatorMatrix::Identity(4, 4)), 0.0, 1e-15);
  // X ⊗ X maps 00 to 11; Z ⊗ Z only attaches signs to the control states.
  EXPECT_NEAR(max_control_infidelity(tensor_product(pauli::x(), pauli::x())), 1.0, 1e-15);
  EXPECT_NEAR(max_control_infidelity(tensor_product(pauli::z(), pauli::z())), 0.0, 1e-15);
}

TEST(Scenarios, SchemasAndUnknownInput) {
  const auto names = scenario_names();
  for (const char* s : {"table1", "fid_vs_time", "param_sweep", "noise_crosstalk", "noise_couplings",
                        "noise_control_prep", "noise_decoherence", "qutrit_swap_rate",
                        "qutrit_swap_fid", "circuit_map"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), s), names.end()) << s;
    EXPECT_FALSE(scenario_schema(s).empty());
  }
  EXPECT_THROW(scenario_schema("nope"), ConfigError);
  EXPECT_THROW(run_scenario({"circuit_map", {{"not_a_key", "1"}}, 0, 1}), ConfigError);
  EXPECT_THROW(run_scenario({"circuit_map", {{"c_ff", "abc"}}, 0, 1}), ConfigError);
  EXPECT_THROW(run_scenario({"noise_couplings", {{"dynamics", "floquet"}}, 0, 1}), ConfigError);
}

TEST(Output, HeaderCarriesProvenance) {
  const RunResult r = run_scenario(small_circuit_request(1));
  const nlohmann::json h = header_of(r.text);
  EXPECT_EQ(h.at("scenario"), "circuit_map");
  EXPECT_EQ(h.at("seed"), 11);
  EXPECT_EQ(h.at("code_version"), std::string(code_version()));
  EXPECT_EQ(h.at("config").at("c_ff"), "5, 8.1859");
  EXPECT_EQ(h.at("config_hash"), "fnv1a64:" + hex64(config_hash("circuit_map", r.resolved)));
  EXPECT_EQ(h.at("columns").size(), r.table.columns.size());
  EXPECT_EQ(r.table.rows.size(), 2u);
}

TEST(Output, IndependentOfWorkerCount) {
  EXPECT_EQ(run_scenario(small_circuit_request(1)).text, run_scenario(small_circuit_request(3)).text);
  const std::string one = run_scenario(small_noise_request(1, 42)).text;
  EXPECT_EQ(one, run_scenario(small_noise_request(2, 42)).text);
  EXPECT_NE(one, run_scenario(small_noise_request(1, 43)).text);
}

TEST(Output, RerunFromHeaderReproducesFile) {
  const RunResult first = run_scenario(small_noise_request(2, 7));
  const ConfigSource src = parse_config_text(first.text);
  ASSERT_TRUE(src.scenario.has_value());
  ASSERT_TRUE(src.seed.has_value());
  const RunResult again = run_scenario({*src.scenario, src.values, *src.seed, 1});
  EXPECT_EQ(first.text, again.text);
}

TEST(SignFlip, ControlCouplingSignSwapsZeroZeroAndOneOne) {
  QubitModelParams p = table1_set(1);
  p.gamma = 0.0;
  GateSearchOptions opt;
  opt.dynamics = Dynamics::kFloquet;
  opt.coarse_points = 21;
  opt.fine_points = 11;
  const SignFlipReport r = jc_sign_flip_check(p, opt);
  EXPECT_LT(r.max_difference, 1e-9);
  EXPECT_LT(r.time_difference, 1e-15);
  // The two control states themselves are not symmetric at fixed sign.
  EXPECT_GT(std::abs(r.plus.fidelities.per_control[0] - r.plus.fidelities.per_control[1]), 1e-6);
}

}  // namespace
}  // namespace diamond
