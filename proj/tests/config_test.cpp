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


#include "diamond/config.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

namespace diamond {
namespace {

TEST(ParseConfig, KeyValueLinesWithComments) {
  const ConfigSource s = parse_config_text(
      "# leading comment\n"
      "alpha = 1.5   # trailing comment\n"
      "\n"
      "   beta=two words  \n"
      "seed = 17\n");
  EXPECT_EQ(s.values.size(), 2u);
  EXPECT_EQ(s.values.at("alpha"), "1.5");
  EXPECT_EQ(s.values.at("beta"), "two words");
  ASSERT_TRUE(s.seed.has_value());
  EXPECT_EQ(*s.seed, 17u);
  EXPECT_FALSE(s.scenario.has_value());
}

TEST(ParseConfig, RejectsMalformedInput) {
  EXPECT_THROW(parse_config_text("alpha 1\n"), ConfigError);
  EXPECT_THROW(parse_config_text("alpha =\n"), ConfigError);
  EXPECT_THROW(parse_config_text("a = 1\na = 2\n"), ConfigError);
  EXPECT_THROW(parse_config_text("bad key = 1\n"), ConfigError);
  EXPECT_THROW(parse_config_text("seed = -3\n"), ConfigError);
  EXPECT_THROW(parse_config_text("seed = 1\nseed = 2\n"), ConfigError);
  EXPECT_THROW(load_config_file("/nonexistent/config.cfg"), ConfigError);
}

TEST(ParseConfig, ReadsBackOutputHeader) {
  const std::string text =
      "# {\n"
      "#   \"config\": {\"points\": \"5\", \"set\": \"2\"},\n"
      "#   \"scenario\": \"fid_vs_time\",\n"
      "#   \"seed\": 9\n"
      "# }\n"
      "t_ns,F\n"
      "1,0.5\n";
  const ConfigSource s = parse_config_text(text);
  EXPECT_EQ(s.values.at("points"), "5");
  EXPECT_EQ(s.values.at("set"), "2");
  ASSERT_TRUE(s.scenario.has_value());
  EXPECT_EQ(*s.scenario, "fid_vs_time");
  EXPECT_EQ(s.seed.value_or(0), 9u);
}

TEST(ResolveConfig, FillsDefaultsAndRejectsUnknownKeys) {
  std::vector<KeySpec> schema = {
      key("mode", "a", "mode"),
      {"width", [](const ConfigMap& m) { return m.at("mode") == "a" ? "1" : "2"; }, "width"},
  };
  ConfigMap out = resolve_config(schema, {});
  EXPECT_EQ(out.at("mode"), "a");
  EXPECT_EQ(out.at("width"), "1");
  out = resolve_config(schema, {{"mode", "b"}});
  EXPECT_EQ(out.at("width"), "2");
  out = resolve_config(schema, {{"mode", "b"}, {"width", "7"}});
  EXPECT_EQ(out.at("width"), "7");
  EXPECT_THROW(resolve_config(schema, {{"widht", "7"}}), ConfigError);
}

TEST(TypedConfig, ParsesAndValidatesValues) {
  const Config c({{"x", "2.5e-3"},
                  {"n", "12"},
                  {"f", "true"},
                  {"g", "0"},
                  {"xs", "1, 2.5,-3"},
                  {"names", "a,b"},
                  {"bad", "1.0abc"}});
  EXPECT_DOUBLE_EQ(c.number("x"), 2.5e-3);
  EXPECT_EQ(c.integer("n"), 12);
  EXPECT_TRUE(c.flag("f"));
  EXPECT_FALSE(c.flag("g"));
  EXPECT_EQ(c.numbers("xs"), (std::vector<double>{1.0, 2.5, -3.0}));
  EXPECT_EQ(c.list("names"), (std::vector<std::string>{"a", "b"}));
  EXPECT_THROW(c.number("bad"), ConfigError);
  EXPECT_THROW(c.integer("x"), ConfigError);
  EXPECT_THROW(c.flag("n"), ConfigError);
  EXPECT_THROW(c.text("missing"), ConfigError);
}

TEST(ConfigHash, IsFnv1aOverCanonicalText) {
  // Reference digests of "table1\nsets=1,2\n" and "x\na=1\nb=2\n".
  EXPECT_EQ(hex64(config_hash("table1", {{"sets", "1,2"}})), "e7cd408745fe3d29");
  EXPECT_EQ(hex64(config_hash("x", {{"b", "2"}, {"a", "1"}})), "ddd2b624c332e897");
  EXPECT_NE(config_hash("x", {{"a", "1"}}), config_hash("y", {{"a", "1"}}));
}

TEST(FormatNumber, RoundTripsExactly) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  for (int k = 0; k < 1000; ++k) {
    const double v = std::pow(10.0, u(rng)) * (k % 2 ? -1.0 : 1.0);
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(65.0), "65");
}

}  // namespace
}  // namespace diamond
