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


// Flat key-value configuration with strict key checking, and the JSON
// provenance header written in front of every output file.
//
// Config text: one `key = value` per line, '#' starts a comment. A file whose
// leading '#' lines hold a JSON object with a "config" member (an earlier
// output file) is read back as that config.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace diamond {

using ConfigMap = std::map<std::string, std::string>;

/// Thrown for malformed files, unknown keys and unparsable values.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConfigSource {
  ConfigMap values;
  std::optional<std::string> scenario;  // only from an output header
  std::optional<std::uint64_t> seed;    // from a `seed` key or a header
};

ConfigSource parse_config_text(std::string_view text);
ConfigSource load_config_file(const std::string& path);

struct KeySpec {
  std::string key;
  /// Default derived from the keys resolved before this one.
  std::function<std::string(const ConfigMap&)> default_value;
  std::string help;
};

KeySpec key(std::string name, std::string default_value, std::string help);

/// Resolves `raw` against `schema` (in order). Throws ConfigError on keys
/// not in the schema.
ConfigMap resolve_config(const std::vector<KeySpec>& schema, const ConfigMap& raw);

/// Typed read access to a resolved config.
class Config {
 public:
  explicit Config(ConfigMap values) : values_(std::move(values)) {}

  const ConfigMap& values() const { return values_; }
  const std::string& text(const std::string& key) const;
  double number(const std::string& key) const;
  int integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  /// Comma-separated list of numbers.
  std::vector<double> numbers(const std::string& key) const;
  std::vector<std::string> list(const std::string& key) const;

 private:
  ConfigMap values_;
};

/// 64-bit FNV-1a over "scenario\n" followed by "key=value\n" in key order.
std::uint64_t config_hash(std::string_view scenario, const ConfigMap& values);
std::string hex64(std::uint64_t v);

/// Shortest decimal rendering that reads back to the same double.
std::string format_number(double v);

}  // namespace diamond
