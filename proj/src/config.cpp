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

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace diamond {
namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::uint64_t parse_seed(const std::string& s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("seed must be an unsigned 64-bit integer, got '" + s + "'");
  }
  return v;
}

std::optional<ConfigSource> try_header(const std::vector<std::string>& comment_lines) {
  std::string joined;
  for (const auto& line : comment_lines) joined += line + "\n";
  const auto j = nlohmann::json::parse(joined, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("config") || !j["config"].is_object()) {
    return std::nullopt;
  }
  ConfigSource src;
  for (const auto& [k, v] : j["config"].items()) {
    if (!v.is_string()) throw ConfigError("header config value for '" + k + "' is not a string");
    src.values[k] = v.get<std::string>();
  }
  if (j.contains("scenario") && j["scenario"].is_string()) src.scenario = j["scenario"].get<std::string>();
  if (j.contains("seed") && j["seed"].is_number_unsigned()) src.seed = j["seed"].get<std::uint64_t>();
  return src;
}

}  // namespace

ConfigSource parse_config_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> leading_comments;
  bool in_header = true;
  ConfigSource src;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (in_header && !line.empty() && line[0] == '#') {
      std::string body = line.substr(1);
      if (!body.empty() && body[0] == ' ') body.erase(0, 1);
      leading_comments.push_back(body);
      continue;
    }
    if (in_header) {
      in_header = false;
      if (auto header = try_header(leading_comments)) return *header;
    }
    const std::string content = trim(line.substr(0, line.find('#')));
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string k = trim(content.substr(0, eq));
    const std::string v = trim(content.substr(eq + 1));
    if (k.empty() || v.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
    }
    for (char c : k) {
      if (!(std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '_')) {
        throw ConfigError("line " + std::to_string(line_no) + ": invalid key '" + k + "'");
      }
    }
    if (k == "seed") {
      if (src.seed) throw ConfigError("duplicate key 'seed'");
      src.seed = parse_seed(v);
      continue;
    }
    if (!src.values.emplace(k, v).second) throw ConfigError("duplicate key '" + k + "'");
  }
  if (in_header) {
    if (auto header = try_header(leading_comments)) return *header;
  }
  return src;
}

ConfigSource load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

KeySpec key(std::string name, std::string default_value, std::string help) {
  return {std::move(name), [d = std::move(default_value)](const ConfigMap&) { return d; },
          std::move(help)};
}

ConfigMap resolve_config(const std::vector<KeySpec>& schema, const ConfigMap& raw) {
  for (const auto& [k, v] : raw) {
    bool known = false;
    for (const auto& s : schema) known = known || s.key == k;
    if (!known) throw ConfigError("unknown config key '" + k + "'");
  }
  ConfigMap out;
  for (const auto& s : schema) {
    const auto it = raw.find(s.key);
    out[s.key] = it != raw.end() ? it->second : s.default_value(out);
  }
  return out;
}

const std::string& Config::text(const std::string& k) const {
  const auto it = values_.find(k);
  if (it == values_.end()) throw ConfigError("missing config key '" + k + "'");
  return it->second;
}

double Config::number(const std::string& k) const {
  const std::string& s = text(k);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError("key '" + k + "': expected a number, got '" + s + "'");
  }
  return v;
}

int Config::integer(const std::string& k) const {
  const std::string& s = text(k);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("key '" + k + "': expected an integer, got '" + s + "'");
  }
  return v;
}

bool Config::flag(const std::string& k) const {
  const std::string& s = text(k);
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ConfigError("key '" + k + "': expected true or false, got '" + s + "'");
}

std::vector<std::string> Config::list(const std::string& k) const {
  std::vector<std::string> out;
  std::stringstream ss(text(k));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("key '" + k + "': empty list element");
    out.push_back(item);
  }
  return out;
}

std::vector<double> Config::numbers(const std::string& k) const {
  std::vector<double> out;
  for (const auto& item : list(k)) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || !std::isfinite(v)) {
      throw ConfigError("key '" + k + "': '" + item + "' is not a number");
    }
    out.push_back(v);
  }
  return out;
}

std::uint64_t config_hash(std::string_view scenario, const ConfigMap& values) {
  std::uint64_t h = 14695981039346656037ull;
  auto feed = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  feed(scenario);
  feed("\n");
  for (const auto& [k, v] : values) {
    feed(k);
    feed("=");
    feed(v);
    feed("\n");
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string format_number(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("format_number: conversion failed");
  return std::string(buf, ptr);
}

}  // namespace diamond
