// Copyright 2026 The ttbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ttbench/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ttbench/error.hpp"

namespace ttbench {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

ConfigFile from_tree(const boost::property_tree::ptree& tree) {
  ConfigFile file;
  for (const auto& [name, child] : tree) {
    if (!child.data().empty()) {
      fail(ErrorCode::kInvalidConfig, "key '" + name + "' outside of a [section]");
    }
    ConfigSection section{name, {}};
    for (const auto& [key, value] : child) {
      section.entries.emplace_back(key, value.data());
    }
    file.sections.push_back(std::move(section));
  }
  return file;
}

}  // namespace

const std::string* ConfigSection::find(std::string_view key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::optional<std::string> ConfigSection::get_string(std::string_view key) const {
  const std::string* v = find(key);
  if (v == nullptr) return std::nullopt;
  return *v;
}

std::optional<double> ConfigSection::get_double(std::string_view key) const {
  const std::string* v = find(key);
  if (v == nullptr) return std::nullopt;
  return parse_double_strict(*v, "[" + name + "] " + std::string(key));
}

std::optional<std::int64_t> ConfigSection::get_int(std::string_view key) const {
  const std::string* v = find(key);
  if (v == nullptr) return std::nullopt;
  return parse_int_strict(*v, "[" + name + "] " + std::string(key));
}

std::string ConfigSection::require_string(std::string_view key) const {
  std::optional<std::string> v = get_string(key);
  if (!v) fail(ErrorCode::kInvalidConfig, "[" + name + "] missing key '" + std::string(key) + "'");
  return *v;
}

double ConfigSection::require_double(std::string_view key) const {
  std::optional<double> v = get_double(key);
  if (!v) fail(ErrorCode::kInvalidConfig, "[" + name + "] missing key '" + std::string(key) + "'");
  return *v;
}

std::int64_t ConfigSection::require_int(std::string_view key) const {
  std::optional<std::int64_t> v = get_int(key);
  if (!v) fail(ErrorCode::kInvalidConfig, "[" + name + "] missing key '" + std::string(key) + "'");
  return *v;
}

const ConfigSection* ConfigFile::find(std::string_view name) const {
  for (const ConfigSection& s : sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

ConfigFile parse_config(std::string_view text) {
  std::istringstream in{std::string(text)};
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& ex) {
    fail(ErrorCode::kInvalidConfig, std::string("config syntax error: ") + ex.what());
  }
  return from_tree(tree);
}

ConfigFile load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_config(text.str());
  } catch (const Error& ex) {
    fail(ex.code(), path + ": " + ex.what());
  }
}

std::vector<std::string> split_list(std::string_view text, char sep) {
  std::vector<std::string> items;
  while (true) {
    std::size_t pos = text.find(sep);
    std::string_view item = trim(text.substr(0, pos));
    if (!item.empty()) items.emplace_back(item);
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return items;
}

double parse_double_strict(std::string_view text, std::string_view what) {
  text = trim(text);
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() ||
      !std::isfinite(value)) {
    fail(ErrorCode::kInvalidConfig,
         std::string(what) + ": expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

std::int64_t parse_int_strict(std::string_view text, std::string_view what) {
  text = trim(text);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    fail(ErrorCode::kInvalidConfig,
         std::string(what) + ": expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace ttbench
