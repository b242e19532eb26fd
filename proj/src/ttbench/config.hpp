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

// The key-value config format shared by registry overrides, scale weights,
// submission meta files and simulator configs. It is plain INI:
//
//   ; comment
//   [section]
//   key = value
//
// Section and key names are case-sensitive; surrounding whitespace is
// trimmed; duplicate sections or keys are rejected.

#ifndef TTBENCH_CONFIG_HPP_
#define TTBENCH_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ttbench {

struct ConfigSection {
  std::string name;
  std::vector<std::pair<std::string, std::string>> entries;

  const std::string* find(std::string_view key) const;

  // Typed getters throw Error(kInvalidConfig) when the value is present but
  // does not parse.
  std::optional<std::string> get_string(std::string_view key) const;
  std::optional<double> get_double(std::string_view key) const;
  std::optional<std::int64_t> get_int(std::string_view key) const;

  std::string require_string(std::string_view key) const;
  double require_double(std::string_view key) const;
  std::int64_t require_int(std::string_view key) const;
};

struct ConfigFile {
  std::vector<ConfigSection> sections;

  const ConfigSection* find(std::string_view name) const;
};

// Throws Error(kInvalidConfig) on syntax errors and Error(kIo) when the
// file cannot be read.
ConfigFile parse_config(std::string_view text);
ConfigFile load_config(const std::string& path);

// Splits "a, b ,c" into trimmed, non-empty items.
std::vector<std::string> split_list(std::string_view text, char sep = ',');

double parse_double_strict(std::string_view text, std::string_view what);
std::int64_t parse_int_strict(std::string_view text, std::string_view what);

}  // namespace ttbench

#endif  // TTBENCH_CONFIG_HPP_
