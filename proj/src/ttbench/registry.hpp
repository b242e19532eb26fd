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

#ifndef TTBENCH_REGISTRY_HPP_
#define TTBENCH_REGISTRY_HPP_

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ttbench/config.hpp"

namespace ttbench {

struct Round {
  std::string id;

  friend auto operator<=>(const Round&, const Round&) = default;
};

inline const Round kRoundV05{"v0.5"};
inline const Round kRoundV06{"v0.6"};

enum class Task { kVision, kTranslation, kRecommendation, kReinforcement };

std::string_view to_string(Task task);
std::optional<Task> parse_task(std::string_view text);

// Run count and variance tolerance are a function of the task alone.
int required_runs_for(Task task);
double variance_tol_for(Task task);

// Hyperparameter names every SGD-trained benchmark may modify. The
// "lr_schedule.*" entry matches any name with the "lr_schedule." prefix.
inline const std::set<std::string> kSgdWhitelist = {"batch_size", "lr_schedule.*"};

struct BenchmarkSpec {
  std::string name;
  Round round;
  Task task = Task::kVision;
  std::string metric_name;
  double threshold = 0.0;  // higher is better
  // Two-component targets (Mask R-CNN box/mask AP).
  std::optional<double> secondary_threshold;
  std::string secondary_metric_name;
  int required_runs = 0;
  double variance_tol = 0.0;
  std::set<std::string> hp_whitelist;
  // Legal values for an "optimizer" hyperparameter; empty when the
  // optimizer may not be changed.
  std::set<std::string> optimizer_choices;

  friend bool operator==(const BenchmarkSpec&, const BenchmarkSpec&) = default;
};

struct QualityValue {
  double primary = 0.0;
  std::optional<double> secondary;
};

// Inclusive comparison. For two-component specs both values must be
// present and meet their targets.
bool target_reached(const BenchmarkSpec& spec, QualityValue value);
bool target_reached(const BenchmarkSpec& spec, double value);

// Name-level whitelist check with the lr_schedule.* prefix rule.
bool hyperparameter_whitelisted(const BenchmarkSpec& spec, std::string_view name);

class Registry {
 public:
  // The embedded v0.5 / v0.6 table.
  static Registry defaults();

  // Defaults plus the overrides in an INI file whose sections are named
  // "<round>/<benchmark>". Throws Error(kInvalidConfig) / Error(kIo).
  static Registry with_overrides(const std::string& path);

  void apply_overrides(const ConfigFile& file);

  // Throws Error(kUnknownBenchmark).
  const BenchmarkSpec& lookup(const Round& round, std::string_view name) const;
  std::set<std::string> hp_whitelist(const Round& round, std::string_view name) const;

  bool contains(const Round& round, std::string_view name) const;
  std::vector<const BenchmarkSpec*> all() const;

 private:
  std::map<std::pair<Round, std::string>, BenchmarkSpec> specs_;
};

}  // namespace ttbench

#endif  // TTBENCH_REGISTRY_HPP_
