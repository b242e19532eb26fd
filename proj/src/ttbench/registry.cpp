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

#include "ttbench/registry.hpp"

#include <cmath>

#include "ttbench/error.hpp"

namespace ttbench {
namespace {

BenchmarkSpec make_spec(std::string name, Round round, Task task, std::string metric,
                        double threshold, std::set<std::string> extras = {}) {
  BenchmarkSpec spec;
  spec.name = std::move(name);
  spec.round = std::move(round);
  spec.task = task;
  spec.metric_name = std::move(metric);
  spec.threshold = threshold;
  spec.required_runs = required_runs_for(task);
  spec.variance_tol = variance_tol_for(task);
  spec.hp_whitelist = kSgdWhitelist;
  spec.hp_whitelist.insert(extras.begin(), extras.end());
  return spec;
}

std::vector<BenchmarkSpec> round_v05() {
  std::vector<BenchmarkSpec> specs;
  specs.push_back(make_spec("resnet", kRoundV05, Task::kVision, "Top-1 accuracy", 74.9));
  specs.push_back(
      make_spec("ssd", kRoundV05, Task::kVision, "mAP", 21.2, {"max_samples_per_patch"}));

  BenchmarkSpec mask = make_spec("maskrcnn", kRoundV05, Task::kVision, "Box min AP", 37.7,
                                 {"num_image_candidates"});
  mask.secondary_threshold = 33.9;
  mask.secondary_metric_name = "Mask min AP";
  specs.push_back(std::move(mask));

  specs.push_back(make_spec("gnmt", kRoundV05, Task::kTranslation, "Sacre BLEU", 21.8,
                            {"lr_decay_fn", "lr", "decay_start", "decay_interval", "warmup_fn",
                             "warmup_steps"}));

  BenchmarkSpec transformer = make_spec("transformer", kRoundV05, Task::kTranslation, "BLEU",
                                        25.0, {"optimizer", "lr", "warmup_steps"});
  transformer.optimizer_choices = {"adam", "lazy_adam"};
  specs.push_back(std::move(transformer));

  BenchmarkSpec ncf = make_spec("ncf", kRoundV05, Task::kRecommendation, "HR@10", 0.635,
                                {"optimizer", "lr", "beta1", "beta2"});
  ncf.optimizer_choices = {"adam", "lazy_adam"};
  specs.push_back(std::move(ncf));

  specs.push_back(make_spec("minigo", kRoundV05, Task::kReinforcement,
                            "Professional move prediction", 40.0));
  return specs;
}

// v0.6 raised three targets and admitted LARS for ResNet; everything else
// carries over.
std::vector<BenchmarkSpec> round_v06(const std::vector<BenchmarkSpec>& v05) {
  std::vector<BenchmarkSpec> specs;
  for (BenchmarkSpec spec : v05) {
    spec.round = kRoundV06;
    if (spec.name == "resnet") {
      spec.threshold = 75.9;
      spec.optimizer_choices = {"lars", "sgd"};
    } else if (spec.name == "ssd") {
      spec.threshold = 23.0;
    } else if (spec.name == "gnmt") {
      spec.threshold = 24.0;
    }
    specs.push_back(std::move(spec));
  }
  return specs;
}

[[noreturn]] void bad_override(const std::string& section, const std::string& why) {
  fail(ErrorCode::kInvalidConfig, "registry override [" + section + "]: " + why);
}

std::set<std::string> parse_set(const std::string& text) {
  std::vector<std::string> items = split_list(text);
  return {items.begin(), items.end()};
}

}  // namespace

std::string_view to_string(Task task) {
  switch (task) {
    case Task::kVision: return "vision";
    case Task::kTranslation: return "translation";
    case Task::kRecommendation: return "recommendation";
    case Task::kReinforcement: return "rl";
  }
  return "unknown";
}

std::optional<Task> parse_task(std::string_view text) {
  if (text == "vision") return Task::kVision;
  if (text == "translation") return Task::kTranslation;
  if (text == "recommendation") return Task::kRecommendation;
  if (text == "rl") return Task::kReinforcement;
  return std::nullopt;
}

int required_runs_for(Task task) { return task == Task::kVision ? 5 : 10; }

double variance_tol_for(Task task) { return task == Task::kVision ? 0.05 : 0.10; }

bool target_reached(const BenchmarkSpec& spec, QualityValue value) {
  if (!(value.primary >= spec.threshold)) return false;
  if (spec.secondary_threshold) {
    return value.secondary && *value.secondary >= *spec.secondary_threshold;
  }
  return true;
}

bool target_reached(const BenchmarkSpec& spec, double value) {
  return target_reached(spec, QualityValue{value, std::nullopt});
}

bool hyperparameter_whitelisted(const BenchmarkSpec& spec, std::string_view name) {
  for (const std::string& entry : spec.hp_whitelist) {
    if (entry.ends_with(".*")) {
      std::string_view prefix(entry.data(), entry.size() - 1);
      if (name.starts_with(prefix) && name.size() > prefix.size()) return true;
    } else if (entry == name) {
      return true;
    }
  }
  return false;
}

Registry Registry::defaults() {
  Registry registry;
  std::vector<BenchmarkSpec> v05 = round_v05();
  for (BenchmarkSpec& spec : round_v06(v05)) {
    registry.specs_.emplace(std::make_pair(spec.round, spec.name), std::move(spec));
  }
  for (BenchmarkSpec& spec : v05) {
    registry.specs_.emplace(std::make_pair(spec.round, spec.name), std::move(spec));
  }
  return registry;
}

Registry Registry::with_overrides(const std::string& path) {
  Registry registry = defaults();
  registry.apply_overrides(load_config(path));
  return registry;
}

void Registry::apply_overrides(const ConfigFile& file) {
  for (const ConfigSection& section : file.sections) {
    std::size_t slash = section.name.find('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 == section.name.size()) {
      bad_override(section.name, "section must be named <round>/<benchmark>");
    }
    Round round{section.name.substr(0, slash)};
    std::string name = section.name.substr(slash + 1);

    auto key = std::make_pair(round, name);
    auto it = specs_.find(key);
    BenchmarkSpec spec;
    if (it != specs_.end()) {
      spec = it->second;
    } else {
      if (!section.find("task") || !section.find("metric") || !section.find("threshold")) {
        bad_override(section.name, "new benchmarks need task, metric and threshold");
      }
      spec.name = name;
      spec.round = round;
      spec.hp_whitelist = kSgdWhitelist;
    }

    for (const auto& [k, v] : section.entries) {
      if (k == "task") {
        std::optional<Task> task = parse_task(v);
        if (!task) bad_override(section.name, "unknown task '" + v + "'");
        spec.task = *task;
      } else if (k == "metric") {
        spec.metric_name = v;
      } else if (k == "threshold") {
        spec.threshold = parse_double_strict(v, section.name + " threshold");
      } else if (k == "secondary_threshold") {
        spec.secondary_threshold = parse_double_strict(v, section.name + " secondary_threshold");
      } else if (k == "secondary_metric") {
        spec.secondary_metric_name = v;
      } else if (k == "hp_whitelist") {
        spec.hp_whitelist = parse_set(v);
      } else if (k == "optimizer_choices") {
        spec.optimizer_choices = parse_set(v);
      } else if (k != "required_runs" && k != "variance_tol") {
        bad_override(section.name, "unknown key '" + k + "'");
      }
    }

    spec.required_runs = required_runs_for(spec.task);
    spec.variance_tol = variance_tol_for(spec.task);
    if (std::optional<std::int64_t> runs = section.get_int("required_runs");
        runs && *runs != spec.required_runs) {
      bad_override(section.name, "required_runs must be " + std::to_string(spec.required_runs) +
                                     " for task " + std::string(to_string(spec.task)));
    }
    if (std::optional<double> tol = section.get_double("variance_tol");
        tol && *tol != spec.variance_tol) {
      bad_override(section.name, "variance_tol does not match task " +
                                     std::string(to_string(spec.task)));
    }
    specs_.insert_or_assign(key, std::move(spec));
  }
}

const BenchmarkSpec& Registry::lookup(const Round& round, std::string_view name) const {
  auto it = specs_.find(std::make_pair(round, std::string(name)));
  if (it == specs_.end()) {
    fail(ErrorCode::kUnknownBenchmark,
         "unknown benchmark '" + std::string(name) + "' for round " + round.id);
  }
  return it->second;
}

std::set<std::string> Registry::hp_whitelist(const Round& round, std::string_view name) const {
  return lookup(round, name).hp_whitelist;
}

bool Registry::contains(const Round& round, std::string_view name) const {
  return specs_.contains(std::make_pair(round, std::string(name)));
}

std::vector<const BenchmarkSpec*> Registry::all() const {
  std::vector<const BenchmarkSpec*> out;
  out.reserve(specs_.size());
  for (const auto& [key, spec] : specs_) out.push_back(&spec);
  return out;
}

}  // namespace ttbench
