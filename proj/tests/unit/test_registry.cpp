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

#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "ttbench/config.hpp"
#include "ttbench/error.hpp"
#include "ttbench/registry.hpp"

using namespace ttbench;

namespace {

const Registry& reg() {
  static const Registry r = Registry::defaults();
  return r;
}

}  // namespace

TEST_CASE("v0.5 thresholds") {
  CHECK(reg().lookup(kRoundV05, "resnet").threshold == 74.9);
  CHECK(reg().lookup(kRoundV05, "ssd").threshold == 21.2);
  CHECK(reg().lookup(kRoundV05, "maskrcnn").threshold == 37.7);
  CHECK(reg().lookup(kRoundV05, "maskrcnn").secondary_threshold == 33.9);
  CHECK(reg().lookup(kRoundV05, "gnmt").threshold == 21.8);
  CHECK(reg().lookup(kRoundV05, "transformer").threshold == 25.0);
  CHECK(reg().lookup(kRoundV05, "ncf").threshold == 0.635);
  CHECK(reg().lookup(kRoundV05, "minigo").threshold == 40.0);
  CHECK(reg().all().size() == 14);
}

TEST_CASE("v0.6 differs only in three thresholds and the resnet optimizer set") {
  for (const BenchmarkSpec* b : reg().all()) {
    if (b->round != kRoundV06) continue;
    BenchmarkSpec a = reg().lookup(kRoundV05, b->name);
    a.round = kRoundV06;
    if (b->name == "resnet") {
      CHECK(b->threshold == 75.9);
      CHECK(b->optimizer_choices == std::set<std::string>{"lars", "sgd"});
      a.threshold = b->threshold;
      a.optimizer_choices = b->optimizer_choices;
    } else if (b->name == "ssd") {
      CHECK(b->threshold == 23.0);
      a.threshold = b->threshold;
    } else if (b->name == "gnmt") {
      CHECK(b->threshold == 24.0);
      a.threshold = b->threshold;
    }
    CHECK(a == *b);
  }
}

TEST_CASE("run count and tolerance follow the task") {
  for (const BenchmarkSpec* b : reg().all()) {
    CAPTURE(b->name);
    if (b->task == Task::kVision) {
      CHECK(b->required_runs == 5);
      CHECK(b->variance_tol == 0.05);
    } else {
      CHECK(b->required_runs == 10);
      CHECK(b->variance_tol == 0.10);
    }
  }
  CHECK(reg().lookup(kRoundV05, "resnet").required_runs == 5);
  CHECK(reg().lookup(kRoundV06, "gnmt").required_runs == 10);
}

TEST_CASE("unknown benchmarks") {
  try {
    reg().lookup(kRoundV05, "bert");
    FAIL("expected failure");
  } catch (const Error& ex) {
    CHECK(ex.code() == ErrorCode::kUnknownBenchmark);
  }
  CHECK_FALSE(reg().contains(Round{"v0.7"}, "resnet"));
  CHECK_THROWS_AS(reg().hp_whitelist(kRoundV05, "bert"), Error);
}

TEST_CASE("target_reached is inclusive and needs both mask metrics") {
  const BenchmarkSpec& resnet = reg().lookup(kRoundV05, "resnet");
  CHECK(target_reached(resnet, 74.9));
  CHECK_FALSE(target_reached(resnet, 74.89));
  const BenchmarkSpec& mask = reg().lookup(kRoundV05, "maskrcnn");
  CHECK_FALSE(target_reached(mask, QualityValue{37.8, 33.8}));
  CHECK_FALSE(target_reached(mask, QualityValue{37.6, 34.0}));
  CHECK(target_reached(mask, QualityValue{37.7, 33.9}));
  CHECK_FALSE(target_reached(mask, QualityValue{40.0, std::nullopt}));
}

TEST_CASE("target_reached is monotone in value") {
  const BenchmarkSpec& ncf = reg().lookup(kRoundV05, "ncf");
  bool seen = false;
  for (int i = 0; i <= 1000; ++i) {
    bool now = target_reached(ncf, i / 1000.0);
    CHECK((!seen || now));
    seen = seen || now;
  }
  CHECK(seen);
}

TEST_CASE("hyperparameter whitelists") {
  using S = std::set<std::string>;
  CHECK(reg().hp_whitelist(kRoundV05, "resnet") == S{"batch_size", "lr_schedule.*"});
  CHECK(reg().hp_whitelist(kRoundV05, "minigo") == kSgdWhitelist);
  CHECK(reg().hp_whitelist(kRoundV05, "ssd") ==
        S{"batch_size", "lr_schedule.*", "max_samples_per_patch"});
  CHECK(reg().hp_whitelist(kRoundV05, "maskrcnn") ==
        S{"batch_size", "lr_schedule.*", "num_image_candidates"});
  CHECK(reg().hp_whitelist(kRoundV05, "gnmt") ==
        S{"batch_size", "lr_schedule.*", "lr_decay_fn", "lr", "decay_start", "decay_interval",
          "warmup_fn", "warmup_steps"});
  CHECK(reg().hp_whitelist(kRoundV05, "transformer") ==
        S{"batch_size", "lr_schedule.*", "optimizer", "lr", "warmup_steps"});
  CHECK(reg().hp_whitelist(kRoundV05, "ncf") ==
        S{"batch_size", "lr_schedule.*", "optimizer", "lr", "beta1", "beta2"});
  CHECK(reg().lookup(kRoundV05, "ncf").optimizer_choices == S{"adam", "lazy_adam"});
  CHECK(reg().lookup(kRoundV05, "transformer").optimizer_choices == S{"adam", "lazy_adam"});

  const BenchmarkSpec& resnet = reg().lookup(kRoundV05, "resnet");
  CHECK(hyperparameter_whitelisted(resnet, "batch_size"));
  CHECK(hyperparameter_whitelisted(resnet, "lr_schedule.base_lr"));
  CHECK_FALSE(hyperparameter_whitelisted(resnet, "lr_schedule"));
  CHECK_FALSE(hyperparameter_whitelisted(resnet, "lr_schedule_x"));
  CHECK_FALSE(hyperparameter_whitelisted(resnet, "dropout_rate"));
}

TEST_CASE("overrides change data and new rounds load without code changes") {
  Registry r = Registry::defaults();
  r.apply_overrides(parse_config(
      "[v0.5/resnet]\nthreshold = 75.0\n"
      "[v0.7/bert]\ntask = translation\nmetric = accuracy\nthreshold = 0.712\n"
      "hp_whitelist = batch_size, lr\n"));
  CHECK(r.lookup(kRoundV05, "resnet").threshold == 75.0);
  const BenchmarkSpec& bert = r.lookup(Round{"v0.7"}, "bert");
  CHECK(bert.required_runs == 10);
  CHECK(bert.variance_tol == 0.10);
  CHECK(bert.hp_whitelist == std::set<std::string>{"batch_size", "lr"});
}

TEST_CASE("overrides cannot contradict the task-derived run count") {
  Registry r = Registry::defaults();
  auto code = [&](const char* text) {
    try {
      r.apply_overrides(parse_config(text));
    } catch (const Error& ex) {
      return ex.code();
    }
    return ErrorCode::kInvalidArgument;
  };
  CHECK(code("[v0.5/resnet]\nrequired_runs = 10\n") == ErrorCode::kInvalidConfig);
  CHECK(code("[v0.5/resnet]\nvariance_tol = 0.1\n") == ErrorCode::kInvalidConfig);
  CHECK(code("[v0.5/resnet]\ncolour = red\n") == ErrorCode::kInvalidConfig);
  CHECK(code("[resnet]\nthreshold = 1\n") == ErrorCode::kInvalidConfig);
  CHECK(code("[v0.7/new]\nthreshold = 1\n") == ErrorCode::kInvalidConfig);
  CHECK(code("[v0.5/resnet]\ntask = poetry\n") == ErrorCode::kInvalidConfig);
}

TEST_CASE("with_overrides reads a file") {
  std::filesystem::path path = std::filesystem::temp_directory_path() / "ttbench_registry.ini";
  std::ofstream(path) << "[v0.6/ssd]\nthreshold = 22.5\n";
  Registry r = Registry::with_overrides(path.string());
  CHECK(r.lookup(kRoundV06, "ssd").threshold == 22.5);
  std::filesystem::remove(path);
}
