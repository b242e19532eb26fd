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

#include <unistd.h>

#include "doctest.h"
#include "ttbench/config.hpp"
#include "ttbench/error.hpp"
#include "ttbench/submission.hpp"

using namespace ttbench;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = TTBENCH_FIXTURES;

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / ("ttbench_" + name + "_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("run logs are listed by index") {
  TempDir dir("list");
  for (const char* name : {"run_10.log", "run_2.log", "run_0.log", "run_01.log", "run_.log",
                           "run_3.txt", "notes.log"}) {
    std::ofstream(dir.path / name) << "";
  }
  auto runs = list_run_logs(dir.path.string());
  REQUIRE(runs.size() == 3);
  CHECK(runs[0].first == 0);
  CHECK(runs[1].first == 2);
  CHECK(runs[2].first == 10);
  CHECK_THROWS_AS(list_run_logs((dir.path / "missing").string()), Error);
}

TEST_CASE("loading and scoring a fixture submission") {
  SubmissionDir dir = load_submission_dir(kFixtures + "/aggregate/resnet5", false);
  CHECK_FALSE(dir.meta.has_value());
  REQUIRE(dir.runs.size() == 5);
  auto decl = declared_benchmark(dir);
  REQUIRE(decl.has_value());
  CHECK(decl->first == kRoundV05);
  CHECK(decl->second == "resnet");

  Registry reg = Registry::defaults();
  std::vector<RunOutcome> outcomes = score_runs(dir, reg.lookup(kRoundV05, "resnet"));
  std::vector<std::int64_t> ttts;
  for (const RunOutcome& o : outcomes) {
    REQUIRE(o.result.has_value());
    ttts.push_back(o.result->ttt_ms);
  }
  CHECK(ttts == std::vector<std::int64_t>{600000, 720000, 660000, 780000, 840000});

  try {
    load_submission_dir(kFixtures + "/check/no_meta", true);
    FAIL("expected failure");
  } catch (const Error& ex) {
    CHECK(ex.code() == ErrorCode::kIo);
  }
  CHECK(load_submission_dir(kFixtures + "/check/compliant", true).meta.has_value());
}

TEST_CASE("a corrupt log fails the load with its path") {
  TempDir dir("corrupt");
  std::ofstream(dir.path / "run_0.log") << ":::TTT 0 run_start {}\n";
  std::ofstream(dir.path / "run_1.log") << ":::TTT 0 nonsense {}\n";
  try {
    load_submission_dir(dir.path.string(), false);
    FAIL("expected failure");
  } catch (const Error& ex) {
    CHECK(ex.code() == ErrorCode::kMalformedLine);
    CHECK(std::string(ex.what()).find("run_1.log") != std::string::npos);
  }
}

TEST_CASE("simulated submissions are written deterministically") {
  SimConfig cfg = parse_sim_config(parse_config(
      "[sim]\nbenchmark = resnet\nbatch_size = 4096\nseed = 3\nepoch_time_ms = 1000\n"
      "epochs_to_target_mean = 20\nepochs_to_target_spread = 0.4\na_max = 80\nnoise_sd = 0.1\n"
      "runs = 5\n[submission]\nsubmitter = x\nbenchmark = resnet\nround = v0.5\n"
      "division = closed\ncategory = available\nsubmission_date = 2019-05-01\n"
      "[system]\nhost_processors = 8\nhost_memory_gb = 64\naccelerators = gpu:4\n"));
  Registry reg = Registry::defaults();
  TempDir a("sim_a"), b("sim_b");
  CHECK(write_simulated_submission(cfg, reg.lookup(kRoundV05, "resnet"), a.path.string()) == 5);
  write_simulated_submission(cfg, reg.lookup(kRoundV05, "resnet"), b.path.string());
  for (const char* name : {"run_0.log", "run_4.log", "meta"}) {
    CHECK(read_text_file((a.path / name).string()) == read_text_file((b.path / name).string()));
  }
  SubmissionDir dir = load_submission_dir(a.path.string(), true);
  std::vector<RunLog> logs;
  for (const SubmissionRun& r : dir.runs) logs.push_back(r.log);
  CHECK(check_submission(*dir.meta, logs, reg).compliant());
}
