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

// Submission directory layout:
//
//   <dir>/meta         SubmissionMeta descriptor (INI)
//   <dir>/run_<k>.log  one log per run, k = 0, 1, ...

#ifndef TTBENCH_SUBMISSION_HPP_
#define TTBENCH_SUBMISSION_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ttbench/aggregation.hpp"
#include "ttbench/compliance.hpp"
#include "ttbench/convergence_sim.hpp"
#include "ttbench/error.hpp"
#include "ttbench/event_log.hpp"
#include "ttbench/timing.hpp"

namespace ttbench {

inline constexpr const char* kMetaFileName = "meta";

struct SubmissionRun {
  int index = 0;
  std::string path;
  RunLog log;
};

struct SubmissionDir {
  std::string path;
  std::optional<SubmissionMeta> meta;
  std::vector<SubmissionRun> runs;  // ascending index
};

// run_<k>.log files in ascending k. Throws Error(kIo) when dir is not a
// directory.
std::vector<std::pair<int, std::string>> list_run_logs(const std::string& dir);

// Parses all logs (in parallel). The first failure by run index is
// rethrown. Throws Error(kIo) for a missing meta file when require_meta.
SubmissionDir load_submission_dir(const std::string& dir, bool require_meta);

struct RunOutcome {
  int index = 0;
  std::optional<TimedResult> result;
  ErrorCode error = ErrorCode::kTargetNotReached;
  std::string message;
};

std::vector<RunOutcome> score_runs(const SubmissionDir& dir, const BenchmarkSpec& spec);

// Benchmark and round the directory declares: meta first, then the first
// log's benchmark_decl.
std::optional<std::pair<Round, std::string>> declared_benchmark(const SubmissionDir& dir);

// Writes cfg.runs logs and, when cfg.meta is set, the meta file. Returns
// the number of logs written.
int write_simulated_submission(const SimConfig& cfg, const BenchmarkSpec& spec,
                               const std::string& outdir);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace ttbench

#endif  // TTBENCH_SUBMISSION_HPP_
