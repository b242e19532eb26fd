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

// Time-to-train scoring of a single run.
//
// The timed window opens at the first data_touch and closes at the first
// eval_result that meets the quality target. Model-initialization time
// inside the window is excluded up to kModelInitCapMs in total; reformat
// time inside the window is excluded without limit.

#ifndef TTBENCH_TIMING_HPP_
#define TTBENCH_TIMING_HPP_

#include <cstdint>
#include <optional>

#include "ttbench/event_log.hpp"
#include "ttbench/registry.hpp"

namespace ttbench {

inline constexpr std::int64_t kModelInitCapMs = 20 * 60 * 1000;

struct TimedResult {
  Timestamp start_ts;
  Timestamp stop_ts;
  std::int64_t model_init_excluded_ms = 0;  // after the cap
  std::int64_t reformat_excluded_ms = 0;
  std::int64_t excluded_ms = 0;
  std::int64_t ttt_ms = 0;
  std::int64_t quality_epoch = 0;  // epoch of the qualifying eval_result

  friend bool operator==(const TimedResult&, const TimedResult&) = default;
};

// Quality reading of an eval_result for the given spec, or nullopt when the
// payload lacks the fields the spec needs (e.g. box/mask values).
std::optional<QualityValue> eval_quality(const LogEvent& eval, const BenchmarkSpec& spec);

// Index of the earliest qualifying eval_result. Throws Error(kTargetNotReached).
std::size_t first_qualifying_eval(const RunLog& log, const BenchmarkSpec& spec);

// Throws Error(kMissingDataTouch), Error(kTargetNotReached) or
// Error(kMalformedLog) when the qualifying evaluation precedes the first
// data touch.
TimedResult compute_time_to_train(const RunLog& log, const BenchmarkSpec& spec);

// Throws Error(kTargetNotReached).
std::int64_t first_quality_epoch(const RunLog& log, const BenchmarkSpec& spec);

}  // namespace ttbench

#endif  // TTBENCH_TIMING_HPP_
