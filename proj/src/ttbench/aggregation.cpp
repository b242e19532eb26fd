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

#include "ttbench/aggregation.hpp"

#include <algorithm>
#include <cmath>

#include "ttbench/error.hpp"

namespace ttbench {

Score olympic_mean(std::span<const std::int64_t> ttts, const BenchmarkSpec& spec) {
  if (ttts.size() != static_cast<std::size_t>(spec.required_runs)) {
    fail(ErrorCode::kWrongRunCount,
         spec.name + " requires " + std::to_string(spec.required_runs) + " runs, got " +
             std::to_string(ttts.size()));
  }
  if (ttts.size() < 3) {
    fail(ErrorCode::kWrongRunCount, "olympic scoring needs at least 3 runs");
  }

  std::size_t min_i = 0;
  std::size_t max_i = 0;
  for (std::size_t i = 0; i < ttts.size(); ++i) {
    if (ttts[i] <= 0) {
      fail(ErrorCode::kNonPositiveDuration,
           "run " + std::to_string(i) + " has non-positive duration " + std::to_string(ttts[i]));
    }
    if (ttts[i] < ttts[min_i]) min_i = i;
    if (ttts[i] > ttts[max_i]) max_i = i;
  }
  if (min_i == max_i) max_i = min_i == 0 ? 1 : 0;

  // Integer sum keeps the mean exact up to the final division.
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < ttts.size(); ++i) {
    if (i == min_i || i == max_i) continue;
    if (__builtin_add_overflow(sum, ttts[i], &sum)) {
      fail(ErrorCode::kInvalidArgument, "sum of run durations overflows");
    }
  }

  Score score;
  score.benchmark = spec.name;
  score.run_ttts_ms.assign(ttts.begin(), ttts.end());
  score.dropped_min_index = min_i;
  score.dropped_max_index = max_i;
  score.value_ms = static_cast<double>(sum) / static_cast<double>(ttts.size() - 2);
  return score;
}

double median_of(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::size_t n = sorted.size();
  if (n == 0) return 0.0;
  if (n % 2 == 1) return sorted[n / 2];
  return (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
}

VarianceReport variance_diagnostic(std::span<const double> scores, double tol) {
  if (scores.size() < 2) {
    fail(ErrorCode::kTooFewRuns, "variance diagnostic needs at least 2 scores");
  }
  if (!(tol > 0.0)) fail(ErrorCode::kInvalidArgument, "tolerance must be positive");

  VarianceReport report;
  report.median = median_of(scores);
  std::size_t within = 0;
  for (double s : scores) {
    if (std::abs(s - report.median) <= tol * std::abs(report.median)) ++within;
  }
  report.fraction_within = static_cast<double>(within) / static_cast<double>(scores.size());
  report.pass = report.fraction_within >= kVarianceTargetFraction;
  return report;
}

}  // namespace ttbench
