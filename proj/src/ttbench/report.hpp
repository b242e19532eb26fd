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

// Cloud-scale metric, per-benchmark result tables and cross-round
// comparisons. Results are always reported per benchmark; nothing here
// produces a suite-wide summary.

#ifndef TTBENCH_REPORT_HPP_
#define TTBENCH_REPORT_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ttbench/compliance.hpp"
#include "ttbench/registry.hpp"

namespace ttbench {

struct ScaleWeights {
  double w_proc = 1.0;
  double w_mem_gb = 0.01;
  std::map<std::string, double, std::less<>> w_accel;
};

// Empty when valid.
std::string validate_weights(const ScaleWeights& weights);

// [weights] proc, mem_gb and accel.<type> keys. Throws Error(kInvalidConfig).
ScaleWeights parse_scale_weights(const ConfigFile& file);
ScaleWeights load_scale_weights(const std::string& path);

// Linear in every system quantity. Accelerator types with a non-zero count
// must have a weight; throws Error(kUnknownAcceleratorType) otherwise.
double cloud_scale(const SystemDesc& system, const ScaleWeights& weights);

struct ResultRow {
  Round round;
  std::string benchmark;
  std::string submitter;
  Division division = Division::kClosed;
  Category category = Category::kAvailable;
  std::int64_t chips = 0;
  double score_ms = 0.0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

// Accelerator total, or host processors for CPU-only systems.
std::int64_t chip_count(const SystemDesc& system);

inline constexpr std::string_view kResultsHeader =
    "round,benchmark,submitter,division,category,chips,score_ms";

std::string results_table(std::span<const ResultRow> rows);

// Throws Error(kMalformedCsv).
std::vector<ResultRow> parse_results_csv(std::string_view text);
std::vector<ResultRow> load_results_csv(const std::string& path);

struct ComparisonRow {
  std::string benchmark;
  double value_a = 0.0;  // fastest score or chip count in round a
  double value_b = 0.0;
  double ratio = 0.0;
};

struct Comparison {
  std::vector<ComparisonRow> rows;  // sorted by benchmark
  std::vector<std::string> notes;   // omitted benchmarks
};

// Per benchmark present at exactly `chips` chips in both lists:
// fastest score in a / fastest score in b. Throws Error(kInvalidArgument)
// when either list is empty.
Comparison speedup_report(std::span<const ResultRow> a, std::span<const ResultRow> b,
                          std::int64_t chips);

// Per benchmark present in both lists: chips of the overall-fastest entry
// in b / chips of the overall-fastest entry in a.
Comparison chip_count_report(std::span<const ResultRow> a, std::span<const ResultRow> b);

// Horizontal bar chart, one bar per comparison row.
std::string comparison_svg(const Comparison& comparison, std::string_view title,
                           std::string_view axis_label);

// Shortest decimal text that reads back to the same double.
std::string format_number(double value);

}  // namespace ttbench

#endif  // TTBENCH_REPORT_HPP_
