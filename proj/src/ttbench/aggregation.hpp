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

#ifndef TTBENCH_AGGREGATION_HPP_
#define TTBENCH_AGGREGATION_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ttbench/registry.hpp"

namespace ttbench {

struct Score {
  std::string benchmark;
  std::vector<std::int64_t> run_ttts_ms;
  std::size_t dropped_min_index = 0;
  std::size_t dropped_max_index = 0;
  double value_ms = 0.0;
};

// Drops one fastest and one slowest run (first occurrence on ties; when all
// runs tie, the first two entries) and averages the rest.
// Throws Error(kWrongRunCount) unless ttts.size() == spec.required_runs and
// Error(kNonPositiveDuration) for any entry <= 0.
Score olympic_mean(std::span<const std::int64_t> ttts, const BenchmarkSpec& spec);

struct VarianceReport {
  double median = 0.0;
  double fraction_within = 0.0;
  bool pass = false;
};

inline constexpr double kVarianceTargetFraction = 0.90;

// Share of scores within +-tol (relative) of their median; passes at 90%.
// Throws Error(kTooFewRuns) for fewer than two scores.
VarianceReport variance_diagnostic(std::span<const double> scores, double tol);

double median_of(std::span<const double> values);

}  // namespace ttbench

#endif  // TTBENCH_AGGREGATION_HPP_
