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

// Submission rule checks. Rule violations are reported as findings, never
// thrown; only unusable inputs raise errors.
//
// Only declarable facts are checked (benchmark name, hyperparameter names,
// system and software descriptors). Whether an implementation is
// mathematically equivalent to the reference cannot be decided from logs.

#ifndef TTBENCH_COMPLIANCE_HPP_
#define TTBENCH_COMPLIANCE_HPP_

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ttbench/config.hpp"
#include "ttbench/event_log.hpp"
#include "ttbench/registry.hpp"

namespace ttbench {

enum class Division { kClosed, kOpen };
enum class Category { kAvailable, kPreview, kResearch };

std::string_view to_string(Division division);
std::string_view to_string(Category category);
std::optional<Division> parse_division(std::string_view text);
std::optional<Category> parse_category(std::string_view text);

using Date = std::chrono::year_month_day;

// Strict YYYY-MM-DD. Throws Error(kInvalidConfig).
Date parse_date(std::string_view text);
std::string format_date(Date date);

struct Accelerator {
  std::string type;
  std::int64_t count = 0;

  friend bool operator==(const Accelerator&, const Accelerator&) = default;
};

struct SoftwareItem {
  std::string name;
  std::string version;

  friend bool operator==(const SoftwareItem&, const SoftwareItem&) = default;
};

struct SystemDesc {
  std::int64_t nodes = 1;
  std::int64_t host_processors = 1;
  double host_memory_gb = 1.0;
  std::vector<Accelerator> accelerators;
  std::vector<SoftwareItem> software;

  std::int64_t accelerator_count() const;

  friend bool operator==(const SystemDesc&, const SystemDesc&) = default;
};

// Empty when valid, otherwise the first violated constraint.
std::string validate_system(const SystemDesc& system);

// Flat system_decl payload: nodes, host_processors, host_memory_gb,
// accelerator.<type> = count, software.<name> = version.
Payload system_payload(const SystemDesc& system);

struct SubmissionMeta {
  std::string submitter;
  std::string benchmark;
  Round round = kRoundV05;
  Division division = Division::kClosed;
  Category category = Category::kAvailable;
  SystemDesc system;
  std::optional<Date> submission_date;
  std::optional<Date> preview_available_by;
};

// [submission] and [system] sections of a meta descriptor. Throws
// Error(kInvalidConfig).
SubmissionMeta parse_submission_meta(const ConfigFile& file);
SubmissionMeta load_submission_meta(const std::string& path);
std::string format_submission_meta(const SubmissionMeta& meta);

enum class Severity { kError, kWarning };

std::string_view to_string(Severity severity);

struct Finding {
  Severity severity = Severity::kError;
  std::string rule_id;
  std::string message;
  // Ordering keys: run index (-1 for submission-level findings) and event
  // index inside that run's log (-1 when not tied to an event).
  int run = -1;
  std::int64_t position = -1;

  friend bool operator==(const Finding&, const Finding&) = default;
};

class ComplianceReport {
 public:
  const std::vector<Finding>& findings() const noexcept { return findings_; }
  bool compliant() const;
  std::size_t error_count() const;
  std::size_t warning_count() const;

  void add(Finding finding);
  void merge(const ComplianceReport& other);
  // Orders findings by (run, position, rule_id), keeping insertion order
  // among equal keys.
  void sort();

 private:
  std::vector<Finding> findings_;
};

ComplianceReport check_hyperparameters(const RunLog& log, const BenchmarkSpec& spec,
                                       Division division);

// Throws Error(kBenchmarkMismatch) when the two logs do not declare the
// same benchmark.
ComplianceReport check_borrowing(const RunLog& original, const RunLog& resubmission);

ComplianceReport check_category(const SubmissionMeta& meta, Date submission_date);

ComplianceReport check_run_count(std::span<const RunLog> logs, const BenchmarkSpec& spec);

// Flags any stretch of more than max_epochs_per_eval completed epochs
// without an eval_result.
ComplianceReport check_eval_cadence(const RunLog& log, int max_epochs_per_eval = 1);

struct CheckOptions {
  int max_epochs_per_eval = 1;
};

// Every rule above plus declaration consistency between the meta file and
// the logs.
ComplianceReport check_submission(const SubmissionMeta& meta, std::span<const RunLog> logs,
                                  const Registry& registry, const CheckOptions& options = {});

}  // namespace ttbench

#endif  // TTBENCH_COMPLIANCE_HPP_
