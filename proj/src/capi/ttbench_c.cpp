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

#include "ttbench/ttbench.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "ttbench/aggregation.hpp"
#include "ttbench/compliance.hpp"
#include "ttbench/convergence_sim.hpp"
#include "ttbench/error.hpp"
#include "ttbench/event_log.hpp"
#include "ttbench/registry.hpp"
#include "ttbench/report.hpp"
#include "ttbench/submission.hpp"
#include "ttbench/timing.hpp"

struct ttb_runlog {
  ttbench::RunLog log;
};

struct ttb_registry {
  ttbench::Registry registry;
};

struct ttb_submission {
  ttbench::SubmissionDir dir;
  std::string declared_benchmark;
  std::string declared_round;
  bool has_declared = false;
  // Backing storage for ttb_meta_info.
  std::string division;
  std::string category;
  std::vector<ttb_accelerator> accelerators;
};

struct ttb_aggregate {
  std::string benchmark;
  std::string round;
  std::vector<ttbench::RunOutcome> outcomes;
  std::optional<ttbench::Score> score;
  ttb_status status = TTB_OK;
  std::string message;
};

struct ttb_report {
  ttbench::ComplianceReport report;
};

struct ttb_results {
  std::vector<ttbench::ResultRow> rows;
  // Division/category text lives in static storage; round etc. in rows.
};

struct ttb_comparison {
  ttbench::Comparison comparison;
};

struct ttb_scale_weights {
  ttbench::ScaleWeights weights;
};

namespace {

using ttbench::Error;
using ttbench::ErrorCode;

thread_local std::string g_last_error;

ttb_status set_error(ttb_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs body, translating exceptions into status codes.
template <typename Body>
ttb_status guarded(Body&& body) {
  try {
    body();
    return TTB_OK;
  } catch (const Error& ex) {
    return set_error(static_cast<ttb_status>(ex.code()), ex.what());
  } catch (const std::bad_alloc&) {
    return set_error(TTB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& ex) {
    return set_error(TTB_ERR_INTERNAL, ex.what());
  } catch (...) {
    return set_error(TTB_ERR_INTERNAL, "unknown error");
  }
}

void require(bool condition, const char* what) {
  if (!condition) ttbench::fail(ErrorCode::kInvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

const char* static_text(std::string_view text) {
  // Enum names are string literals with static storage.
  return text.data();
}

ttb_timed_result to_c(const ttbench::TimedResult& r) {
  return ttb_timed_result{r.start_ts.millis, r.stop_ts.millis, r.model_init_excluded_ms,
                          r.reformat_excluded_ms, r.excluded_ms, r.ttt_ms, r.quality_epoch};
}

ttbench::SystemDesc from_c(const ttb_system_desc& sys) {
  ttbench::SystemDesc out;
  out.nodes = sys.nodes;
  out.host_processors = sys.host_processors;
  out.host_memory_gb = sys.host_memory_gb;
  require(sys.accelerator_count == 0 || sys.accelerators != nullptr, "accelerators is NULL");
  for (size_t i = 0; i < sys.accelerator_count; ++i) {
    require(sys.accelerators[i].type != nullptr, "accelerator type is NULL");
    out.accelerators.push_back({sys.accelerators[i].type, sys.accelerators[i].count});
  }
  return out;
}

ttbench::Division parse_division_arg(const char* text) {
  require(text != nullptr, "division is NULL");
  std::optional<ttbench::Division> d = ttbench::parse_division(text);
  if (!d) ttbench::fail(ErrorCode::kInvalidArgument, std::string("unknown division '") + text + "'");
  return *d;
}

const ttbench::BenchmarkSpec& spec_for(const ttb_registry* registry, const char* round,
                                       const char* benchmark) {
  require(registry != nullptr, "registry is NULL");
  require(round != nullptr && benchmark != nullptr, "round and benchmark are required");
  return registry->registry.lookup(ttbench::Round{round}, benchmark);
}

}  // namespace

extern "C" {

const char* ttb_version(void) { return "1.0.0"; }

const char* ttb_status_name(ttb_status status) {
  if (status == TTB_OK) return "Ok";
  if (status == TTB_ERR_INTERNAL) return "Internal";
  return static_text(ttbench::error_code_name(static_cast<ErrorCode>(status)));
}

const char* ttb_last_error(void) { return g_last_error.c_str(); }

void ttb_string_free(char* str) { std::free(str); }

// ---------------------------------------------------------------- logs

ttb_status ttb_runlog_parse(const char* text, size_t len, ttb_runlog** out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    require(text != nullptr || len == 0, "text is NULL");
    auto* handle = new ttb_runlog{ttbench::parse_log_text(std::string_view(text ? text : "", len))};
    *out = handle;
  });
}

ttb_status ttb_runlog_load(const char* path, ttb_runlog** out) {
  return guarded([&] {
    require(out != nullptr && path != nullptr, "path and out are required");
    *out = new ttb_runlog{ttbench::load_log_file(path)};
  });
}

void ttb_runlog_destroy(ttb_runlog* log) { delete log; }

size_t ttb_runlog_event_count(const ttb_runlog* log) { return log ? log->log.size() : 0; }

ttb_status ttb_runlog_serialize(const ttb_runlog* log, char** out) {
  return guarded([&] {
    require(log != nullptr && out != nullptr, "log and out are required");
    *out = dup_string(ttbench::serialize_log(log->log));
  });
}

ttb_status ttb_runlog_event_line(const ttb_runlog* log, size_t i, char** out) {
  return guarded([&] {
    require(log != nullptr && out != nullptr, "log and out are required");
    require(i < log->log.size(), "event index out of range");
    *out = dup_string(ttbench::serialize_event(log->log.events()[i]));
  });
}

ttb_status ttb_canonicalize_line(const char* line, char** out) {
  return guarded([&] {
    require(line != nullptr && out != nullptr, "line and out are required");
    *out = dup_string(ttbench::serialize_event(ttbench::parse_line(line)));
  });
}

ttb_status ttb_runlog_declared_benchmark(const ttb_runlog* log, char** name, char** round) {
  return guarded([&] {
    require(log != nullptr, "log is NULL");
    const ttbench::LogEvent* decl = log->log.find_first(ttbench::EventKey::kBenchmarkDecl);
    if (decl == nullptr) ttbench::fail(ErrorCode::kInvalidArgument, "log has no benchmark_decl");
    std::optional<std::string> n = ttbench::string_field(decl->payload, "name");
    std::optional<std::string> r = ttbench::string_field(decl->payload, "round");
    if (round != nullptr && !r) ttbench::fail(ErrorCode::kInvalidArgument, "benchmark_decl has no round");
    char* name_out = name ? dup_string(*n) : nullptr;
    char* round_out = nullptr;
    if (round != nullptr) {
      try {
        round_out = dup_string(*r);
      } catch (...) {
        std::free(name_out);
        throw;
      }
    }
    if (name) *name = name_out;
    if (round) *round = round_out;
  });
}

// ------------------------------------------------------------ registry

ttb_status ttb_registry_create(const char* override_path, ttb_registry** out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    *out = new ttb_registry{override_path ? ttbench::Registry::with_overrides(override_path)
                                          : ttbench::Registry::defaults()};
  });
}

void ttb_registry_destroy(ttb_registry* registry) { delete registry; }

ttb_status ttb_registry_lookup(const ttb_registry* registry, const char* round,
                               const char* benchmark, ttb_benchmark_info* out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    const ttbench::BenchmarkSpec& spec = spec_for(registry, round, benchmark);
    ttb_benchmark_info info{};
    info.task = static_cast<ttb_task>(spec.task);
    info.threshold = spec.threshold;
    info.has_secondary_threshold = spec.secondary_threshold.has_value() ? 1 : 0;
    info.secondary_threshold = spec.secondary_threshold.value_or(0.0);
    info.required_runs = spec.required_runs;
    info.variance_tol = spec.variance_tol;
    *out = info;
  });
}

ttb_status ttb_registry_whitelist(const ttb_registry* registry, const char* round,
                                  const char* benchmark, char** out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    const ttbench::BenchmarkSpec& spec = spec_for(registry, round, benchmark);
    std::string text;
    for (const std::string& name : spec.hp_whitelist) {
      if (!text.empty()) text += '\n';
      text += name;
    }
    *out = dup_string(text);
  });
}

ttb_status ttb_target_reached(const ttb_registry* registry, const char* round,
                              const char* benchmark, double primary, int has_secondary,
                              double secondary, int* out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    const ttbench::BenchmarkSpec& spec = spec_for(registry, round, benchmark);
    ttbench::QualityValue q{primary, std::nullopt};
    if (has_secondary) q.secondary = secondary;
    *out = ttbench::target_reached(spec, q) ? 1 : 0;
  });
}

// -------------------------------------------------------------- timing

ttb_status ttb_time_to_train(const ttb_registry* registry, const ttb_runlog* log,
                             const char* round, const char* benchmark, ttb_timed_result* out) {
  return guarded([&] {
    require(log != nullptr && out != nullptr, "log and out are required");
    *out = to_c(ttbench::compute_time_to_train(log->log, spec_for(registry, round, benchmark)));
  });
}

// --------------------------------------------------------- aggregation

ttb_status ttb_olympic_mean(const ttb_registry* registry, const char* round,
                            const char* benchmark, const int64_t* ttts_ms, size_t n,
                            ttb_score* out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    require(ttts_ms != nullptr || n == 0, "ttts_ms is NULL");
    ttbench::Score s = ttbench::olympic_mean(
        std::span<const std::int64_t>(ttts_ms, n), spec_for(registry, round, benchmark));
    *out = ttb_score{s.value_ms, s.dropped_min_index, s.dropped_max_index, s.run_ttts_ms.size()};
  });
}

ttb_status ttb_variance_diagnostic(const double* scores, size_t n, double tol,
                                   double* fraction_within, int* pass) {
  return guarded([&] {
    require(scores != nullptr || n == 0, "scores is NULL");
    ttbench::VarianceReport r =
        ttbench::variance_diagnostic(std::span<const double>(scores, n), tol);
    if (fraction_within) *fraction_within = r.fraction_within;
    if (pass) *pass = r.pass ? 1 : 0;
  });
}

// ---------------------------------------------------------- submission

ttb_status ttb_submission_load(const char* dir, int require_meta, ttb_submission** out) {
  return guarded([&] {
    require(dir != nullptr && out != nullptr, "dir and out are required");
    auto handle = std::make_unique<ttb_submission>();
    handle->dir = ttbench::load_submission_dir(dir, require_meta != 0);
    if (auto decl = ttbench::declared_benchmark(handle->dir)) {
      handle->declared_round = decl->first.id;
      handle->declared_benchmark = decl->second;
      handle->has_declared = true;
    }
    if (handle->dir.meta) {
      handle->division = std::string(ttbench::to_string(handle->dir.meta->division));
      handle->category = std::string(ttbench::to_string(handle->dir.meta->category));
      for (const ttbench::Accelerator& a : handle->dir.meta->system.accelerators) {
        handle->accelerators.push_back({a.type.c_str(), a.count});
      }
    }
    *out = handle.release();
  });
}

void ttb_submission_destroy(ttb_submission* submission) { delete submission; }

size_t ttb_submission_run_count(const ttb_submission* submission) {
  return submission ? submission->dir.runs.size() : 0;
}

int ttb_submission_has_meta(const ttb_submission* submission) {
  return submission && submission->dir.meta ? 1 : 0;
}

ttb_status ttb_submission_declared_benchmark(const ttb_submission* submission,
                                             const char** benchmark, const char** round) {
  return guarded([&] {
    require(submission != nullptr, "submission is NULL");
    if (!submission->has_declared) {
      ttbench::fail(ErrorCode::kInvalidArgument, "submission declares no benchmark");
    }
    if (benchmark) *benchmark = submission->declared_benchmark.c_str();
    if (round) *round = submission->declared_round.c_str();
  });
}

ttb_status ttb_submission_meta(const ttb_submission* submission, ttb_meta_info* out) {
  return guarded([&] {
    require(submission != nullptr && out != nullptr, "submission and out are required");
    if (!submission->dir.meta) ttbench::fail(ErrorCode::kInvalidArgument, "submission has no meta");
    const ttbench::SubmissionMeta& m = *submission->dir.meta;
    ttb_meta_info info{};
    info.submitter = m.submitter.c_str();
    info.benchmark = m.benchmark.c_str();
    info.round = m.round.id.c_str();
    info.division = submission->division.c_str();
    info.category = submission->category.c_str();
    info.chips = ttbench::chip_count(m.system);
    info.system.nodes = m.system.nodes;
    info.system.host_processors = m.system.host_processors;
    info.system.host_memory_gb = m.system.host_memory_gb;
    info.system.accelerators = submission->accelerators.data();
    info.system.accelerator_count = submission->accelerators.size();
    *out = info;
  });
}

// ----------------------------------------------------------- aggregate

ttb_status ttb_aggregate_submission(const ttb_registry* registry, const ttb_submission* submission,
                                    const char* round, const char* benchmark,
                                    ttb_aggregate** out) {
  return guarded([&] {
    require(submission != nullptr && out != nullptr, "submission and out are required");
    auto handle = std::make_unique<ttb_aggregate>();
    if (round == nullptr || benchmark == nullptr) {
      if (!submission->has_declared) {
        ttbench::fail(ErrorCode::kInvalidArgument,
                      "no benchmark given and none declared by the submission");
      }
    }
    handle->round = round ? round : submission->declared_round;
    handle->benchmark = benchmark ? benchmark : submission->declared_benchmark;
    const ttbench::BenchmarkSpec& spec =
        spec_for(registry, handle->round.c_str(), handle->benchmark.c_str());

    handle->outcomes = ttbench::score_runs(submission->dir, spec);
    std::vector<std::int64_t> ttts;
    for (const ttbench::RunOutcome& o : handle->outcomes) {
      if (!o.result) {
        if (handle->status == TTB_OK) {
          handle->status = static_cast<ttb_status>(o.error);
          handle->message = "run " + std::to_string(o.index) + ": " + o.message;
        }
        continue;
      }
      ttts.push_back(o.result->ttt_ms);
    }
    if (handle->status == TTB_OK) {
      try {
        handle->score = ttbench::olympic_mean(ttts, spec);
      } catch (const Error& ex) {
        handle->status = static_cast<ttb_status>(ex.code());
        handle->message = ex.what();
      }
    }
    *out = handle.release();
  });
}

void ttb_aggregate_destroy(ttb_aggregate* aggregate) { delete aggregate; }

size_t ttb_aggregate_run_count(const ttb_aggregate* aggregate) {
  return aggregate ? aggregate->outcomes.size() : 0;
}

ttb_status ttb_aggregate_run(const ttb_aggregate* aggregate, size_t i, ttb_run_outcome* out) {
  return guarded([&] {
    require(aggregate != nullptr && out != nullptr, "aggregate and out are required");
    require(i < aggregate->outcomes.size(), "run index out of range");
    const ttbench::RunOutcome& o = aggregate->outcomes[i];
    ttb_run_outcome r{};
    r.index = o.index;
    r.status = o.result ? TTB_OK : static_cast<ttb_status>(o.error);
    r.message = o.message.c_str();
    if (o.result) r.result = to_c(*o.result);
    *out = r;
  });
}

ttb_status ttb_aggregate_status(const ttb_aggregate* aggregate, const char** message) {
  if (aggregate == nullptr) return set_error(TTB_ERR_INVALID_ARGUMENT, "aggregate is NULL");
  if (message) *message = aggregate->message.c_str();
  return aggregate->status;
}

ttb_status ttb_aggregate_score(const ttb_aggregate* aggregate, ttb_score* out) {
  return guarded([&] {
    require(aggregate != nullptr && out != nullptr, "aggregate and out are required");
    if (!aggregate->score) {
      ttbench::fail(static_cast<ErrorCode>(aggregate->status), aggregate->message);
    }
    const ttbench::Score& s = *aggregate->score;
    *out = ttb_score{s.value_ms, s.dropped_min_index, s.dropped_max_index, s.run_ttts_ms.size()};
  });
}

ttb_status ttb_aggregate_benchmark(const ttb_aggregate* aggregate, const char** benchmark,
                                   const char** round) {
  return guarded([&] {
    require(aggregate != nullptr, "aggregate is NULL");
    if (benchmark) *benchmark = aggregate->benchmark.c_str();
    if (round) *round = aggregate->round.c_str();
  });
}

// ---------------------------------------------------------- compliance

ttb_status ttb_check_submission(const ttb_registry* registry, const ttb_submission* submission,
                                int max_epochs_per_eval, ttb_report** out) {
  return guarded([&] {
    require(registry != nullptr && submission != nullptr && out != nullptr,
            "registry, submission and out are required");
    if (!submission->dir.meta) {
      ttbench::fail(ErrorCode::kIo, "submission '" + submission->dir.path + "' has no meta file");
    }
    std::vector<ttbench::RunLog> logs;
    for (const ttbench::SubmissionRun& run : submission->dir.runs) logs.push_back(run.log);
    ttbench::CheckOptions options;
    if (max_epochs_per_eval > 0) options.max_epochs_per_eval = max_epochs_per_eval;
    *out = new ttb_report{
        ttbench::check_submission(*submission->dir.meta, logs, registry->registry, options)};
  });
}

ttb_status ttb_check_hyperparameters(const ttb_registry* registry, const ttb_runlog* log,
                                     const char* round, const char* benchmark,
                                     const char* division, ttb_report** out) {
  return guarded([&] {
    require(log != nullptr && out != nullptr, "log and out are required");
    const ttbench::BenchmarkSpec& spec = spec_for(registry, round, benchmark);
    *out = new ttb_report{ttbench::check_hyperparameters(log->log, spec, parse_division_arg(division))};
  });
}

ttb_status ttb_check_borrowing(const ttb_runlog* original, const ttb_runlog* resubmission,
                               ttb_report** out) {
  return guarded([&] {
    require(original != nullptr && resubmission != nullptr && out != nullptr,
            "original, resubmission and out are required");
    *out = new ttb_report{ttbench::check_borrowing(original->log, resubmission->log)};
  });
}

void ttb_report_destroy(ttb_report* report) { delete report; }

int ttb_report_compliant(const ttb_report* report) {
  return report && report->report.compliant() ? 1 : 0;
}

size_t ttb_report_finding_count(const ttb_report* report) {
  return report ? report->report.findings().size() : 0;
}

ttb_status ttb_report_finding(const ttb_report* report, size_t i, ttb_finding* out) {
  return guarded([&] {
    require(report != nullptr && out != nullptr, "report and out are required");
    require(i < report->report.findings().size(), "finding index out of range");
    const ttbench::Finding& f = report->report.findings()[i];
    *out = ttb_finding{f.severity == ttbench::Severity::kError ? TTB_SEVERITY_ERROR
                                                               : TTB_SEVERITY_WARNING,
                       f.rule_id.c_str(), f.message.c_str(), f.run, f.position};
  });
}

// ------------------------------------------------------------- results

ttb_status ttb_results_create(ttb_results** out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    *out = new ttb_results{};
  });
}

ttb_status ttb_results_parse_csv(const char* text, size_t len, ttb_results** out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    require(text != nullptr || len == 0, "text is NULL");
    *out = new ttb_results{ttbench::parse_results_csv(std::string_view(text ? text : "", len))};
  });
}

ttb_status ttb_results_load_csv(const char* path, ttb_results** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "path and out are required");
    *out = new ttb_results{ttbench::load_results_csv(path)};
  });
}

void ttb_results_destroy(ttb_results* results) { delete results; }

ttb_status ttb_results_append(ttb_results* results, const ttb_result_row* row) {
  return guarded([&] {
    require(results != nullptr && row != nullptr, "results and row are required");
    require(row->round && row->benchmark && row->submitter, "row strings are required");
    ttbench::ResultRow r;
    r.round = ttbench::Round{row->round};
    r.benchmark = row->benchmark;
    r.submitter = row->submitter;
    r.division = parse_division_arg(row->division);
    require(row->category != nullptr, "category is NULL");
    std::optional<ttbench::Category> c = ttbench::parse_category(row->category);
    require(c.has_value(), "unknown category");
    r.category = *c;
    require(row->chips >= 1, "chips must be >= 1");
    require(row->score_ms > 0, "score_ms must be positive");
    r.chips = row->chips;
    r.score_ms = row->score_ms;
    results->rows.push_back(std::move(r));
  });
}

ttb_status ttb_results_append_aggregate(ttb_results* results, const ttb_submission* submission,
                                        const ttb_aggregate* aggregate) {
  return guarded([&] {
    require(results != nullptr && submission != nullptr && aggregate != nullptr,
            "results, submission and aggregate are required");
    if (!submission->dir.meta) ttbench::fail(ErrorCode::kInvalidArgument, "submission has no meta");
    if (!aggregate->score) ttbench::fail(static_cast<ErrorCode>(aggregate->status), aggregate->message);
    const ttbench::SubmissionMeta& m = *submission->dir.meta;
    ttbench::ResultRow r;
    r.round = ttbench::Round{aggregate->round};
    r.benchmark = aggregate->benchmark;
    r.submitter = m.submitter;
    r.division = m.division;
    r.category = m.category;
    r.chips = ttbench::chip_count(m.system);
    r.score_ms = aggregate->score->value_ms;
    results->rows.push_back(std::move(r));
  });
}

size_t ttb_results_row_count(const ttb_results* results) {
  return results ? results->rows.size() : 0;
}

ttb_status ttb_results_row(const ttb_results* results, size_t i, ttb_result_row* out) {
  return guarded([&] {
    require(results != nullptr && out != nullptr, "results and out are required");
    require(i < results->rows.size(), "row index out of range");
    const ttbench::ResultRow& r = results->rows[i];
    *out = ttb_result_row{r.round.id.c_str(), r.benchmark.c_str(), r.submitter.c_str(),
                          static_text(ttbench::to_string(r.division)),
                          static_text(ttbench::to_string(r.category)), r.chips, r.score_ms};
  });
}

ttb_status ttb_results_to_csv(const ttb_results* results, char** out) {
  return guarded([&] {
    require(results != nullptr && out != nullptr, "results and out are required");
    *out = dup_string(ttbench::results_table(results->rows));
  });
}

// --------------------------------------------------------- comparisons

ttb_status ttb_speedup_report(const ttb_results* a, const ttb_results* b, int64_t chips,
                              ttb_comparison** out) {
  return guarded([&] {
    require(a != nullptr && b != nullptr && out != nullptr, "a, b and out are required");
    *out = new ttb_comparison{ttbench::speedup_report(a->rows, b->rows, chips)};
  });
}

ttb_status ttb_chip_count_report(const ttb_results* a, const ttb_results* b, ttb_comparison** out) {
  return guarded([&] {
    require(a != nullptr && b != nullptr && out != nullptr, "a, b and out are required");
    *out = new ttb_comparison{ttbench::chip_count_report(a->rows, b->rows)};
  });
}

void ttb_comparison_destroy(ttb_comparison* comparison) { delete comparison; }

size_t ttb_comparison_row_count(const ttb_comparison* comparison) {
  return comparison ? comparison->comparison.rows.size() : 0;
}

ttb_status ttb_comparison_row(const ttb_comparison* comparison, size_t i, ttb_comparison_entry* out) {
  return guarded([&] {
    require(comparison != nullptr && out != nullptr, "comparison and out are required");
    require(i < comparison->comparison.rows.size(), "row index out of range");
    const ttbench::ComparisonRow& r = comparison->comparison.rows[i];
    *out = ttb_comparison_entry{r.benchmark.c_str(), r.value_a, r.value_b, r.ratio};
  });
}

size_t ttb_comparison_note_count(const ttb_comparison* comparison) {
  return comparison ? comparison->comparison.notes.size() : 0;
}

const char* ttb_comparison_note(const ttb_comparison* comparison, size_t i) {
  if (comparison == nullptr || i >= comparison->comparison.notes.size()) return nullptr;
  return comparison->comparison.notes[i].c_str();
}

ttb_status ttb_comparison_svg(const ttb_comparison* comparison, const char* title,
                              const char* axis_label, char** out) {
  return guarded([&] {
    require(comparison != nullptr && out != nullptr, "comparison and out are required");
    *out = dup_string(ttbench::comparison_svg(comparison->comparison, title ? title : "",
                                              axis_label ? axis_label : ""));
  });
}

// --------------------------------------------------------- cloud scale

ttb_status ttb_scale_weights_load(const char* path, ttb_scale_weights** out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    *out = new ttb_scale_weights{path ? ttbench::load_scale_weights(path) : ttbench::ScaleWeights{}};
  });
}

void ttb_scale_weights_destroy(ttb_scale_weights* weights) { delete weights; }

ttb_status ttb_cloud_scale(const ttb_system_desc* system, const ttb_scale_weights* weights,
                           double* out) {
  return guarded([&] {
    require(system != nullptr && weights != nullptr && out != nullptr,
            "system, weights and out are required");
    ttbench::SystemDesc sys = from_c(*system);
    if (std::string why = ttbench::validate_system(sys); !why.empty()) {
      ttbench::fail(ErrorCode::kInvalidArgument, why);
    }
    *out = ttbench::cloud_scale(sys, weights->weights);
  });
}

// ---------------------------------------------------------- simulation

ttb_status ttb_simulate_from_config(const ttb_registry* registry, const char* config_path,
                                    const char* outdir, int* runs_written) {
  return guarded([&] {
    require(registry != nullptr && config_path != nullptr && outdir != nullptr,
            "registry, config_path and outdir are required");
    ttbench::SimConfig cfg = ttbench::load_sim_config(config_path);
    const ttbench::BenchmarkSpec& spec = registry->registry.lookup(cfg.round, cfg.benchmark);
    int n = ttbench::write_simulated_submission(cfg, spec, outdir);
    if (runs_written) *runs_written = n;
  });
}

ttb_status ttb_simulate_run_text(const ttb_registry* registry, const char* config_text,
                                 int run_index, char** out_log) {
  return guarded([&] {
    require(registry != nullptr && config_text != nullptr && out_log != nullptr,
            "registry, config_text and out_log are required");
    require(run_index >= 0, "run_index must be >= 0");
    ttbench::SimConfig cfg = ttbench::parse_sim_config(ttbench::parse_config(config_text));
    const ttbench::BenchmarkSpec& spec = registry->registry.lookup(cfg.round, cfg.benchmark);
    *out_log = dup_string(ttbench::serialize_log(ttbench::simulate_run(cfg, spec, run_index)));
  });
}

double ttb_epochs_to_target(int64_t batch_size) { return ttbench::epochs_to_target(batch_size); }

ttb_status ttb_momentum_step(ttb_momentum_variant variant, double* weights, double* momentum,
                             const double* grad, size_t n, double alpha, double eta) {
  return guarded([&] {
    require(n == 0 || (weights && momentum && grad), "weights, momentum and grad are required");
    require(variant == TTB_MOMENTUM_SCALED_GRADIENT || variant == TTB_MOMENTUM_SCALED_UPDATE,
            "unknown momentum variant");
    ttbench::OptimizerState state;
    state.weights.assign(weights, weights + n);
    state.momentum.assign(momentum, momentum + n);
    state.alpha = alpha;
    std::span<const double> g(grad, n);
    ttbench::OptimizerState next = variant == TTB_MOMENTUM_SCALED_GRADIENT
                                       ? ttbench::momentum_step_v1(state, g, eta)
                                       : ttbench::momentum_step_v2(state, g, eta);
    std::copy(next.weights.begin(), next.weights.end(), weights);
    std::copy(next.momentum.begin(), next.momentum.end(), momentum);
  });
}

}  // extern "C"
