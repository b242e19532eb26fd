/*
 * Copyright 2026 The ttbench Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * ttbench C API.
 *
 * Conventions:
 *  - Every fallible call returns a ttb_status; TTB_OK is 0. On failure the
 *    thread's last error message is set (ttb_last_error) and out-params
 *    are left untouched.
 *  - Objects are opaque handles created by *_create / *_load / producing
 *    calls and released with the matching *_destroy. Destroy accepts NULL.
 *  - Strings returned through char** are heap-allocated and owned by the
 *    caller; release them with ttb_string_free. const char* fields inside
 *    structs filled by the library stay valid until the owning handle is
 *    destroyed.
 *  - Handles are immutable after construction unless a function says
 *    otherwise and may be shared across threads.
 */

#ifndef TTBENCH_TTBENCH_H_
#define TTBENCH_TTBENCH_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TTBENCH_BUILDING)
#    define TTB_API __declspec(dllexport)
#  else
#    define TTB_API __declspec(dllimport)
#  endif
#else
#  define TTB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ttb_status {
  TTB_OK = 0,
  TTB_ERR_INVALID_ARGUMENT = 1,
  TTB_ERR_IO = 2,
  TTB_ERR_MALFORMED_LINE = 3,
  TTB_ERR_STRUCTURE = 4,
  TTB_ERR_MALFORMED_LOG = 5,
  TTB_ERR_UNKNOWN_BENCHMARK = 6,
  TTB_ERR_TARGET_NOT_REACHED = 7,
  TTB_ERR_MISSING_DATA_TOUCH = 8,
  TTB_ERR_WRONG_RUN_COUNT = 9,
  TTB_ERR_NON_POSITIVE_DURATION = 10,
  TTB_ERR_TOO_FEW_RUNS = 11,
  TTB_ERR_BENCHMARK_MISMATCH = 12,
  TTB_ERR_UNKNOWN_ACCELERATOR_TYPE = 13,
  TTB_ERR_INVALID_CONFIG = 14,
  TTB_ERR_SHAPE_MISMATCH = 15,
  TTB_ERR_INVALID_OBJECTIVE = 16,
  TTB_ERR_MALFORMED_CSV = 17,
  TTB_ERR_INTERNAL = 99
} ttb_status;

/* Library version string, e.g. "1.0.0". */
TTB_API const char* ttb_version(void);

/* Stable identifier of a status, e.g. "TargetNotReached". */
TTB_API const char* ttb_status_name(ttb_status status);

/* Message of the last failed call on this thread; "" if none. */
TTB_API const char* ttb_last_error(void);

TTB_API void ttb_string_free(char* str);

/* ---------------------------------------------------------------- logs */

typedef struct ttb_runlog ttb_runlog;

/* Parses a whole log from memory or a file. Non-prefixed lines are skipped. */
TTB_API ttb_status ttb_runlog_parse(const char* text, size_t len, ttb_runlog** out);
TTB_API ttb_status ttb_runlog_load(const char* path, ttb_runlog** out);
TTB_API void ttb_runlog_destroy(ttb_runlog* log);

TTB_API size_t ttb_runlog_event_count(const ttb_runlog* log);

/* Canonical text of all events, one line each. */
TTB_API ttb_status ttb_runlog_serialize(const ttb_runlog* log, char** out);

/* Canonical text of event i, without a line terminator. */
TTB_API ttb_status ttb_runlog_event_line(const ttb_runlog* log, size_t i, char** out);

/* Parses one line and writes back its canonical form. */
TTB_API ttb_status ttb_canonicalize_line(const char* line, char** out);

/* Benchmark name and round from the log's benchmark_decl. Either out-param
 * may be NULL. */
TTB_API ttb_status ttb_runlog_declared_benchmark(const ttb_runlog* log, char** name,
                                                 char** round);

/* ------------------------------------------------------------ registry */

typedef struct ttb_registry ttb_registry;

typedef enum ttb_task {
  TTB_TASK_VISION = 0,
  TTB_TASK_TRANSLATION = 1,
  TTB_TASK_RECOMMENDATION = 2,
  TTB_TASK_RL = 3
} ttb_task;

typedef struct ttb_benchmark_info {
  ttb_task task;
  double threshold;
  int has_secondary_threshold;
  double secondary_threshold;
  int required_runs;
  double variance_tol;
} ttb_benchmark_info;

/* override_path may be NULL for the embedded table only. */
TTB_API ttb_status ttb_registry_create(const char* override_path, ttb_registry** out);
TTB_API void ttb_registry_destroy(ttb_registry* registry);

TTB_API ttb_status ttb_registry_lookup(const ttb_registry* registry, const char* round,
                                       const char* benchmark, ttb_benchmark_info* out);

/* Whitelisted hyperparameter names, sorted, separated by '\n'. */
TTB_API ttb_status ttb_registry_whitelist(const ttb_registry* registry, const char* round,
                                          const char* benchmark, char** out);

/* *out = 1 when the value(s) meet the target. secondary is ignored for
 * single-metric benchmarks; pass has_secondary = 0 when absent. */
TTB_API ttb_status ttb_target_reached(const ttb_registry* registry, const char* round,
                                      const char* benchmark, double primary, int has_secondary,
                                      double secondary, int* out);

/* -------------------------------------------------------------- timing */

typedef struct ttb_timed_result {
  int64_t start_ms;
  int64_t stop_ms;
  int64_t model_init_excluded_ms;
  int64_t reformat_excluded_ms;
  int64_t excluded_ms;
  int64_t ttt_ms;
  int64_t quality_epoch;
} ttb_timed_result;

TTB_API ttb_status ttb_time_to_train(const ttb_registry* registry, const ttb_runlog* log,
                                     const char* round, const char* benchmark,
                                     ttb_timed_result* out);

/* --------------------------------------------------------- aggregation */

typedef struct ttb_score {
  double value_ms;
  size_t dropped_min_index;
  size_t dropped_max_index;
  size_t run_count;
} ttb_score;

TTB_API ttb_status ttb_olympic_mean(const ttb_registry* registry, const char* round,
                                    const char* benchmark, const int64_t* ttts_ms, size_t n,
                                    ttb_score* out);

TTB_API ttb_status ttb_variance_diagnostic(const double* scores, size_t n, double tol,
                                           double* fraction_within, int* pass);

/* ---------------------------------------------------------- submission */

typedef struct ttb_submission ttb_submission;

/* Loads <dir>/meta (required when require_meta != 0) and <dir>/run_<k>.log. */
TTB_API ttb_status ttb_submission_load(const char* dir, int require_meta, ttb_submission** out);
TTB_API void ttb_submission_destroy(ttb_submission* submission);

TTB_API size_t ttb_submission_run_count(const ttb_submission* submission);
TTB_API int ttb_submission_has_meta(const ttb_submission* submission);

/* Benchmark/round from meta, else from the first log. Strings owned by the
 * submission handle. */
TTB_API ttb_status ttb_submission_declared_benchmark(const ttb_submission* submission,
                                                     const char** benchmark,
                                                     const char** round);

typedef struct ttb_accelerator {
  const char* type;
  int64_t count;
} ttb_accelerator;

typedef struct ttb_system_desc {
  int64_t nodes;
  int64_t host_processors;
  double host_memory_gb;
  const ttb_accelerator* accelerators;
  size_t accelerator_count;
} ttb_system_desc;

typedef struct ttb_meta_info {
  const char* submitter;
  const char* benchmark;
  const char* round;
  const char* division;
  const char* category;
  int64_t chips;
  ttb_system_desc system;
} ttb_meta_info;

/* Fails with TTB_ERR_INVALID_ARGUMENT when the submission has no meta. */
TTB_API ttb_status ttb_submission_meta(const ttb_submission* submission, ttb_meta_info* out);

/* --------------------------------------------------------- aggregate */

typedef struct ttb_aggregate ttb_aggregate;

typedef struct ttb_run_outcome {
  int index;          /* k of run_<k>.log */
  ttb_status status; /* TTB_OK when the run was scored */
  const char* message;
  ttb_timed_result result;
} ttb_run_outcome;

/* Scores every run with the given (or declared, when NULL) benchmark and
 * applies olympic scoring. Returns TTB_OK even when runs fail; the score
 * status then carries the failure (see ttb_aggregate_status). */
TTB_API ttb_status ttb_aggregate_submission(const ttb_registry* registry,
                                            const ttb_submission* submission, const char* round,
                                            const char* benchmark, ttb_aggregate** out);
TTB_API void ttb_aggregate_destroy(ttb_aggregate* aggregate);

TTB_API size_t ttb_aggregate_run_count(const ttb_aggregate* aggregate);
TTB_API ttb_status ttb_aggregate_run(const ttb_aggregate* aggregate, size_t i, ttb_run_outcome* out);

/* TTB_OK when the olympic score exists; otherwise the first failing run's
 * status or TTB_ERR_WRONG_RUN_COUNT. message may be NULL. */
TTB_API ttb_status ttb_aggregate_status(const ttb_aggregate* aggregate, const char** message);
TTB_API ttb_status ttb_aggregate_score(const ttb_aggregate* aggregate, ttb_score* out);
TTB_API ttb_status ttb_aggregate_benchmark(const ttb_aggregate* aggregate, const char** benchmark,
                                           const char** round);

/* ---------------------------------------------------------- compliance */

typedef struct ttb_report ttb_report;

typedef enum ttb_severity { TTB_SEVERITY_ERROR = 0, TTB_SEVERITY_WARNING = 1 } ttb_severity;

typedef struct ttb_finding {
  ttb_severity severity;
  const char* rule_id;
  const char* message;
  int run;          /* -1 for submission-level findings */
  int64_t position; /* event index, -1 when not tied to an event */
} ttb_finding;

/* max_epochs_per_eval <= 0 selects the default of 1. Fails with
 * TTB_ERR_IO when the submission has no meta. */
TTB_API ttb_status ttb_check_submission(const ttb_registry* registry,
                                        const ttb_submission* submission,
                                        int max_epochs_per_eval, ttb_report** out);

TTB_API ttb_status ttb_check_hyperparameters(const ttb_registry* registry, const ttb_runlog* log,
                                             const char* round, const char* benchmark,
                                             const char* division, ttb_report** out);

TTB_API ttb_status ttb_check_borrowing(const ttb_runlog* original, const ttb_runlog* resubmission,
                                       ttb_report** out);

TTB_API void ttb_report_destroy(ttb_report* report);
TTB_API int ttb_report_compliant(const ttb_report* report);
TTB_API size_t ttb_report_finding_count(const ttb_report* report);
TTB_API ttb_status ttb_report_finding(const ttb_report* report, size_t i, ttb_finding* out);

/* ------------------------------------------------------------- results */

typedef struct ttb_results ttb_results;

typedef struct ttb_result_row {
  const char* round;
  const char* benchmark;
  const char* submitter;
  const char* division;
  const char* category;
  int64_t chips;
  double score_ms;
} ttb_result_row;

TTB_API ttb_status ttb_results_create(ttb_results** out);
TTB_API ttb_status ttb_results_parse_csv(const char* text, size_t len, ttb_results** out);
TTB_API ttb_status ttb_results_load_csv(const char* path, ttb_results** out);
TTB_API void ttb_results_destroy(ttb_results* results);

/* Mutates the handle; not safe concurrently with other calls on it. */
TTB_API ttb_status ttb_results_append(ttb_results* results, const ttb_result_row* row);

/* Appends the row for a scored aggregate whose submission has meta. */
TTB_API ttb_status ttb_results_append_aggregate(ttb_results* results,
                                                const ttb_submission* submission,
                                                const ttb_aggregate* aggregate);

TTB_API size_t ttb_results_row_count(const ttb_results* results);
TTB_API ttb_status ttb_results_row(const ttb_results* results, size_t i, ttb_result_row* out);
TTB_API ttb_status ttb_results_to_csv(const ttb_results* results, char** out);

/* --------------------------------------------------------- comparisons */

typedef struct ttb_comparison ttb_comparison;

typedef struct ttb_comparison_entry {
  const char* benchmark;
  double value_a;
  double value_b;
  double ratio;
} ttb_comparison_entry;

TTB_API ttb_status ttb_speedup_report(const ttb_results* a, const ttb_results* b, int64_t chips,
                                      ttb_comparison** out);
TTB_API ttb_status ttb_chip_count_report(const ttb_results* a, const ttb_results* b,
                                         ttb_comparison** out);
TTB_API void ttb_comparison_destroy(ttb_comparison* comparison);

TTB_API size_t ttb_comparison_row_count(const ttb_comparison* comparison);
TTB_API ttb_status ttb_comparison_row(const ttb_comparison* comparison, size_t i,
                                      ttb_comparison_entry* out);
TTB_API size_t ttb_comparison_note_count(const ttb_comparison* comparison);
TTB_API const char* ttb_comparison_note(const ttb_comparison* comparison, size_t i);
TTB_API ttb_status ttb_comparison_svg(const ttb_comparison* comparison, const char* title,
                                      const char* axis_label, char** out);

/* --------------------------------------------------------- cloud scale */

typedef struct ttb_scale_weights ttb_scale_weights;

/* path NULL selects the defaults (proc 1.0, mem_gb 0.01, no accelerators). */
TTB_API ttb_status ttb_scale_weights_load(const char* path, ttb_scale_weights** out);
TTB_API void ttb_scale_weights_destroy(ttb_scale_weights* weights);

TTB_API ttb_status ttb_cloud_scale(const ttb_system_desc* system, const ttb_scale_weights* weights,
                                   double* out);

/* ---------------------------------------------------------- simulation */

/* Reads an INI sim config and writes run_<k>.log (+ meta) into outdir. */
TTB_API ttb_status ttb_simulate_from_config(const ttb_registry* registry, const char* config_path,
                                            const char* outdir, int* runs_written);

/* Renders run `run_index` of an INI sim config given as text. */
TTB_API ttb_status ttb_simulate_run_text(const ttb_registry* registry, const char* config_text,
                                         int run_index, char** out_log);

TTB_API double ttb_epochs_to_target(int64_t batch_size);

typedef enum ttb_momentum_variant {
  TTB_MOMENTUM_SCALED_GRADIENT = 1, /* m = a*m + lr*g; w -= m    */
  TTB_MOMENTUM_SCALED_UPDATE = 2    /* m = a*m + g;    w -= lr*m */
} ttb_momentum_variant;

/* One in-place update of weights and momentum (both length n). */
TTB_API ttb_status ttb_momentum_step(ttb_momentum_variant variant, double* weights,
                                     double* momentum, const double* grad, size_t n, double alpha,
                                     double eta);

#ifdef __cplusplus
}
#endif

#endif /* TTBENCH_TTBENCH_H_ */
