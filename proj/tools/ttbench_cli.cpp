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

// ttbench command-line front end. Links the C API only.
//
// Exit status: 0 success or compliant, 1 rule violation or target not
// reached, 2 usage or parse error.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ttbench/ttbench.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

enum class Format { kText, kCsv };

struct Options {
  Format format = Format::kText;
  std::string registry_path;
};

template <typename T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};

using Registry = std::unique_ptr<ttb_registry, Deleter<ttb_registry, ttb_registry_destroy>>;
using RunLog = std::unique_ptr<ttb_runlog, Deleter<ttb_runlog, ttb_runlog_destroy>>;
using Submission =
    std::unique_ptr<ttb_submission, Deleter<ttb_submission, ttb_submission_destroy>>;
using Aggregate = std::unique_ptr<ttb_aggregate, Deleter<ttb_aggregate, ttb_aggregate_destroy>>;
using Report = std::unique_ptr<ttb_report, Deleter<ttb_report, ttb_report_destroy>>;
using Results = std::unique_ptr<ttb_results, Deleter<ttb_results, ttb_results_destroy>>;
using ComparisonHandle =
    std::unique_ptr<ttb_comparison, Deleter<ttb_comparison, ttb_comparison_destroy>>;
using Weights =
    std::unique_ptr<ttb_scale_weights, Deleter<ttb_scale_weights, ttb_scale_weights_destroy>>;

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { ttb_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

// Thrown to unwind to main with a specific exit status.
struct Exit {
  int code;
};

bool is_violation(ttb_status s) {
  switch (s) {
    case TTB_ERR_TARGET_NOT_REACHED:
    case TTB_ERR_MISSING_DATA_TOUCH:
    case TTB_ERR_MALFORMED_LOG:
    case TTB_ERR_WRONG_RUN_COUNT:
    case TTB_ERR_NON_POSITIVE_DURATION:
    case TTB_ERR_TOO_FEW_RUNS:
    case TTB_ERR_BENCHMARK_MISMATCH:
      return true;
    default:
      return false;
  }
}

int exit_code_for(ttb_status s) { return is_violation(s) ? kExitViolation : kExitUsage; }

std::string describe(ttb_status s) {
  if (s == TTB_ERR_TARGET_NOT_REACHED) return "target not reached";
  return ttb_status_name(s);
}

// Reports a failed call on stderr and unwinds.
void check(ttb_status s, const std::string& context) {
  if (s == TTB_OK) return;
  const std::string message = ttb_last_error();
  std::cerr << "ttbench: ";
  if (!message.starts_with(context)) std::cerr << context << ": ";
  std::cerr << message << " (" << ttb_status_name(s) << ")\n";
  throw Exit{exit_code_for(s)};
}

// Shortest round-trip text, in plain notation for ordinary magnitudes.
std::string number(double v) {
  char buf[400];
  const double mag = std::fabs(v);
  const bool plain = mag == 0.0 || (mag >= 1e-4 && mag < 1e15);
  auto [end, ec] = plain ? std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed)
                         : std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

std::string minutes(double ms) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f min", ms / 60000.0);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Registry open_registry(const Options& opt) {
  ttb_registry* r = nullptr;
  check(ttb_registry_create(opt.registry_path.empty() ? nullptr : opt.registry_path.c_str(), &r),
        "registry");
  return Registry(r);
}

// ------------------------------------------------------------------ score

struct ScoreArgs {
  std::string log;
  std::string round;
  std::string benchmark;
};

int cmd_score(const Options& opt, const ScoreArgs& args) {
  Registry registry = open_registry(opt);
  ttb_runlog* raw = nullptr;
  check(ttb_runlog_load(args.log.c_str(), &raw), args.log);
  RunLog log(raw);

  std::string round = args.round;
  std::string benchmark = args.benchmark;
  if (round.empty() || benchmark.empty()) {
    OwnedString name;
    OwnedString decl_round;
    check(ttb_runlog_declared_benchmark(log.get(), &name.ptr, &decl_round.ptr), args.log);
    if (round.empty()) round = decl_round.str();
    if (benchmark.empty()) benchmark = name.str();
  }

  ttb_timed_result r{};
  check(ttb_time_to_train(registry.get(), log.get(), round.c_str(), benchmark.c_str(), &r),
        args.log);

  if (opt.format == Format::kCsv) {
    std::cout << "benchmark,round,start_ms,stop_ms,model_init_excluded_ms,reformat_excluded_ms,"
                 "excluded_ms,ttt_ms,quality_epoch\n"
              << csv_field(benchmark) << ',' << csv_field(round) << ',' << r.start_ms << ','
              << r.stop_ms << ',' << r.model_init_excluded_ms << ',' << r.reformat_excluded_ms
              << ',' << r.excluded_ms << ',' << r.ttt_ms << ',' << r.quality_epoch << "\n";
  } else {
    std::cout << "benchmark=" << benchmark << " round=" << round << "\n"
              << "start_ms=" << r.start_ms << "\n"
              << "stop_ms=" << r.stop_ms << "\n"
              << "quality_epoch=" << r.quality_epoch << "\n"
              << "model_init_excluded_ms=" << r.model_init_excluded_ms << "\n"
              << "reformat_excluded_ms=" << r.reformat_excluded_ms << "\n"
              << "excluded_ms=" << r.excluded_ms << " ("
              << minutes(static_cast<double>(r.excluded_ms)) << ")\n"
              << "ttt_ms=" << r.ttt_ms << " (" << minutes(static_cast<double>(r.ttt_ms))
              << ")\n";
  }
  return kExitOk;
}

// -------------------------------------------------------------- aggregate

struct AggregateArgs {
  std::vector<std::string> dirs;
  std::string round;
  std::string benchmark;
  std::string weights;
  std::string results;
};

int cmd_aggregate(const Options& opt, const AggregateArgs& args) {
  Registry registry = open_registry(opt);
  Weights weights;
  if (!args.weights.empty()) {
    ttb_scale_weights* w = nullptr;
    check(ttb_scale_weights_load(args.weights.c_str(), &w), args.weights);
    weights.reset(w);
  }
  ttb_results* raw_results = nullptr;
  check(ttb_results_create(&raw_results), "results");
  Results results(raw_results);

  if (opt.format == Format::kCsv) {
    std::cout << "submission,benchmark,round,runs,dropped_min_run,dropped_max_run,score_ms";
    if (weights) std::cout << ",cloud_scale";
    std::cout << "\n";
  }

  int exit_code = kExitOk;
  for (const std::string& dir : args.dirs) {
    ttb_submission* raw_sub = nullptr;
    check(ttb_submission_load(dir.c_str(), 0, &raw_sub), dir);
    Submission sub(raw_sub);

    ttb_aggregate* raw_agg = nullptr;
    check(ttb_aggregate_submission(registry.get(), sub.get(),
                                   args.round.empty() ? nullptr : args.round.c_str(),
                                   args.benchmark.empty() ? nullptr : args.benchmark.c_str(),
                                   &raw_agg),
          dir);
    Aggregate agg(raw_agg);
    const char* benchmark = nullptr;
    const char* round = nullptr;
    check(ttb_aggregate_benchmark(agg.get(), &benchmark, &round), dir);

    std::optional<double> scale;
    if (weights && ttb_submission_has_meta(sub.get())) {
      ttb_meta_info meta{};
      check(ttb_submission_meta(sub.get(), &meta), dir);
      double v = 0.0;
      check(ttb_cloud_scale(&meta.system, weights.get(), &v), dir + ": cloud scale");
      scale = v;
    }

    const size_t n = ttb_aggregate_run_count(agg.get());
    std::vector<ttb_run_outcome> runs(n);
    for (size_t i = 0; i < n; ++i) check(ttb_aggregate_run(agg.get(), i, &runs[i]), dir);

    const char* message = nullptr;
    ttb_status status = ttb_aggregate_status(agg.get(), &message);
    ttb_score score{};
    if (status == TTB_OK) check(ttb_aggregate_score(agg.get(), &score), dir);

    if (opt.format == Format::kText) {
      std::cout << "submission " << dir << " benchmark=" << benchmark << " round=" << round
                << "\n";
      for (size_t i = 0; i < n; ++i) {
        const ttb_run_outcome& r = runs[i];
        std::cout << "  run " << r.index << ": ";
        if (r.status != TTB_OK) {
          std::cout << describe(r.status) << ": " << r.message << "\n";
          continue;
        }
        std::cout << "ttt_ms=" << r.result.ttt_ms << " ("
                  << minutes(static_cast<double>(r.result.ttt_ms)) << ")";
        if (status == TTB_OK) {
          if (i == score.dropped_min_index) std::cout << " dropped (fastest)";
          if (i == score.dropped_max_index) std::cout << " dropped (slowest)";
        }
        std::cout << "\n";
      }
      if (scale) std::cout << "  cloud_scale=" << number(*scale) << "\n";
      if (status == TTB_OK) {
        std::cout << "  score_ms=" << number(score.value_ms) << " (" << minutes(score.value_ms)
                  << ")\n";
      } else {
        std::cout << "  no score: " << describe(status) << ": " << message << "\n";
      }
    } else if (status == TTB_OK) {
      std::cout << csv_field(dir) << ',' << csv_field(benchmark) << ',' << csv_field(round) << ','
                << n << ',' << runs[score.dropped_min_index].index << ','
                << runs[score.dropped_max_index].index << ',' << number(score.value_ms);
      if (weights) std::cout << ',' << (scale ? number(*scale) : std::string());
      std::cout << "\n";
    }

    if (status != TTB_OK) {
      std::cerr << "ttbench: " << dir << ": " << message << " (" << ttb_status_name(status)
                << ")\n";
      exit_code = std::max(exit_code, exit_code_for(status));
      continue;
    }
    if (!args.results.empty()) {
      if (!ttb_submission_has_meta(sub.get())) {
        std::cerr << "ttbench: " << dir << ": no meta file; omitted from " << args.results
                  << "\n";
        continue;
      }
      check(ttb_results_append_aggregate(results.get(), sub.get(), agg.get()), dir);
    }
  }

  if (!args.results.empty()) {
    OwnedString csv;
    check(ttb_results_to_csv(results.get(), &csv.ptr), "results");
    std::ofstream out(args.results, std::ios::binary | std::ios::trunc);
    out << csv.str();
    if (!out) {
      std::cerr << "ttbench: cannot write " << args.results << "\n";
      return kExitUsage;
    }
  }
  return exit_code;
}

// ------------------------------------------------------------------ check

struct CheckArgs {
  std::string dir;
  int max_epochs_per_eval = 1;
};

int cmd_check(const Options& opt, const CheckArgs& args) {
  Registry registry = open_registry(opt);
  ttb_submission* raw_sub = nullptr;
  check(ttb_submission_load(args.dir.c_str(), 1, &raw_sub), args.dir);
  Submission sub(raw_sub);
  ttb_report* raw_report = nullptr;
  check(ttb_check_submission(registry.get(), sub.get(), args.max_epochs_per_eval, &raw_report),
        args.dir);
  Report report(raw_report);

  const size_t n = ttb_report_finding_count(report.get());
  size_t errors = 0;
  if (opt.format == Format::kCsv) std::cout << "severity,rule_id,run,position,message\n";
  for (size_t i = 0; i < n; ++i) {
    ttb_finding f{};
    check(ttb_report_finding(report.get(), i, &f), args.dir);
    const bool is_error = f.severity == TTB_SEVERITY_ERROR;
    errors += is_error ? 1 : 0;
    const char* sev = is_error ? "error" : "warning";
    if (opt.format == Format::kCsv) {
      std::cout << sev << ',' << csv_field(f.rule_id) << ','
                << (f.run >= 0 ? std::to_string(f.run) : std::string()) << ','
                << (f.position >= 0 ? std::to_string(f.position) : std::string()) << ','
                << csv_field(f.message) << "\n";
    } else {
      std::cout << sev << " [" << f.rule_id << "]";
      if (f.run >= 0) std::cout << " run " << f.run;
      if (f.position >= 0) std::cout << " event " << f.position;
      std::cout << ": " << f.message << "\n";
    }
  }
  const bool compliant = ttb_report_compliant(report.get()) != 0;
  if (opt.format == Format::kText) {
    if (compliant) {
      std::cout << "compliant (" << (n - errors) << " warnings)\n";
    } else {
      std::cout << "not compliant: " << errors << " errors, " << (n - errors) << " warnings\n";
    }
  }
  return compliant ? kExitOk : kExitViolation;
}

// ----------------------------------------------------------------- report

struct ReportArgs {
  std::string csv_a;
  std::string csv_b;
  long long chips = 0;
  std::string svg_dir;
};

void print_comparison(const Options& opt, const char* kind, const ttb_comparison* c,
                      const char* heading, const char* value_label) {
  const size_t n = ttb_comparison_row_count(c);
  if (opt.format == Format::kText) {
    std::cout << heading << "\n";
    std::cout << "  benchmark,a_" << value_label << ",b_" << value_label << ",ratio\n";
  }
  for (size_t i = 0; i < n; ++i) {
    ttb_comparison_entry e{};
    check(ttb_comparison_row(c, i, &e), kind);
    if (opt.format == Format::kCsv) {
      std::cout << kind << ',' << csv_field(e.benchmark) << ',' << number(e.value_a) << ','
                << number(e.value_b) << ',' << number(e.ratio) << "\n";
    } else {
      char ratio[32];
      std::snprintf(ratio, sizeof ratio, "%.2f", e.ratio);
      std::cout << "  " << e.benchmark << ',' << number(e.value_a) << ',' << number(e.value_b)
                << ',' << ratio << "\n";
    }
  }
  for (size_t i = 0; i < ttb_comparison_note_count(c); ++i) {
    (opt.format == Format::kCsv ? std::cerr : std::cout)
        << "  note: " << ttb_comparison_note(c, i) << "\n";
  }
}

void write_svg(const ttb_comparison* c, const std::string& path, const char* title,
               const char* axis) {
  OwnedString svg;
  check(ttb_comparison_svg(c, title, axis, &svg.ptr), "svg");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << svg.str();
  if (!out) {
    std::cerr << "ttbench: cannot write " << path << "\n";
    throw Exit{kExitUsage};
  }
}

int cmd_report(const Options& opt, const ReportArgs& args) {
  ttb_results* raw_a = nullptr;
  ttb_results* raw_b = nullptr;
  check(ttb_results_load_csv(args.csv_a.c_str(), &raw_a), args.csv_a);
  Results a(raw_a);
  check(ttb_results_load_csv(args.csv_b.c_str(), &raw_b), args.csv_b);
  Results b(raw_b);

  ttb_comparison* raw_speed = nullptr;
  ttb_comparison* raw_chips = nullptr;
  check(ttb_speedup_report(a.get(), b.get(), args.chips, &raw_speed), "speedup");
  ComparisonHandle speed(raw_speed);
  check(ttb_chip_count_report(a.get(), b.get(), &raw_chips), "chip count");
  ComparisonHandle chip(raw_chips);

  if (opt.format == Format::kCsv) std::cout << "report,benchmark,value_a,value_b,ratio\n";
  const std::string speed_heading =
      "speedup, fastest " + std::to_string(args.chips) + "-chip entry (a score_ms / b score_ms)";
  print_comparison(opt, "speedup", speed.get(), speed_heading.c_str(), "score_ms");
  print_comparison(opt, "chips", chip.get(), "chips of fastest entry (b chips / a chips)",
                   "chips");

  if (!args.svg_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(args.svg_dir, ec);
    if (ec) {
      std::cerr << "ttbench: cannot create " << args.svg_dir << ": " << ec.message() << "\n";
      return kExitUsage;
    }
    const std::filesystem::path dir(args.svg_dir);
    write_svg(speed.get(), (dir / "speedup.svg").string(), speed_heading.c_str(), "speedup");
    write_svg(chip.get(), (dir / "chips.svg").string(), "Chips of fastest entry",
              "chip ratio");
  }
  return kExitOk;
}

// --------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string config;
  std::string outdir;
};

int cmd_simulate(const Options& opt, const SimulateArgs& args) {
  Registry registry = open_registry(opt);
  int runs = 0;
  check(ttb_simulate_from_config(registry.get(), args.config.c_str(), args.outdir.c_str(), &runs),
        args.config);
  if (opt.format == Format::kCsv) {
    std::cout << "outdir,runs\n" << csv_field(args.outdir) << ',' << runs << "\n";
  } else {
    std::cout << "wrote " << runs << " run logs to " << args.outdir << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-to-train benchmark scoring and compliance toolkit"};
  app.set_version_flag("--version", std::string(ttb_version()));
  app.require_subcommand(1);

  Options opt;
  auto set_format = [&opt](const std::string& v) {
    opt.format = v == "csv" ? Format::kCsv : Format::kText;
  };
  app.add_option_function<std::string>("--format", set_format,
                                       "Output format: text or csv (default text)")
      ->check(CLI::IsMember({"text", "csv"}))
      ->type_name("FORMAT");
  app.add_option("--registry", opt.registry_path, "Registry override file (INI)")
      ->check(CLI::ExistingFile);

  ScoreArgs score;
  CLI::App* score_cmd = app.add_subcommand("score", "Time-to-train of one run log");
  score_cmd->add_option("log", score.log, "Run log")->required();
  score_cmd->add_option("--round", score.round, "Round (default: from benchmark_decl)");
  score_cmd->add_option("--benchmark", score.benchmark, "Benchmark (default: from benchmark_decl)");

  AggregateArgs aggregate;
  CLI::App* aggregate_cmd =
      app.add_subcommand("aggregate", "Olympic score of submission directories");
  aggregate_cmd->add_option("dirs", aggregate.dirs, "Submission directories")->required();
  aggregate_cmd->add_option("--round", aggregate.round, "Round (default: declared)");
  aggregate_cmd->add_option("--benchmark", aggregate.benchmark, "Benchmark (default: declared)");
  aggregate_cmd->add_option("--weights", aggregate.weights, "Cloud-scale weights file (INI)")
      ->check(CLI::ExistingFile);
  aggregate_cmd->add_option("--results", aggregate.results, "Write a results CSV");

  CheckArgs check_args;
  CLI::App* check_cmd = app.add_subcommand("check", "Compliance check of a submission directory");
  check_cmd->add_option("dir", check_args.dir, "Submission directory")->required();
  check_cmd->add_option("--max-epochs-per-eval", check_args.max_epochs_per_eval,
                        "Largest allowed gap between evaluations, in epochs")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  ReportArgs report;
  CLI::App* report_cmd = app.add_subcommand("report", "Cross-round speedup and chip-count report");
  report_cmd->add_option("csv_a", report.csv_a, "Results CSV of the earlier round")->required();
  report_cmd->add_option("csv_b", report.csv_b, "Results CSV of the later round")->required();
  report_cmd->add_option("--chips", report.chips, "Chip count for the speedup table")
      ->required()
      ->check(CLI::PositiveNumber);
  report_cmd->add_option("--svg-dir", report.svg_dir, "Write speedup.svg and chips.svg here");

  SimulateArgs simulate;
  CLI::App* simulate_cmd = app.add_subcommand("simulate", "Generate simulated run logs");
  simulate_cmd->add_option("config", simulate.config, "Simulation config (INI)")->required();
  simulate_cmd->add_option("outdir", simulate.outdir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (score_cmd->parsed()) return cmd_score(opt, score);
    if (aggregate_cmd->parsed()) return cmd_aggregate(opt, aggregate);
    if (check_cmd->parsed()) return cmd_check(opt, check_args);
    if (report_cmd->parsed()) return cmd_report(opt, report);
    if (simulate_cmd->parsed()) return cmd_simulate(opt, simulate);
  } catch (const Exit& e) {
    return e.code;
  }
  return kExitUsage;
}
