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

#include "ttbench/compliance.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <tuple>

#include "ttbench/error.hpp"
#include "ttbench/timing.hpp"

namespace ttbench {
namespace {

constexpr int kPreviewWindowDays = 60;

Finding error(std::string rule, std::string message, int run = -1, std::int64_t pos = -1) {
  return Finding{Severity::kError, std::move(rule), std::move(message), run, pos};
}

Finding warning(std::string rule, std::string message, int run = -1, std::int64_t pos = -1) {
  return Finding{Severity::kWarning, std::move(rule), std::move(message), run, pos};
}

// All system_decl events merged into one map, with the index of the first
// such event.
struct SystemDecl {
  Payload fields;
  std::int64_t position = -1;
};

SystemDecl merged_system_decl(const RunLog& log) {
  SystemDecl decl;
  const std::vector<LogEvent>& events = log.events();
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].key != EventKey::kSystemDecl) continue;
    if (decl.position < 0) decl.position = static_cast<std::int64_t>(i);
    for (const auto& [k, v] : events[i].payload) decl.fields.insert_or_assign(k, v);
  }
  return decl;
}

std::optional<std::string> decl_field(const RunLog& log, EventKey key, std::string_view field) {
  const LogEvent* e = log.find_first(key);
  if (e == nullptr) return std::nullopt;
  return string_field(e->payload, field);
}

std::int64_t index_of(const RunLog& log, EventKey key) {
  const std::vector<LogEvent>& events = log.events();
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].key == key) return static_cast<std::int64_t>(i);
  }
  return -1;
}

std::set<std::string> hyperparameter_names(const RunLog& log) {
  std::set<std::string> names;
  for (const LogEvent& e : log.events()) {
    if (e.key == EventKey::kHyperparameter) names.insert(*string_field(e.payload, "name"));
  }
  return names;
}

std::pair<std::string, std::string> split_pair(const std::string& item, const std::string& what) {
  std::size_t colon = item.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == item.size()) {
    fail(ErrorCode::kInvalidConfig, what + ": expected name:value, got '" + item + "'");
  }
  return {item.substr(0, colon), item.substr(colon + 1)};
}

}  // namespace

std::string_view to_string(Division division) {
  return division == Division::kClosed ? "closed" : "open";
}

std::string_view to_string(Category category) {
  switch (category) {
    case Category::kAvailable: return "available";
    case Category::kPreview: return "preview";
    case Category::kResearch: return "research";
  }
  return "unknown";
}

std::optional<Division> parse_division(std::string_view text) {
  if (text == "closed") return Division::kClosed;
  if (text == "open") return Division::kOpen;
  return std::nullopt;
}

std::optional<Category> parse_category(std::string_view text) {
  if (text == "available") return Category::kAvailable;
  if (text == "preview") return Category::kPreview;
  if (text == "research") return Category::kResearch;
  return std::nullopt;
}

std::string_view to_string(Severity severity) {
  return severity == Severity::kError ? "error" : "warning";
}

Date parse_date(std::string_view text) {
  auto bad = [&]() -> Date {
    fail(ErrorCode::kInvalidConfig, "expected YYYY-MM-DD date, got '" + std::string(text) + "'");
  };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return bad();
  for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
    if (text[i] < '0' || text[i] > '9') return bad();
  }
  auto num = [&](std::size_t pos, std::size_t len) {
    int v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) v = v * 10 + (text[i] - '0');
    return v;
  };
  Date date{std::chrono::year{num(0, 4)}, std::chrono::month{static_cast<unsigned>(num(5, 2))},
            std::chrono::day{static_cast<unsigned>(num(8, 2))}};
  if (!date.ok()) return bad();
  return date;
}

std::string format_date(Date date) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

std::int64_t SystemDesc::accelerator_count() const {
  std::int64_t total = 0;
  for (const Accelerator& a : accelerators) total += a.count;
  return total;
}

std::string validate_system(const SystemDesc& system) {
  if (system.nodes < 1) return "nodes must be >= 1";
  if (system.host_processors < 1) return "host_processors must be >= 1";
  if (!(system.host_memory_gb > 0.0)) return "host_memory_gb must be > 0";
  for (const Accelerator& a : system.accelerators) {
    if (a.type.empty()) return "accelerator type must be non-empty";
    if (a.count < 0) return "accelerator count for '" + a.type + "' must be >= 0";
  }
  return {};
}

Payload system_payload(const SystemDesc& system) {
  Payload p;
  p.emplace("nodes", system.nodes);
  p.emplace("host_processors", system.host_processors);
  p.emplace("host_memory_gb", system.host_memory_gb);
  for (const Accelerator& a : system.accelerators) {
    p.insert_or_assign("accelerator." + a.type, a.count);
  }
  for (const SoftwareItem& s : system.software) {
    p.insert_or_assign("software." + s.name, s.version);
  }
  return p;
}

SubmissionMeta parse_submission_meta(const ConfigFile& file) {
  const ConfigSection* sub = file.find("submission");
  if (sub == nullptr) fail(ErrorCode::kInvalidConfig, "meta: missing [submission] section");
  const ConfigSection* sys = file.find("system");
  if (sys == nullptr) fail(ErrorCode::kInvalidConfig, "meta: missing [system] section");

  SubmissionMeta meta;
  meta.submitter = sub->get_string("submitter").value_or("");
  meta.benchmark = sub->require_string("benchmark");
  meta.round = Round{sub->require_string("round")};

  std::string division = sub->require_string("division");
  std::optional<Division> d = parse_division(division);
  if (!d) fail(ErrorCode::kInvalidConfig, "meta: unknown division '" + division + "'");
  meta.division = *d;

  std::string category = sub->require_string("category");
  std::optional<Category> c = parse_category(category);
  if (!c) fail(ErrorCode::kInvalidConfig, "meta: unknown category '" + category + "'");
  meta.category = *c;

  if (auto s = sub->get_string("submission_date")) meta.submission_date = parse_date(*s);
  if (auto s = sub->get_string("preview_available_by")) meta.preview_available_by = parse_date(*s);

  meta.system.nodes = sys->get_int("nodes").value_or(1);
  meta.system.host_processors = sys->require_int("host_processors");
  meta.system.host_memory_gb = sys->require_double("host_memory_gb");
  if (auto s = sys->get_string("accelerators")) {
    for (const std::string& item : split_list(*s)) {
      auto [type, count] = split_pair(item, "meta accelerators");
      meta.system.accelerators.push_back({type, parse_int_strict(count, "accelerator count")});
    }
  }
  if (auto s = sys->get_string("software")) {
    for (const std::string& item : split_list(*s)) {
      auto [name, version] = split_pair(item, "meta software");
      meta.system.software.push_back({name, version});
    }
  }
  if (std::string why = validate_system(meta.system); !why.empty()) {
    fail(ErrorCode::kInvalidConfig, "meta: " + why);
  }
  return meta;
}

SubmissionMeta load_submission_meta(const std::string& path) {
  ConfigFile file = load_config(path);
  try {
    return parse_submission_meta(file);
  } catch (const Error& ex) {
    fail(ex.code(), path + ": " + ex.what());
  }
}

std::string format_submission_meta(const SubmissionMeta& meta) {
  std::ostringstream out;
  out << "[submission]\n";
  if (!meta.submitter.empty()) out << "submitter = " << meta.submitter << "\n";
  out << "benchmark = " << meta.benchmark << "\n";
  out << "round = " << meta.round.id << "\n";
  out << "division = " << to_string(meta.division) << "\n";
  out << "category = " << to_string(meta.category) << "\n";
  if (meta.submission_date) out << "submission_date = " << format_date(*meta.submission_date) << "\n";
  if (meta.preview_available_by) {
    out << "preview_available_by = " << format_date(*meta.preview_available_by) << "\n";
  }
  out << "\n[system]\n";
  out << "nodes = " << meta.system.nodes << "\n";
  out << "host_processors = " << meta.system.host_processors << "\n";
  out << "host_memory_gb = " << payload_value_text(meta.system.host_memory_gb) << "\n";
  if (!meta.system.accelerators.empty()) {
    out << "accelerators = ";
    for (std::size_t i = 0; i < meta.system.accelerators.size(); ++i) {
      if (i > 0) out << ", ";
      out << meta.system.accelerators[i].type << ":" << meta.system.accelerators[i].count;
    }
    out << "\n";
  }
  if (!meta.system.software.empty()) {
    out << "software = ";
    for (std::size_t i = 0; i < meta.system.software.size(); ++i) {
      if (i > 0) out << ", ";
      out << meta.system.software[i].name << ":" << meta.system.software[i].version;
    }
    out << "\n";
  }
  return out.str();
}

bool ComplianceReport::compliant() const { return error_count() == 0; }

std::size_t ComplianceReport::error_count() const {
  return static_cast<std::size_t>(std::count_if(findings_.begin(), findings_.end(),
                                                [](const Finding& f) {
                                                  return f.severity == Severity::kError;
                                                }));
}

std::size_t ComplianceReport::warning_count() const {
  return findings_.size() - error_count();
}

void ComplianceReport::add(Finding finding) { findings_.push_back(std::move(finding)); }

void ComplianceReport::merge(const ComplianceReport& other) {
  findings_.insert(findings_.end(), other.findings_.begin(), other.findings_.end());
}

void ComplianceReport::sort() {
  std::stable_sort(findings_.begin(), findings_.end(), [](const Finding& a, const Finding& b) {
    return std::tie(a.run, a.position, a.rule_id) < std::tie(b.run, b.position, b.rule_id);
  });
}

ComplianceReport check_hyperparameters(const RunLog& log, const BenchmarkSpec& spec,
                                       Division division) {
  ComplianceReport report;
  const std::vector<LogEvent>& events = log.events();
  for (std::size_t i = 0; i < events.size(); ++i) {
    const LogEvent& e = events[i];
    if (e.key != EventKey::kHyperparameter) continue;
    std::string name = *string_field(e.payload, "name");
    auto pos = static_cast<std::int64_t>(i);

    if (name == "optimizer") {
      std::optional<std::string> value = string_field(e.payload, "value");
      if (value && spec.optimizer_choices.contains(*value)) continue;
      std::string shown = value ? *value : payload_value_text(*find_field(e.payload, "value"));
      std::string msg = "optimizer '" + shown + "' is not permitted for " + spec.name + " " +
                        spec.round.id;
      report.add(division == Division::kClosed ? error("hp.optimizer", msg, -1, pos)
                                               : warning("hp.optimizer", msg, -1, pos));
      continue;
    }
    if (hyperparameter_whitelisted(spec, name)) continue;
    std::string msg = "hyperparameter '" + name + "' is not modifiable for " + spec.name;
    report.add(division == Division::kClosed ? error("hp.whitelist", msg, -1, pos)
                                             : warning("hp.whitelist", msg, -1, pos));
  }
  report.sort();
  return report;
}

ComplianceReport check_borrowing(const RunLog& original, const RunLog& resubmission) {
  std::optional<std::string> bench_a = decl_field(original, EventKey::kBenchmarkDecl, "name");
  std::optional<std::string> bench_b = decl_field(resubmission, EventKey::kBenchmarkDecl, "name");
  if (!bench_a || !bench_b) {
    fail(ErrorCode::kBenchmarkMismatch, "both logs must carry a benchmark_decl");
  }
  if (*bench_a != *bench_b) {
    fail(ErrorCode::kBenchmarkMismatch,
         "benchmark mismatch: '" + *bench_a + "' vs '" + *bench_b + "'");
  }

  ComplianceReport report;
  std::int64_t bench_pos = index_of(resubmission, EventKey::kBenchmarkDecl);
  if (decl_field(original, EventKey::kBenchmarkDecl, "round") !=
      decl_field(resubmission, EventKey::kBenchmarkDecl, "round")) {
    report.add(error("borrowing.round", "resubmission declares a different round", -1, bench_pos));
  }

  SystemDecl sys_a = merged_system_decl(original);
  SystemDecl sys_b = merged_system_decl(resubmission);
  std::set<std::string> keys;
  for (const auto& [k, v] : sys_a.fields) keys.insert(k);
  for (const auto& [k, v] : sys_b.fields) keys.insert(k);
  for (const std::string& k : keys) {
    const PayloadValue* a = find_field(sys_a.fields, k);
    const PayloadValue* b = find_field(sys_b.fields, k);
    if (a != nullptr && b != nullptr && *a == *b) continue;
    std::string was = a ? payload_value_text(*a) : "<absent>";
    std::string now = b ? payload_value_text(*b) : "<absent>";
    bool software = k.starts_with("software.");
    report.add(error(software ? "borrowing.software" : "borrowing.hardware",
                     "system_decl '" + k + "' changed from " + was + " to " + now, -1,
                     sys_b.position));
  }

  for (auto [key, field, rule] : {std::tuple{EventKey::kDivisionDecl, "division", "borrowing.division"},
                                  std::tuple{EventKey::kCategoryDecl, "category", "borrowing.category"}}) {
    if (decl_field(original, key, field) != decl_field(resubmission, key, field)) {
      report.add(error(rule, std::string(field) + " declaration changed", -1,
                       index_of(resubmission, key)));
    }
  }

  std::set<std::string> names_a = hyperparameter_names(original);
  std::set<std::string> names_b = hyperparameter_names(resubmission);
  if (names_a != names_b) {
    report.add(warning("borrowing.hp_names",
                       "resubmission sets a different set of hyperparameter names"));
  }
  report.sort();
  return report;
}

ComplianceReport check_category(const SubmissionMeta& meta, Date submission_date) {
  ComplianceReport report;
  if (meta.category == Category::kPreview) {
    if (!meta.preview_available_by) {
      report.add(error("category.preview_date", "preview submission lacks preview_available_by"));
    } else {
      std::chrono::sys_days deadline =
          std::chrono::sys_days{submission_date} + std::chrono::days{kPreviewWindowDays};
      if (std::chrono::sys_days{*meta.preview_available_by} > deadline) {
        report.add(error("category.preview_window",
                         "preview system available " + format_date(*meta.preview_available_by) +
                             ", later than 60 days after " + format_date(submission_date)));
      }
    }
  } else if (meta.preview_available_by) {
    report.add(warning("category.preview_date",
                       "preview_available_by is only meaningful for preview submissions"));
  }
  return report;
}

ComplianceReport check_run_count(std::span<const RunLog> logs, const BenchmarkSpec& spec) {
  ComplianceReport report;
  if (logs.size() != static_cast<std::size_t>(spec.required_runs)) {
    report.add(error("runs.count", spec.name + " requires " + std::to_string(spec.required_runs) +
                                       " runs, found " + std::to_string(logs.size())));
  }
  for (std::size_t i = 0; i < logs.size(); ++i) {
    try {
      compute_time_to_train(logs[i], spec);
    } catch (const Error& ex) {
      report.add(error("runs.target", "run " + std::to_string(i) + ": " + ex.what(),
                       static_cast<int>(i)));
    }
  }
  report.sort();
  return report;
}

ComplianceReport check_eval_cadence(const RunLog& log, int max_epochs_per_eval) {
  ComplianceReport report;
  int since_eval = 0;
  const std::vector<LogEvent>& events = log.events();
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].key == EventKey::kEvalResult) {
      since_eval = 0;
    } else if (events[i].key == EventKey::kEpochStop) {
      if (++since_eval == max_epochs_per_eval + 1) {
        report.add(error("eval.cadence",
                         "more than " + std::to_string(max_epochs_per_eval) +
                             " epoch(s) completed without an eval_result",
                         -1, static_cast<std::int64_t>(i)));
      }
    }
  }
  return report;
}

ComplianceReport check_submission(const SubmissionMeta& meta, std::span<const RunLog> logs,
                                  const Registry& registry, const CheckOptions& options) {
  ComplianceReport report;
  if (!registry.contains(meta.round, meta.benchmark)) {
    report.add(error("meta.benchmark",
                     "unknown benchmark '" + meta.benchmark + "' for round " + meta.round.id));
    return report;
  }
  const BenchmarkSpec& spec = registry.lookup(meta.round, meta.benchmark);

  if (meta.submission_date) {
    report.merge(check_category(meta, *meta.submission_date));
  } else {
    report.add(error("meta.submission_date", "meta lacks submission_date"));
  }
  report.merge(check_run_count(logs, spec));

  for (std::size_t i = 0; i < logs.size(); ++i) {
    const RunLog& log = logs[i];
    int run = static_cast<int>(i);
    ComplianceReport per_log;

    std::optional<std::string> bench = decl_field(log, EventKey::kBenchmarkDecl, "name");
    if (bench && *bench != meta.benchmark) {
      per_log.add(error("log.benchmark",
                        "log declares benchmark '" + *bench + "', meta says '" + meta.benchmark + "'",
                        run, index_of(log, EventKey::kBenchmarkDecl)));
    }
    std::optional<std::string> division = decl_field(log, EventKey::kDivisionDecl, "division");
    if (division && *division != to_string(meta.division)) {
      per_log.add(error("log.division", "log declares division '" + *division + "'", run,
                        index_of(log, EventKey::kDivisionDecl)));
    }
    std::optional<std::string> category = decl_field(log, EventKey::kCategoryDecl, "category");
    if (category && *category != to_string(meta.category)) {
      per_log.add(error("log.category", "log declares category '" + *category + "'", run,
                        index_of(log, EventKey::kCategoryDecl)));
    }
    per_log.merge(check_hyperparameters(log, spec, meta.division));
    per_log.merge(check_eval_cadence(log, options.max_epochs_per_eval));
    for (Finding f : per_log.findings()) {
      f.run = run;
      report.add(std::move(f));
    }
  }
  report.sort();
  return report;
}

}  // namespace ttbench
