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

#include <string>

#include "doctest.h"
#include "ttbench/compliance.hpp"
#include "ttbench/config.hpp"
#include "ttbench/error.hpp"
#include "ttbench/event_log.hpp"
#include "ttbench/registry.hpp"

using namespace ttbench;
using namespace std::chrono;

namespace {

const Registry& reg() {
  static const Registry r = Registry::defaults();
  return r;
}

std::string hp(std::int64_t t, const std::string& name, const std::string& value) {
  return ":::TTT " + std::to_string(t) + " hyperparameter {\"name\":\"" + name +
         "\",\"value\":" + value + "}\n";
}

// A run of `epochs` 1-second epochs, each followed by an eval, ending at the
// resnet target.
std::string run_text(const std::string& extra, int epochs = 3,
                     const std::string& bench = "resnet",
                     const std::string& system = R"({"accelerator.gpu":8,"software.fw":"1.0"})") {
  std::string out = ":::TTT 0 benchmark_decl {\"name\":\"" + bench + "\",\"round\":\"v0.5\"}\n";
  out += ":::TTT 0 system_decl " + system + "\n";
  out += ":::TTT 0 division_decl {\"division\":\"closed\"}\n";
  out += ":::TTT 0 run_start {}\n" + extra + ":::TTT 0 data_touch {}\n";
  for (int e = 1; e <= epochs; ++e) {
    std::string ep = std::to_string(e);
    std::string t0 = std::to_string((e - 1) * 1000), t1 = std::to_string(e * 1000);
    out += ":::TTT " + t0 + " epoch_start {\"epoch\":" + ep + "}\n";
    out += ":::TTT " + t1 + " epoch_stop {\"epoch\":" + ep + "}\n";
    out += ":::TTT " + t1 + " eval_result {\"epoch\":" + ep + ",\"value\":" +
           (e == epochs ? "76" : "50") + "}\n";
  }
  return out;
}

std::vector<std::string> rule_ids(const ComplianceReport& r) {
  std::vector<std::string> out;
  for (const Finding& f : r.findings()) out.push_back(f.rule_id);
  return out;
}

SubmissionMeta meta_for(Category c, std::optional<Date> available_by = std::nullopt) {
  SubmissionMeta m;
  m.benchmark = "resnet";
  m.category = c;
  m.preview_available_by = available_by;
  m.submission_date = year{2019} / May / 1;
  return m;
}

}  // namespace

TEST_CASE("closed division hyperparameter names") {
  const BenchmarkSpec& resnet = reg().lookup(kRoundV05, "resnet");
  RunLog ok = parse_log_text(run_text(hp(0, "batch_size", "1024") + hp(0, "lr_schedule.base_lr", "0.1")));
  CHECK(check_hyperparameters(ok, resnet, Division::kClosed).compliant());
  CHECK(check_hyperparameters(ok, resnet, Division::kClosed).findings().empty());

  RunLog bad = parse_log_text(run_text(hp(0, "dropout_rate", "0.5")));
  ComplianceReport closed = check_hyperparameters(bad, resnet, Division::kClosed);
  CHECK_FALSE(closed.compliant());
  REQUIRE(closed.findings().size() == 1);
  CHECK(closed.findings()[0].rule_id == "hp.whitelist");
  CHECK(closed.findings()[0].position == 4);

  ComplianceReport open = check_hyperparameters(bad, resnet, Division::kOpen);
  CHECK(open.compliant());
  CHECK(open.warning_count() == 1);
}

TEST_CASE("optimizer values are checked against the permitted set") {
  const BenchmarkSpec& ncf = reg().lookup(kRoundV05, "ncf");
  CHECK(check_hyperparameters(parse_log_text(run_text(hp(0, "optimizer", "\"lazy_adam\""))), ncf,
                              Division::kClosed)
            .compliant());
  ComplianceReport sgd = check_hyperparameters(
      parse_log_text(run_text(hp(0, "optimizer", "\"sgd\""))), ncf, Division::kClosed);
  CHECK(rule_ids(sgd) == std::vector<std::string>{"hp.optimizer"});

  const BenchmarkSpec& resnet6 = reg().lookup(kRoundV06, "resnet");
  const BenchmarkSpec& resnet5 = reg().lookup(kRoundV05, "resnet");
  RunLog lars = parse_log_text(run_text(hp(0, "optimizer", "\"lars\"")));
  CHECK(check_hyperparameters(lars, resnet6, Division::kClosed).compliant());
  CHECK_FALSE(check_hyperparameters(lars, resnet5, Division::kClosed).compliant());
}

TEST_CASE("anything compliant in closed is compliant in open") {
  const char* names[] = {"batch_size", "lr", "beta1", "momentum", "lr_schedule.x", "optimizer"};
  for (const BenchmarkSpec* spec : reg().all()) {
    for (const char* name : names) {
      RunLog log = parse_log_text(run_text(hp(0, name, "\"adam\"")));
      if (check_hyperparameters(log, *spec, Division::kClosed).compliant()) {
        CHECK(check_hyperparameters(log, *spec, Division::kOpen).compliant());
      }
      CHECK(check_hyperparameters(log, *spec, Division::kOpen).compliant());
    }
  }
}

TEST_CASE("borrowing permits only hyperparameter value changes") {
  RunLog original = parse_log_text(run_text(hp(0, "batch_size", "1024")));
  RunLog new_value = parse_log_text(run_text(hp(0, "batch_size", "2048"), 5));
  CHECK(check_borrowing(original, new_value).compliant());
  CHECK(check_borrowing(original, new_value).findings().empty());

  RunLog software = parse_log_text(
      run_text(hp(0, "batch_size", "1024"), 3, "resnet", R"({"accelerator.gpu":8,"software.fw":"1.1"})"));
  CHECK(rule_ids(check_borrowing(original, software)) ==
        std::vector<std::string>{"borrowing.software"});

  RunLog hardware = parse_log_text(
      run_text(hp(0, "batch_size", "1024"), 3, "resnet", R"({"accelerator.gpu":16,"software.fw":"1.0"})"));
  CHECK(rule_ids(check_borrowing(original, hardware)) ==
        std::vector<std::string>{"borrowing.hardware"});

  RunLog renamed = parse_log_text(run_text(hp(0, "lr_schedule.base_lr", "0.2")));
  ComplianceReport names = check_borrowing(original, renamed);
  CHECK(names.compliant());
  CHECK(rule_ids(names) == std::vector<std::string>{"borrowing.hp_names"});

  RunLog other = parse_log_text(run_text("", 3, "ssd"));
  try {
    check_borrowing(original, other);
    FAIL("expected failure");
  } catch (const Error& ex) {
    CHECK(ex.code() == ErrorCode::kBenchmarkMismatch);
  }
}

TEST_CASE("preview systems must be available within 60 days") {
  const Date day = year{2019} / May / 1;
  auto plus = [&](int d) { return Date{sys_days{day} + days{d}}; };
  CHECK(check_category(meta_for(Category::kPreview, plus(59)), day).compliant());
  CHECK(check_category(meta_for(Category::kPreview, plus(60)), day).compliant());
  CHECK(rule_ids(check_category(meta_for(Category::kPreview, plus(61)), day)) ==
        std::vector<std::string>{"category.preview_window"});
  CHECK_FALSE(check_category(meta_for(Category::kPreview, plus(90)), day).compliant());
  CHECK_FALSE(check_category(meta_for(Category::kPreview), day).compliant());
  CHECK(check_category(meta_for(Category::kResearch), day).compliant());
  CHECK(check_category(meta_for(Category::kAvailable), day).compliant());
}

TEST_CASE("run count and target") {
  const BenchmarkSpec& resnet = reg().lookup(kRoundV05, "resnet");
  RunLog good = parse_log_text(run_text(""));
  std::vector<RunLog> five(5, good);
  CHECK(check_run_count(five, resnet).compliant());

  const BenchmarkSpec& gnmt = reg().lookup(kRoundV05, "gnmt");
  CHECK(rule_ids(check_run_count(five, gnmt)).front() == "runs.count");

  std::string short_run = run_text("");
  short_run.replace(short_run.rfind("\"value\":76"), 10, "\"value\":70");
  five[3] = parse_log_text(short_run);
  ComplianceReport r = check_run_count(five, resnet);
  REQUIRE(r.findings().size() == 1);
  CHECK(r.findings()[0].rule_id == "runs.target");
  CHECK(r.findings()[0].run == 3);
}

TEST_CASE("eval cadence") {
  std::string text = ":::TTT 0 run_start {}\n:::TTT 0 data_touch {}\n";
  for (int e = 1; e <= 4; ++e) {
    text += ":::TTT " + std::to_string(e) + " epoch_start {}\n";
    text += ":::TTT " + std::to_string(e) + " epoch_stop {}\n";
    if (e == 4) text += ":::TTT 9 eval_result {\"epoch\":4,\"value\":1}\n";
  }
  RunLog log = parse_log_text(text);
  CHECK(rule_ids(check_eval_cadence(log, 1)) == std::vector<std::string>{"eval.cadence"});
  CHECK(rule_ids(check_eval_cadence(log, 2)) == std::vector<std::string>{"eval.cadence"});
  CHECK(check_eval_cadence(log, 4).compliant());
}

TEST_CASE("report ordering and compliance bit") {
  ComplianceReport r;
  r.add({Severity::kWarning, "b", "x", 1, 5});
  r.add({Severity::kWarning, "a", "x", 1, 5});
  r.add({Severity::kWarning, "z", "x", -1, -1});
  r.add({Severity::kWarning, "c", "x", 0, 9});
  CHECK(r.compliant());
  r.sort();
  CHECK(rule_ids(r) == std::vector<std::string>{"z", "c", "a", "b"});
  r.add({Severity::kError, "e", "x", 2, 0});
  CHECK_FALSE(r.compliant());
  CHECK(r.error_count() == 1);
  CHECK(r.warning_count() == 4);
}

TEST_CASE("submission checks compare meta with the logs") {
  SubmissionMeta meta = meta_for(Category::kAvailable);
  meta.division = Division::kOpen;
  std::vector<RunLog> logs(5, parse_log_text(run_text("")));
  ComplianceReport r = check_submission(meta, logs, reg());
  CHECK(r.error_count() == 5);
  for (const Finding& f : r.findings()) CHECK(f.rule_id == "log.division");

  meta.division = Division::kClosed;
  CHECK(check_submission(meta, logs, reg()).compliant());
  meta.submission_date.reset();
  CHECK(rule_ids(check_submission(meta, logs, reg())) ==
        std::vector<std::string>{"meta.submission_date"});
  meta.benchmark = "bert";
  CHECK(rule_ids(check_submission(meta, logs, reg())) == std::vector<std::string>{"meta.benchmark"});
}

TEST_CASE("meta descriptors round trip through text") {
  ConfigFile file = parse_config(
      "[submission]\nsubmitter = acme\nbenchmark = ssd\nround = v0.6\ndivision = open\n"
      "category = preview\nsubmission_date = 2019-05-01\npreview_available_by = 2019-06-15\n"
      "[system]\nnodes = 2\nhost_processors = 64\nhost_memory_gb = 1024.5\n"
      "accelerators = tpu:32, gpu:0\nsoftware = fw:2.0, lib:7\n");
  SubmissionMeta m = parse_submission_meta(file);
  CHECK(m.submitter == "acme");
  CHECK(m.division == Division::kOpen);
  CHECK(m.category == Category::kPreview);
  CHECK(m.system.accelerator_count() == 32);
  CHECK(m.system.software.size() == 2);
  CHECK(format_date(*m.preview_available_by) == "2019-06-15");

  SubmissionMeta back = parse_submission_meta(parse_config(format_submission_meta(m)));
  CHECK(back.system == m.system);
  CHECK(back.benchmark == m.benchmark);
  CHECK(back.submission_date == m.submission_date);
  CHECK(back.preview_available_by == m.preview_available_by);

  Payload p = system_payload(m.system);
  CHECK(integer_field(p, "accelerator.tpu") == 32);
  CHECK(string_field(p, "software.fw") == "2.0");
  CHECK(number_field(p, "host_memory_gb") == 1024.5);
}

TEST_CASE("dates and system descriptors are validated") {
  CHECK_THROWS_AS(parse_date("2019-5-01"), Error);
  CHECK_THROWS_AS(parse_date("2019-02-30"), Error);
  CHECK(format_date(parse_date("2020-02-29")) == "2020-02-29");
  SystemDesc sys;
  CHECK(validate_system(sys).empty());
  sys.host_processors = 0;
  CHECK_FALSE(validate_system(sys).empty());
  sys.host_processors = 1;
  sys.accelerators.push_back({"gpu", -1});
  CHECK_FALSE(validate_system(sys).empty());
}
