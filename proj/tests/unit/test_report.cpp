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

#include <random>
#include <string>

#include "doctest.h"
#include "ttbench/config.hpp"
#include "ttbench/error.hpp"
#include "ttbench/report.hpp"

using namespace ttbench;

namespace {

ResultRow row(std::string round, std::string bench, std::int64_t chips, double score,
              std::string submitter = "s") {
  ResultRow r;
  r.round = Round{std::move(round)};
  r.benchmark = std::move(bench);
  r.submitter = std::move(submitter);
  r.chips = chips;
  r.score_ms = score;
  return r;
}

SystemDesc system_of(std::int64_t procs, double mem, std::vector<Accelerator> accel) {
  SystemDesc s;
  s.host_processors = procs;
  s.host_memory_gb = mem;
  s.accelerators = std::move(accel);
  return s;
}

}  // namespace

TEST_CASE("cloud scale is a weighted sum") {
  ScaleWeights w{1.0, 0.0, {{"gpu", 10.0}}};
  CHECK(cloud_scale(system_of(8, 512, {{"gpu", 16}}), w) == 168.0);
  CHECK(cloud_scale(system_of(8, 512, {}), ScaleWeights{1.0, 0.0, {}}) == 8.0);
  CHECK(cloud_scale(system_of(8, 512, {{"gpu", 0}}), ScaleWeights{1.0, 0.0, {}}) == 8.0);
  try {
    cloud_scale(system_of(8, 512, {{"tpu", 4}}), w);
    FAIL("expected failure");
  } catch (const Error& ex) {
    CHECK(ex.code() == ErrorCode::kUnknownAcceleratorType);
  }
  ScaleWeights defaults;
  CHECK(defaults.w_proc == 1.0);
  CHECK(defaults.w_mem_gb == 0.01);
  CHECK(defaults.w_accel.empty());
}

TEST_CASE("cloud scale is linear") {
  std::mt19937_64 rng(3);
  ScaleWeights w{0.5, 0.25, {{"gpu", 2.0}, {"tpu", 4.0}}};
  for (int i = 0; i < 200; ++i) {
    auto n = [&] { return std::uniform_int_distribution<std::int64_t>(1, 1000)(rng); };
    SystemDesc a = system_of(n(), static_cast<double>(n()), {{"gpu", n()}, {"tpu", n()}});
    SystemDesc b = a;
    b.host_processors *= 2;
    b.host_memory_gb *= 2;
    for (Accelerator& x : b.accelerators) x.count *= 2;
    CHECK(cloud_scale(b, w) == 2.0 * cloud_scale(a, w));
  }
}

TEST_CASE("scale weights from config") {
  ScaleWeights w = parse_scale_weights(parse_config("[weights]\nproc = 2\nmem_gb = 0\naccel.gpu = 3\n"));
  CHECK(w.w_proc == 2.0);
  CHECK(w.w_accel.at("gpu") == 3.0);
  CHECK_THROWS_AS(parse_scale_weights(parse_config("[weights]\nproc = -1\n")), Error);
  CHECK_THROWS_AS(parse_scale_weights(parse_config("[weights]\nproc = 0\nmem_gb = 0\n")), Error);
  CHECK_THROWS_AS(parse_scale_weights(parse_config("[weights]\ncpu = 1\n")), Error);
  CHECK_THROWS_AS(parse_scale_weights(parse_config("[other]\n")), Error);
}

TEST_CASE("chip count falls back to host processors") {
  CHECK(chip_count(system_of(40, 1, {{"gpu", 8}, {"tpu", 2}})) == 10);
  CHECK(chip_count(system_of(40, 1, {})) == 40);
}

TEST_CASE("speedup of the fastest entry at a fixed chip count") {
  std::vector<ResultRow> a = {row("v0.5", "resnet", 16, 120), row("v0.5", "resnet", 16, 130),
                              row("v0.5", "resnet", 8, 10), row("v0.5", "gnmt", 16, 50)};
  std::vector<ResultRow> b = {row("v0.6", "resnet", 16, 92.3), row("v0.6", "ssd", 16, 9)};
  Comparison c = speedup_report(a, b, 16);
  REQUIRE(c.rows.size() == 1);
  CHECK(c.rows[0].benchmark == "resnet");
  CHECK(c.rows[0].value_a == 120);
  CHECK(c.rows[0].value_b == 92.3);
  CHECK(c.rows[0].ratio == doctest::Approx(1.3).epsilon(1e-3));
  CHECK(c.notes.size() == 2);

  Comparison same = speedup_report(a, a, 16);
  for (const ComparisonRow& r : same.rows) CHECK(r.ratio == 1.0);
  CHECK_THROWS_AS(speedup_report({}, b, 16), Error);
}

TEST_CASE("chip ratio of the overall fastest entries") {
  std::vector<ResultRow> a = {row("v0.5", "resnet", 640, 10), row("v0.5", "resnet", 16, 100)};
  std::vector<ResultRow> b = {row("v0.6", "resnet", 3520, 2), row("v0.6", "resnet", 16, 80)};
  Comparison c = chip_count_report(a, b);
  REQUIRE(c.rows.size() == 1);
  CHECK(c.rows[0].ratio == 5.5);
  CHECK(chip_count_report(a, a).rows[0].ratio == 1.0);
  std::vector<ResultRow> other = {row("v0.6", "ssd", 1, 1)};
  CHECK(chip_count_report(a, other).rows.empty());
}

TEST_CASE("results table and CSV round trip") {
  CHECK(results_table({}) == std::string(kResultsHeader) + "\n");
  std::vector<ResultRow> rows = {row("v0.5", "resnet", 16, 7200000, "a, \"quoted\" team"),
                                 row("v0.6", "gnmt", 3, 0.1 + 0.2, "line\nbreak")};
  rows[1].division = Division::kOpen;
  rows[1].category = Category::kResearch;
  std::string csv = results_table(rows);
  CHECK(std::count(csv.begin(), csv.end(), '\n') >= 3);
  CHECK(parse_results_csv(csv) == rows);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    std::vector<ResultRow> random;
    for (int k = 0; k < 5; ++k) {
      double score = std::uniform_real_distribution<double>(1e-3, 1e9)(rng);
      random.push_back(row("v0." + std::to_string(k), "b" + std::to_string(i), 1 + k, score));
    }
    CHECK(parse_results_csv(results_table(random)) == random);
  }
}

TEST_CASE("malformed results CSV") {
  const char* bad[] = {
      "",
      "round,benchmark\n",
      "round,benchmark,submitter,division,category,chips,score_ms\nv0.5,resnet,a,closed,available,16\n",
      "round,benchmark,submitter,division,category,chips,score_ms\nv0.5,resnet,a,closed,available,0,1\n",
      "round,benchmark,submitter,division,category,chips,score_ms\nv0.5,resnet,a,closed,available,1,-1\n",
      "round,benchmark,submitter,division,category,chips,score_ms\nv0.5,resnet,a,shut,available,1,1\n",
      "round,benchmark,submitter,division,category,chips,score_ms\nv0.5,resnet,\"a,closed,available,1,1\n",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    try {
      parse_results_csv(text);
      FAIL("expected failure");
    } catch (const Error& ex) {
      CHECK(ex.code() == ErrorCode::kMalformedCsv);
    }
  }
}

TEST_CASE("svg has one bar per row") {
  Comparison c;
  c.rows = {{"resnet", 1, 2, 1.3}, {"gnmt<&>", 1, 2, 2.0}};
  std::string svg = comparison_svg(c, "Speedup", "ratio");
  CHECK(svg.starts_with("<svg"));
  std::size_t bars = 0;
  for (std::size_t p = svg.find("<rect class=\"bar\""); p != std::string::npos;
       p = svg.find("<rect class=\"bar\"", p + 1)) {
    ++bars;
  }
  CHECK(bars == 2);
  CHECK(svg.find("gnmt&lt;&amp;&gt;") != std::string::npos);
}

TEST_CASE("format_number") {
  CHECK(format_number(9000000.0) == "9000000");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.3) == "1.3");
  CHECK(std::stod(format_number(0.1 + 0.2)) == 0.1 + 0.2);
}
