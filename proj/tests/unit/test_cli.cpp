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

// Runs the built command-line tool and checks exit codes and output.

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

namespace fs = std::filesystem;

const std::string kCli = TTBENCH_CLI;
const std::string kFixtures = TTBENCH_FIXTURES;

struct Result {
  int code = -1;
  std::string out;
};

// Runs the tool with the given arguments; stderr is folded into out when
// merge is set and discarded otherwise.
Result run(const std::string& args, bool merge = false) {
  std::string cmd = "'" + kCli + "' " + args + (merge ? " 2>&1" : " 2>/dev/null");
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture(const std::string& rel) { return "'" + kFixtures + "/" + rel + "'"; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("ttbench_cli_" + std::to_string(getpid()) + "_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("score") {
  Result r = run("score " + fixture("timing/capped_model_init.log"));
  CHECK(r.code == 0);
  CHECK(r.out.find("ttt_ms=2700000 (45.0 min)") != std::string::npos);
  CHECK(r.out.find("model_init_excluded_ms=1200000") != std::string::npos);

  r = run("--format csv score " + fixture("timing/capped_model_init.log"));
  CHECK(r.code == 0);
  CHECK(r.out ==
        "benchmark,round,start_ms,stop_ms,model_init_excluded_ms,reformat_excluded_ms,"
        "excluded_ms,ttt_ms,quality_epoch\nresnet,v0.5,100000,4000000,1200000,0,1200000,2700000,"
        + r.out.substr(r.out.rfind(',') + 1));

  r = run("score " + fixture("timing/target_not_reached.log"), true);
  CHECK(r.code == 1);
  CHECK(r.out.find("target not reached") != std::string::npos);

  CHECK(run("score " + fixture("score/garbage.log")).code == 2);
  CHECK(run("score /nonexistent.log").code == 2);
  CHECK(run("score").code == 2);
  CHECK(run("--format xml score " + fixture("timing/reformat.log")).code == 2);
}

TEST_CASE("aggregate") {
  Result r = run("aggregate " + fixture("aggregate/resnet5"));
  CHECK(r.code == 0);
  CHECK(r.out.find("score_ms=720000 (12.0 min)") != std::string::npos);
  CHECK(r.out.find("dropped (fastest)") != std::string::npos);

  r = run("aggregate " + fixture("aggregate/resnet4"));
  CHECK(r.code == 1);
  CHECK(r.out.find("no score") != std::string::npos);

  r = run("--format csv aggregate " + fixture("aggregate/gnmt10") + " " + fixture("aggregate/resnet5"));
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string header, gnmt, resnet;
  std::getline(lines, header);
  std::getline(lines, gnmt);
  std::getline(lines, resnet);
  CHECK(header == "submission,benchmark,round,runs,dropped_min_run,dropped_max_run,score_ms");
  CHECK(gnmt.ends_with(",gnmt,v0.5,10,0,1,1800000"));
  CHECK(resnet.ends_with(",resnet,v0.5,5,0,4,720000"));
}

TEST_CASE("check") {
  Result r = run("check " + fixture("check/compliant"));
  CHECK(r.code == 0);
  CHECK(r.out.find("compliant (0 warnings)") != std::string::npos);

  r = run("check " + fixture("check/bad_hp"));
  CHECK(r.code == 1);
  CHECK(r.out.find("error [hp.whitelist] run 2") != std::string::npos);
  CHECK(r.out.find("dropout_rate") != std::string::npos);

  r = run("--format csv check " + fixture("check/bad_hp"));
  CHECK(r.code == 1);
  CHECK(r.out.starts_with("severity,rule_id,run,position,message\nerror,hp.whitelist,2,"));
  CHECK(r.out.find("not compliant") == std::string::npos);

  CHECK(run("check " + fixture("check/no_meta")).code == 2);
}

TEST_CASE("report") {
  std::string a = fixture("report/round_a.csv");
  std::string b = fixture("report/round_b.csv");
  Result r = run("report " + a + " " + b + " --chips 16");
  CHECK(r.code == 0);
  CHECK(r.out.find("resnet") != std::string::npos);
  CHECK(r.out.find("1.30") != std::string::npos);
  CHECK(r.out.find("5.50") != std::string::npos);
  CHECK(r.out.find("note:") != std::string::npos);

  r = run("--format csv report " + a + " " + b + " --chips 16");
  CHECK(r.code == 0);
  CHECK(r.out.starts_with("report,benchmark,value_a,value_b,ratio\n"));
  CHECK(r.out.find("note") == std::string::npos);

  r = run("--format csv report " + a + " " + a + " --chips 16");
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(line.ends_with(",1"));
  }
  CHECK(rows == 6);

  fs::path svg = scratch("svg");
  r = run("report " + a + " " + b + " --chips 16 --svg-dir '" + svg.string() + "'");
  CHECK(r.code == 0);
  CHECK(slurp(svg / "speedup.svg").starts_with("<svg"));
  CHECK(fs::exists(svg / "chips.svg"));
  fs::remove_all(svg);

  CHECK(run("report " + fixture("report/malformed.csv") + " " + b + " --chips 16").code == 2);
  CHECK(run("report " + a + " " + b).code == 2);
}

TEST_CASE("simulate is deterministic and feeds the other subcommands") {
  fs::path one = scratch("sim1");
  fs::path two = scratch("sim2");
  std::string cfg = fixture("simulate/resnet.ini");
  Result r = run("simulate " + cfg + " '" + one.string() + "'");
  CHECK(r.code == 0);
  CHECK(r.out.find("wrote 5 run logs") != std::string::npos);
  CHECK(run("--format csv simulate " + cfg + " '" + two.string() + "'").code == 0);
  for (const char* name : {"run_0.log", "run_1.log", "run_2.log", "run_3.log", "run_4.log", "meta"}) {
    CAPTURE(name);
    REQUIRE(fs::exists(one / name));
    CHECK(slurp(one / name) == slurp(two / name));
  }
  CHECK(run("check '" + one.string() + "'").code == 0);

  fs::path results = scratch("results.csv");
  CHECK(run("aggregate '" + one.string() + "' --results '" + results.string() + "'").code == 0);
  std::string csv = slurp(results);
  CHECK(csv.starts_with("round,benchmark,submitter,division,category,chips,score_ms\n"));
  CHECK(csv.find("v0.5,resnet,example,closed,available,8,") != std::string::npos);

  CHECK(run("simulate /nonexistent.ini '" + one.string() + "'").code == 2);
  fs::remove_all(one);
  fs::remove_all(two);
  fs::remove(results);
}

TEST_CASE("version and help") {
  Result r = run("--version");
  CHECK(r.code == 0);
  CHECK(r.out.find("1.0.0") != std::string::npos);
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
}
