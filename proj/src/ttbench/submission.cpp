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

#include "ttbench/submission.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

namespace ttbench {
namespace {

namespace fs = std::filesystem;

std::optional<int> run_index_of(const std::string& filename) {
  constexpr std::string_view kPrefix = "run_";
  constexpr std::string_view kSuffix = ".log";
  std::string_view name(filename);
  if (!name.starts_with(kPrefix) || !name.ends_with(kSuffix)) return std::nullopt;
  std::string_view digits = name.substr(kPrefix.size(), name.size() - kPrefix.size() - kSuffix.size());
  if (digits.empty() || (digits.size() > 1 && digits.front() == '0')) return std::nullopt;
  int k = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) return std::nullopt;
  return k;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot write '" + path + "'");
  out << text;
  if (!out) fail(ErrorCode::kIo, "write failed for '" + path + "'");
}

std::vector<std::pair<int, std::string>> list_run_logs(const std::string& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) fail(ErrorCode::kIo, "'" + dir + "' is not a directory");
  std::vector<std::pair<int, std::string>> runs;
  for (const fs::directory_entry& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    if (std::optional<int> k = run_index_of(entry.path().filename().string())) {
      runs.emplace_back(*k, entry.path().string());
    }
  }
  std::sort(runs.begin(), runs.end());
  return runs;
}

SubmissionDir load_submission_dir(const std::string& dir, bool require_meta) {
  SubmissionDir out;
  out.path = dir;
  std::vector<std::pair<int, std::string>> files = list_run_logs(dir);

  fs::path meta_path = fs::path(dir) / kMetaFileName;
  std::error_code ec;
  if (fs::exists(meta_path, ec)) {
    out.meta = load_submission_meta(meta_path.string());
  } else if (require_meta) {
    fail(ErrorCode::kIo, "missing meta file '" + meta_path.string() + "'");
  }

  std::vector<std::future<RunLog>> pending;
  pending.reserve(files.size());
  for (const auto& [k, path] : files) {
    pending.push_back(std::async(std::launch::async, [p = path] { return load_log_file(p); }));
  }
  // get() in index order so the reported failure does not depend on
  // completion order.
  for (std::size_t i = 0; i < files.size(); ++i) {
    out.runs.push_back({files[i].first, files[i].second, pending[i].get()});
  }
  return out;
}

std::vector<RunOutcome> score_runs(const SubmissionDir& dir, const BenchmarkSpec& spec) {
  std::vector<std::future<RunOutcome>> pending;
  for (const SubmissionRun& run : dir.runs) {
    pending.push_back(std::async(std::launch::async, [&run, &spec] {
      RunOutcome outcome;
      outcome.index = run.index;
      try {
        outcome.result = compute_time_to_train(run.log, spec);
      } catch (const Error& ex) {
        outcome.error = ex.code();
        outcome.message = ex.what();
      }
      return outcome;
    }));
  }
  std::vector<RunOutcome> outcomes;
  for (auto& f : pending) outcomes.push_back(f.get());
  return outcomes;
}

std::optional<std::pair<Round, std::string>> declared_benchmark(const SubmissionDir& dir) {
  if (dir.meta) return std::make_pair(dir.meta->round, dir.meta->benchmark);
  for (const SubmissionRun& run : dir.runs) {
    if (const LogEvent* decl = run.log.find_first(EventKey::kBenchmarkDecl)) {
      std::optional<std::string> name = string_field(decl->payload, "name");
      std::optional<std::string> round = string_field(decl->payload, "round");
      if (name && round) return std::make_pair(Round{*round}, *name);
    }
  }
  return std::nullopt;
}

int write_simulated_submission(const SimConfig& cfg, const BenchmarkSpec& spec,
                               const std::string& outdir) {
  std::error_code ec;
  fs::create_directories(outdir, ec);
  if (ec) fail(ErrorCode::kIo, "cannot create '" + outdir + "': " + ec.message());

  std::vector<std::future<std::string>> pending;
  for (int k = 0; k < cfg.runs; ++k) {
    pending.push_back(std::async(std::launch::async,
                                 [&cfg, &spec, k] { return serialize_log(simulate_run(cfg, spec, k)); }));
  }
  for (int k = 0; k < cfg.runs; ++k) {
    write_text_file((fs::path(outdir) / ("run_" + std::to_string(k) + ".log")).string(),
                    pending[static_cast<std::size_t>(k)].get());
  }
  if (cfg.meta) {
    write_text_file((fs::path(outdir) / kMetaFileName).string(), format_submission_meta(*cfg.meta));
  }
  return cfg.runs;
}

}  // namespace ttbench
