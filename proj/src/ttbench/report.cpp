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

#include "ttbench/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "ttbench/error.hpp"

namespace ttbench {
namespace {

std::string csv_field(std::string_view text) {
  bool quote = text.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!quote) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

[[noreturn]] void bad_csv(std::size_t record, const std::string& why) {
  fail(ErrorCode::kMalformedCsv, "csv record " + std::to_string(record) + ": " + why);
}

// RFC 4180 records. Accepts LF or CRLF line ends; a final line end is
// optional.
std::vector<std::vector<std::string>> split_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t i = 0;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
  };

  while (i < text.size()) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          i += 2;
          continue;
        }
        in_quotes = false;
        ++i;
        if (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          bad_csv(records.size() + 1, "characters after closing quote");
        }
        continue;
      }
      field += c;
      ++i;
      continue;
    }
    if (c == '"') {
      if (field_started) bad_csv(records.size() + 1, "quote inside unquoted field");
      in_quotes = true;
      field_started = true;
      ++i;
    } else if (c == ',') {
      end_field();
      ++i;
    } else if (c == '\r' || c == '\n') {
      end_record();
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      ++i;
    } else {
      field += c;
      field_started = true;
      ++i;
    }
  }
  if (in_quotes) bad_csv(records.size() + 1, "unterminated quoted field");
  if (field_started || !record.empty()) end_record();
  return records;
}

struct Fastest {
  double score = 0.0;
  std::int64_t chips = 0;
};

std::map<std::string, Fastest> fastest_by_benchmark(std::span<const ResultRow> rows,
                                                    std::optional<std::int64_t> chips) {
  std::map<std::string, Fastest> out;
  for (const ResultRow& row : rows) {
    if (chips && row.chips != *chips) continue;
    auto [it, inserted] = out.try_emplace(row.benchmark, Fastest{row.score_ms, row.chips});
    if (!inserted && row.score_ms < it->second.score) it->second = {row.score_ms, row.chips};
  }
  return out;
}

void note_missing(const std::map<std::string, Fastest>& a, const std::map<std::string, Fastest>& b,
                  std::string_view qualifier, Comparison& out) {
  for (const auto& [name, f] : a) {
    if (!b.contains(name)) {
      out.notes.push_back(name + " omitted: no entry" + std::string(qualifier) + " in round b");
    }
  }
  for (const auto& [name, f] : b) {
    if (!a.contains(name)) {
      out.notes.push_back(name + " omitted: no entry" + std::string(qualifier) + " in round a");
    }
  }
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string format_number(double value) {
  // Plain notation in the usual range so 9000000 does not print as 9e+06.
  char buf[400];
  const double mag = std::fabs(value);
  const bool plain = mag == 0.0 || (mag >= 1e-4 && mag < 1e15);
  auto [ptr, ec] = plain ? std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed)
                         : std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string validate_weights(const ScaleWeights& weights) {
  bool any_positive = weights.w_proc > 0 || weights.w_mem_gb > 0;
  if (!(weights.w_proc >= 0) || !(weights.w_mem_gb >= 0)) return "weights must be >= 0";
  for (const auto& [type, w] : weights.w_accel) {
    if (!(w >= 0)) return "weight for accelerator '" + type + "' must be >= 0";
    any_positive = any_positive || w > 0;
  }
  if (!any_positive) return "at least one weight must be positive";
  return {};
}

ScaleWeights parse_scale_weights(const ConfigFile& file) {
  const ConfigSection* section = file.find("weights");
  if (section == nullptr) fail(ErrorCode::kInvalidConfig, "weights: missing [weights] section");
  ScaleWeights weights;
  for (const auto& [key, value] : section->entries) {
    if (key == "proc") {
      weights.w_proc = parse_double_strict(value, "weights proc");
    } else if (key == "mem_gb") {
      weights.w_mem_gb = parse_double_strict(value, "weights mem_gb");
    } else if (key.starts_with("accel.") && key.size() > 6) {
      weights.w_accel.insert_or_assign(key.substr(6), parse_double_strict(value, "weights " + key));
    } else {
      fail(ErrorCode::kInvalidConfig, "weights: unknown key '" + key + "'");
    }
  }
  if (std::string why = validate_weights(weights); !why.empty()) {
    fail(ErrorCode::kInvalidConfig, "weights: " + why);
  }
  return weights;
}

ScaleWeights load_scale_weights(const std::string& path) {
  return parse_scale_weights(load_config(path));
}

double cloud_scale(const SystemDesc& system, const ScaleWeights& weights) {
  double scale = weights.w_proc * static_cast<double>(system.host_processors) +
                 weights.w_mem_gb * system.host_memory_gb;
  for (const Accelerator& a : system.accelerators) {
    if (a.count == 0) continue;
    auto it = weights.w_accel.find(a.type);
    if (it == weights.w_accel.end()) {
      fail(ErrorCode::kUnknownAcceleratorType, "no scale weight for accelerator type '" + a.type + "'");
    }
    scale += it->second * static_cast<double>(a.count);
  }
  return scale;
}

std::int64_t chip_count(const SystemDesc& system) {
  std::int64_t accel = system.accelerator_count();
  return accel > 0 ? accel : system.host_processors;
}

std::string results_table(std::span<const ResultRow> rows) {
  std::string out(kResultsHeader);
  out += '\n';
  for (const ResultRow& r : rows) {
    out += csv_field(r.round.id) + ',' + csv_field(r.benchmark) + ',' + csv_field(r.submitter) +
           ',' + std::string(to_string(r.division)) + ',' + std::string(to_string(r.category)) +
           ',' + std::to_string(r.chips) + ',' + format_number(r.score_ms) + '\n';
  }
  return out;
}

std::vector<ResultRow> parse_results_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records = split_csv(text);
  if (records.empty()) bad_csv(1, "missing header");
  std::vector<std::string> header = split_list(kResultsHeader);
  if (records.front() != header) bad_csv(1, "header must be '" + std::string(kResultsHeader) + "'");

  std::vector<ResultRow> rows;
  for (std::size_t n = 1; n < records.size(); ++n) {
    const std::vector<std::string>& f = records[n];
    if (f.size() != header.size()) {
      bad_csv(n + 1, "expected " + std::to_string(header.size()) + " fields, got " +
                         std::to_string(f.size()));
    }
    ResultRow row;
    row.round = Round{f[0]};
    row.benchmark = f[1];
    row.submitter = f[2];
    std::optional<Division> d = parse_division(f[3]);
    if (!d) bad_csv(n + 1, "unknown division '" + f[3] + "'");
    row.division = *d;
    std::optional<Category> c = parse_category(f[4]);
    if (!c) bad_csv(n + 1, "unknown category '" + f[4] + "'");
    row.category = *c;
    if (row.round.id.empty() || row.benchmark.empty()) bad_csv(n + 1, "empty round or benchmark");

    auto [p1, e1] = std::from_chars(f[5].data(), f[5].data() + f[5].size(), row.chips);
    if (f[5].empty() || e1 != std::errc() || p1 != f[5].data() + f[5].size() || row.chips < 1) {
      bad_csv(n + 1, "chips must be a positive integer");
    }
    auto [p2, e2] = std::from_chars(f[6].data(), f[6].data() + f[6].size(), row.score_ms);
    if (f[6].empty() || e2 != std::errc() || p2 != f[6].data() + f[6].size() ||
        !std::isfinite(row.score_ms) || !(row.score_ms > 0)) {
      bad_csv(n + 1, "score_ms must be a positive number");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ResultRow> load_results_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open results file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_results_csv(text.str());
  } catch (const Error& ex) {
    fail(ex.code(), path + ": " + ex.what());
  }
}

Comparison speedup_report(std::span<const ResultRow> a, std::span<const ResultRow> b,
                          std::int64_t chips) {
  if (a.empty() || b.empty()) fail(ErrorCode::kInvalidArgument, "both result lists must be non-empty");
  std::map<std::string, Fastest> fa = fastest_by_benchmark(a, chips);
  std::map<std::string, Fastest> fb = fastest_by_benchmark(b, chips);

  Comparison out;
  for (const auto& [name, fast_a] : fa) {
    auto it = fb.find(name);
    if (it == fb.end()) continue;
    out.rows.push_back({name, fast_a.score, it->second.score, fast_a.score / it->second.score});
  }
  note_missing(fa, fb, " at " + std::to_string(chips) + " chips", out);
  return out;
}

Comparison chip_count_report(std::span<const ResultRow> a, std::span<const ResultRow> b) {
  if (a.empty() || b.empty()) fail(ErrorCode::kInvalidArgument, "both result lists must be non-empty");
  std::map<std::string, Fastest> fa = fastest_by_benchmark(a, std::nullopt);
  std::map<std::string, Fastest> fb = fastest_by_benchmark(b, std::nullopt);

  Comparison out;
  for (const auto& [name, fast_a] : fa) {
    auto it = fb.find(name);
    if (it == fb.end()) continue;
    double ca = static_cast<double>(fast_a.chips);
    double cb = static_cast<double>(it->second.chips);
    out.rows.push_back({name, ca, cb, cb / ca});
  }
  note_missing(fa, fb, "", out);
  return out;
}

std::string comparison_svg(const Comparison& comparison, std::string_view title,
                           std::string_view axis_label) {
  constexpr int kLabelWidth = 140;
  constexpr int kPlotWidth = 400;
  constexpr int kBarHeight = 22;
  constexpr int kGap = 8;
  constexpr int kTop = 40;

  double max_ratio = 1.0;
  for (const ComparisonRow& r : comparison.rows) max_ratio = std::max(max_ratio, r.ratio);
  int height = kTop + static_cast<int>(comparison.rows.size()) * (kBarHeight + kGap) + 40;
  int width = kLabelWidth + kPlotWidth + 80;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<text x=\"10\" y=\"20\" font-size=\"14\">" << xml_escape(title) << "</text>\n";
  int y = kTop;
  for (const ComparisonRow& r : comparison.rows) {
    int bar = static_cast<int>(std::lround(r.ratio / max_ratio * kPlotWidth));
    svg << "<text x=\"" << kLabelWidth - 6 << "\" y=\"" << y + kBarHeight - 6
        << "\" text-anchor=\"end\">" << xml_escape(r.benchmark) << "</text>\n";
    svg << "<rect class=\"bar\" x=\"" << kLabelWidth << "\" y=\"" << y << "\" width=\"" << bar << "\" height=\""
        << kBarHeight << "\" fill=\"#4e79a7\"/>\n";
    char label[32];
    std::snprintf(label, sizeof(label), "%.2fx", r.ratio);
    svg << "<text x=\"" << kLabelWidth + bar + 4 << "\" y=\"" << y + kBarHeight - 6 << "\">"
        << label << "</text>\n";
    y += kBarHeight + kGap;
  }
  svg << "<text x=\"" << kLabelWidth << "\" y=\"" << y + 20 << "\">" << xml_escape(axis_label)
      << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace ttbench
