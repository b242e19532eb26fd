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

#include "ttbench/event_log.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "ttbench/error.hpp"

namespace ttbench {
namespace {

constexpr std::array<std::string_view, kEventKeyCount> kKeyNames = {
    "run_start",       "run_stop",        "data_touch",     "reformat_start",
    "reformat_stop",   "model_init_start", "model_init_stop", "epoch_start",
    "epoch_stop",      "eval_start",      "eval_stop",      "eval_result",
    "hyperparameter",  "benchmark_decl",  "system_decl",    "division_decl",
    "category_decl",
};

using json = nlohmann::json;

// Builds a flat Payload directly from SAX callbacks. Rejects nesting,
// arrays, nulls, duplicate keys, non-finite floats and unsigned values that
// do not fit in int64.
class FlatPayloadSax : public nlohmann::json_sax<json> {
 public:
  explicit FlatPayloadSax(Payload& out) : out_(out) {}

  bool null() override { return reject("null values are not allowed"); }
  bool boolean(bool val) override { return put(val); }
  bool number_integer(number_integer_t val) override {
    return put(static_cast<std::int64_t>(val));
  }
  bool number_unsigned(number_unsigned_t val) override {
    if (val > static_cast<number_unsigned_t>(std::numeric_limits<std::int64_t>::max())) {
      return reject("integer out of range");
    }
    return put(static_cast<std::int64_t>(val));
  }
  bool number_float(number_float_t val, const string_t&) override {
    if (!std::isfinite(val)) return reject("number out of range");
    return put(static_cast<double>(val));
  }
  bool string(string_t& val) override { return put(std::move(val)); }
  bool binary(binary_t&) override { return reject("binary values are not allowed"); }

  bool start_object(std::size_t) override {
    if (depth_ != 0) return reject("nested objects are not allowed");
    ++depth_;
    return true;
  }
  bool key(string_t& val) override {
    if (out_.contains(val)) return reject("duplicate key '" + val + "'");
    pending_key_ = std::move(val);
    return true;
  }
  bool end_object() override {
    --depth_;
    return true;
  }
  bool start_array(std::size_t) override { return reject("arrays are not allowed"); }
  bool end_array() override { return false; }

  bool parse_error(std::size_t, const std::string&,
                   const nlohmann::detail::exception& ex) override {
    return reject(ex.what());
  }

  const std::string& problem() const { return problem_; }

 private:
  bool put(PayloadValue value) {
    if (depth_ != 1) return reject("payload must be a JSON object");
    out_.emplace(std::move(pending_key_), std::move(value));
    pending_key_.clear();
    return true;
  }
  bool reject(std::string why) {
    if (problem_.empty()) problem_ = std::move(why);
    return false;
  }

  Payload& out_;
  int depth_ = 0;
  std::string pending_key_;
  std::string problem_;
};

[[noreturn]] void malformed(std::string_view why) {
  fail(ErrorCode::kMalformedLine, "malformed line: " + std::string(why));
}

std::int64_t parse_millis(std::string_view text) {
  if (text.empty()) malformed("missing timestamp");
  if (text.size() > 1 && text.front() == '0') malformed("timestamp has leading zeros");
  for (char c : text) {
    if (c < '0' || c > '9') malformed("timestamp is not a non-negative integer");
  }
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    malformed("timestamp out of range");
  }
  return value;
}

Payload parse_payload(std::string_view text) {
  if (text.empty() || text.front() != '{' || text.back() != '}') {
    malformed("payload must be a single JSON object");
  }
  Payload payload;
  FlatPayloadSax sax(payload);
  bool ok = json::sax_parse(text.begin(), text.end(), &sax, json::input_format_t::json, true);
  if (!ok) malformed("invalid payload: " + sax.problem());
  return payload;
}

bool is_finite_number(const PayloadValue* v) {
  if (v == nullptr) return false;
  if (std::holds_alternative<std::int64_t>(*v)) return true;
  if (const double* d = std::get_if<double>(v)) return std::isfinite(*d);
  return false;
}

// Kinds that must appear as non-overlapping start/stop pairs.
struct IntervalKind {
  EventKey start;
  EventKey stop;
  std::string_view name;
};

constexpr std::array<IntervalKind, 4> kIntervalKinds = {{
    {EventKey::kReformatStart, EventKey::kReformatStop, "reformat"},
    {EventKey::kModelInitStart, EventKey::kModelInitStop, "model_init"},
    {EventKey::kEvalStart, EventKey::kEvalStop, "eval"},
    {EventKey::kEpochStart, EventKey::kEpochStop, "epoch"},
}};

[[noreturn]] void structure_error(std::size_t index, const std::string& why) {
  fail(ErrorCode::kStructure,
       "structure error at event " + std::to_string(index) + ": " + why);
}

}  // namespace

std::string_view to_string(EventKey key) {
  return kKeyNames[static_cast<std::size_t>(key)];
}

std::optional<EventKey> parse_event_key(std::string_view text) {
  for (std::size_t i = 0; i < kKeyNames.size(); ++i) {
    if (kKeyNames[i] == text) return static_cast<EventKey>(i);
  }
  return std::nullopt;
}

bool is_declaration(EventKey key) {
  switch (key) {
    case EventKey::kBenchmarkDecl:
    case EventKey::kSystemDecl:
    case EventKey::kDivisionDecl:
    case EventKey::kCategoryDecl:
      return true;
    default:
      return false;
  }
}

const PayloadValue* find_field(const Payload& payload, std::string_view name) {
  auto it = payload.find(name);
  return it == payload.end() ? nullptr : &it->second;
}

std::optional<double> number_field(const Payload& payload, std::string_view name) {
  const PayloadValue* v = find_field(payload, name);
  if (v == nullptr) return std::nullopt;
  if (const auto* i = std::get_if<std::int64_t>(v)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(v)) return *d;
  return std::nullopt;
}

std::optional<std::int64_t> integer_field(const Payload& payload, std::string_view name) {
  const PayloadValue* v = find_field(payload, name);
  if (v == nullptr) return std::nullopt;
  if (const auto* i = std::get_if<std::int64_t>(v)) return *i;
  return std::nullopt;
}

std::optional<std::string> string_field(const Payload& payload, std::string_view name) {
  const PayloadValue* v = find_field(payload, name);
  if (v == nullptr) return std::nullopt;
  if (const auto* s = std::get_if<std::string>(v)) return *s;
  return std::nullopt;
}

std::string payload_value_text(const PayloadValue& value) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else {
          // nlohmann emits the shortest representation that reads back to
          // the same double, with ".0" on integral values.
          try {
            return json(v).dump();
          } catch (const json::exception& ex) {
            fail(ErrorCode::kInvalidArgument, std::string("unserializable value: ") + ex.what());
          }
        }
      },
      value);
}

std::string validate_payload(EventKey key, const Payload& payload) {
  for (const auto& [name, value] : payload) {
    if (const double* d = std::get_if<double>(&value); d != nullptr && !std::isfinite(*d)) {
      return "field '" + name + "' is not finite";
    }
  }
  switch (key) {
    case EventKey::kEvalResult: {
      std::optional<std::int64_t> epoch = integer_field(payload, "epoch");
      if (!epoch || *epoch < 0) return "eval_result needs an integer 'epoch' >= 0";
      bool has_value = find_field(payload, "value") != nullptr;
      bool has_pair = find_field(payload, "box_value") != nullptr ||
                      find_field(payload, "mask_value") != nullptr;
      if (!has_value && !has_pair) return "eval_result needs a numeric 'value'";
      if (has_value && !is_finite_number(find_field(payload, "value"))) {
        return "eval_result 'value' must be a finite number";
      }
      if (has_pair && (!is_finite_number(find_field(payload, "box_value")) ||
                       !is_finite_number(find_field(payload, "mask_value")))) {
        return "eval_result needs both numeric 'box_value' and 'mask_value'";
      }
      return {};
    }
    case EventKey::kHyperparameter:
      if (!string_field(payload, "name")) return "hyperparameter needs a string 'name'";
      if (find_field(payload, "value") == nullptr) return "hyperparameter needs a 'value'";
      return {};
    case EventKey::kRunStop: {
      std::optional<std::string> status = string_field(payload, "status");
      if (!status || (*status != "success" && *status != "aborted")) {
        return "run_stop needs 'status' of success or aborted";
      }
      return {};
    }
    case EventKey::kBenchmarkDecl:
      if (!string_field(payload, "name")) return "benchmark_decl needs a string 'name'";
      return {};
    case EventKey::kDivisionDecl:
      if (!string_field(payload, "division")) return "division_decl needs a string 'division'";
      return {};
    case EventKey::kCategoryDecl:
      if (!string_field(payload, "category")) return "category_decl needs a string 'category'";
      return {};
    default:
      return {};
  }
}

LogEvent parse_line(std::string_view line) {
  if (!line.starts_with(kLinePrefix)) malformed("missing ':::TTT ' prefix");
  std::string_view rest = line.substr(kLinePrefix.size());

  std::size_t sp1 = rest.find(' ');
  if (sp1 == std::string_view::npos) malformed("expected '<millis> <key> <payload>'");
  std::size_t sp2 = rest.find(' ', sp1 + 1);
  if (sp2 == std::string_view::npos) malformed("expected '<millis> <key> <payload>'");

  LogEvent event;
  event.ts.millis = parse_millis(rest.substr(0, sp1));

  std::string_view key_text = rest.substr(sp1 + 1, sp2 - sp1 - 1);
  std::optional<EventKey> key = parse_event_key(key_text);
  if (!key) malformed("unknown key '" + std::string(key_text) + "'");
  event.key = *key;

  event.payload = parse_payload(rest.substr(sp2 + 1));
  if (std::string why = validate_payload(event.key, event.payload); !why.empty()) {
    malformed(why);
  }
  return event;
}

std::string serialize_event(const LogEvent& event) {
  std::string out(kLinePrefix);
  out += std::to_string(event.ts.millis);
  out += ' ';
  out += to_string(event.key);
  out += " {";
  bool first = true;
  for (const auto& [name, value] : event.payload) {
    if (!first) out += ',';
    first = false;
    try {
      out += json(name).dump();
      out += ':';
      if (const auto* s = std::get_if<std::string>(&value)) {
        out += json(*s).dump();
      } else {
        out += payload_value_text(value);
      }
    } catch (const json::exception& ex) {
      fail(ErrorCode::kInvalidArgument, std::string("unserializable payload: ") + ex.what());
    }
  }
  out += '}';
  return out;
}

std::string serialize_log(const RunLog& log) {
  std::string out;
  for (const LogEvent& e : log.events()) {
    out += serialize_event(e);
    out += '\n';
  }
  return out;
}

const LogEvent* RunLog::find_first(EventKey key) const {
  for (const LogEvent& e : events_) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

RunLog RunLog::from_events(std::vector<LogEvent> events) {
  bool seen_start = false;
  bool seen_stop = false;
  std::array<bool, kIntervalKinds.size()> open{};

  for (std::size_t i = 0; i < events.size(); ++i) {
    const LogEvent& e = events[i];
    if (e.ts.millis < 0) structure_error(i, "negative timestamp");
    if (i > 0 && e.ts < events[i - 1].ts) structure_error(i, "non-monotonic timestamps");
    if (std::string why = validate_payload(e.key, e.payload); !why.empty()) {
      structure_error(i, why);
    }

    if (e.key == EventKey::kRunStart) {
      if (seen_start) structure_error(i, "duplicate run_start");
      seen_start = true;
      continue;
    }
    if (is_declaration(e.key)) continue;
    if (!seen_start) {
      structure_error(i, std::string(to_string(e.key)) + " before run_start");
    }
    if (e.key == EventKey::kRunStop) {
      if (seen_stop) structure_error(i, "duplicate run_stop");
      seen_stop = true;
      continue;
    }
    for (std::size_t k = 0; k < kIntervalKinds.size(); ++k) {
      const IntervalKind& kind = kIntervalKinds[k];
      if (e.key == kind.start) {
        if (open[k]) structure_error(i, "overlapping " + std::string(kind.name) + " intervals");
        open[k] = true;
      } else if (e.key == kind.stop) {
        if (!open[k]) structure_error(i, "unmatched " + std::string(kind.name) + "_stop");
        open[k] = false;
      }
    }
  }
  if (!seen_start) structure_error(events.size(), "missing run_start");
  for (std::size_t k = 0; k < kIntervalKinds.size(); ++k) {
    if (open[k]) {
      structure_error(events.size(),
                      "unmatched interval: " + std::string(kIntervalKinds[k].name) + "_start");
    }
  }
  return RunLog(std::move(events));
}

RunLog parse_log(std::istream& in) {
  std::vector<LogEvent> events;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!std::string_view(line).starts_with(kLinePrefix)) continue;
    try {
      events.push_back(parse_line(line));
    } catch (const Error& ex) {
      fail(ex.code(), "line " + std::to_string(line_no) + ": " + ex.what());
    }
  }
  return RunLog::from_events(std::move(events));
}

RunLog parse_log_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_log(in);
}

RunLog load_log_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open log file '" + path + "'");
  try {
    return parse_log(in);
  } catch (const Error& ex) {
    fail(ex.code(), path + ": " + ex.what());
  }
}

}  // namespace ttbench
