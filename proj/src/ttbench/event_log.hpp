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

// Structured training-log line protocol.
//
// One event per physical line:
//
//   :::TTT <millis> <key> <payload-object>
//
// <millis> is a non-negative decimal integer without sign or leading zeros,
// <key> is one of the EventKey names, and <payload-object> is a flat
// single-line JSON object whose values are strings, numbers or booleans.
// Fields are separated by exactly one space. Lines that do not start with
// the prefix are ignored by parse_log so logs can be embedded in ordinary
// training output.

#ifndef TTBENCH_EVENT_LOG_HPP_
#define TTBENCH_EVENT_LOG_HPP_

#include <compare>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ttbench {

inline constexpr std::string_view kLinePrefix = ":::TTT ";

struct Timestamp {
  std::int64_t millis = 0;

  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

enum class EventKey {
  kRunStart,
  kRunStop,
  kDataTouch,
  kReformatStart,
  kReformatStop,
  kModelInitStart,
  kModelInitStop,
  kEpochStart,
  kEpochStop,
  kEvalStart,
  kEvalStop,
  kEvalResult,
  kHyperparameter,
  kBenchmarkDecl,
  kSystemDecl,
  kDivisionDecl,
  kCategoryDecl,
};

inline constexpr int kEventKeyCount = 17;

std::string_view to_string(EventKey key);
std::optional<EventKey> parse_event_key(std::string_view text);
bool is_declaration(EventKey key);

// Integers and floating-point numbers are kept apart so that `4096` and
// `4096.0` survive a round trip unchanged.
using PayloadValue = std::variant<bool, std::int64_t, double, std::string>;

// std::map keeps keys in byte-lexicographic order, which is the order the
// serializer emits.
using Payload = std::map<std::string, PayloadValue, std::less<>>;

struct LogEvent {
  Timestamp ts;
  EventKey key = EventKey::kRunStart;
  Payload payload;

  friend bool operator==(const LogEvent&, const LogEvent&) = default;
};

// Payload accessors. Numeric getters accept both integer and floating
// values; integer getters only accept integers.
const PayloadValue* find_field(const Payload& payload, std::string_view name);
std::optional<double> number_field(const Payload& payload, std::string_view name);
std::optional<std::int64_t> integer_field(const Payload& payload, std::string_view name);
std::optional<std::string> string_field(const Payload& payload, std::string_view name);

// Canonical text of a payload value as it appears on the wire.
std::string payload_value_text(const PayloadValue& value);

// A validated sequence of events for one training session. Construct with
// RunLog::from_events (or parse_log); the invariants hold for every value.
class RunLog {
 public:
  RunLog() = default;

  // Throws Error(kStructure) naming the first violated invariant.
  static RunLog from_events(std::vector<LogEvent> events);

  const std::vector<LogEvent>& events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }

  // First event with the given key, if any.
  const LogEvent* find_first(EventKey key) const;

  friend bool operator==(const RunLog&, const RunLog&) = default;

 private:
  explicit RunLog(std::vector<LogEvent> events) : events_(std::move(events)) {}

  std::vector<LogEvent> events_;
};

// Throws Error(kMalformedLine).
LogEvent parse_line(std::string_view line);

// Throws Error(kMalformedLine) for a bad prefixed line (message carries the
// 1-based line number) and Error(kStructure) for invariant violations.
RunLog parse_log(std::istream& in);
RunLog parse_log_text(std::string_view text);
RunLog load_log_file(const std::string& path);

std::string serialize_event(const LogEvent& event);

// One serialized line per event, each terminated by '\n'.
std::string serialize_log(const RunLog& log);

// Checks the per-key payload requirements. Returns an empty string when
// the payload is valid, otherwise a description of the problem.
std::string validate_payload(EventKey key, const Payload& payload);

}  // namespace ttbench

#endif  // TTBENCH_EVENT_LOG_HPP_
