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

#include "ttbench/timing.hpp"

#include <algorithm>
#include <vector>

#include "ttbench/error.hpp"

namespace ttbench {
namespace {

struct Interval {
  std::int64_t begin;
  std::int64_t end;
};

std::vector<Interval> intervals_of(const RunLog& log, EventKey start, EventKey stop) {
  std::vector<Interval> out;
  std::int64_t open_at = -1;
  for (const LogEvent& e : log.events()) {
    if (e.key == start) {
      open_at = e.ts.millis;
    } else if (e.key == stop && open_at >= 0) {
      out.push_back({open_at, e.ts.millis});
      open_at = -1;
    }
  }
  return out;
}

std::int64_t overlap(Interval a, Interval b) {
  return std::max<std::int64_t>(0, std::min(a.end, b.end) - std::max(a.begin, b.begin));
}

std::vector<Interval> clip(const std::vector<Interval>& in, Interval window) {
  std::vector<Interval> out;
  for (Interval iv : in) {
    Interval c{std::max(iv.begin, window.begin), std::min(iv.end, window.end)};
    if (c.end > c.begin) out.push_back(c);
  }
  return out;
}

}  // namespace

std::optional<QualityValue> eval_quality(const LogEvent& eval, const BenchmarkSpec& spec) {
  if (spec.secondary_threshold) {
    std::optional<double> box = number_field(eval.payload, "box_value");
    std::optional<double> mask = number_field(eval.payload, "mask_value");
    if (!box || !mask) return std::nullopt;
    return QualityValue{*box, *mask};
  }
  std::optional<double> value = number_field(eval.payload, "value");
  if (!value) return std::nullopt;
  return QualityValue{*value, std::nullopt};
}

std::size_t first_qualifying_eval(const RunLog& log, const BenchmarkSpec& spec) {
  const std::vector<LogEvent>& events = log.events();
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].key != EventKey::kEvalResult) continue;
    std::optional<QualityValue> q = eval_quality(events[i], spec);
    if (q && target_reached(spec, *q)) return i;
  }
  fail(ErrorCode::kTargetNotReached,
       "target not reached: no eval_result meets the " + spec.name + " " + spec.round.id +
           " quality target");
}

TimedResult compute_time_to_train(const RunLog& log, const BenchmarkSpec& spec) {
  const LogEvent* touch = log.find_first(EventKey::kDataTouch);
  if (touch == nullptr) fail(ErrorCode::kMissingDataTouch, "log has no data_touch event");

  const LogEvent& stop = log.events()[first_qualifying_eval(log, spec)];
  if (stop.ts < touch->ts) {
    fail(ErrorCode::kMalformedLog, "qualifying eval_result precedes the first data_touch");
  }

  Interval window{touch->ts.millis, stop.ts.millis};
  std::vector<Interval> reformats =
      clip(intervals_of(log, EventKey::kReformatStart, EventKey::kReformatStop), window);
  std::vector<Interval> inits =
      clip(intervals_of(log, EventKey::kModelInitStart, EventKey::kModelInitStop), window);

  TimedResult result;
  result.start_ts = touch->ts;
  result.stop_ts = stop.ts;
  result.quality_epoch = integer_field(stop.payload, "epoch").value_or(0);

  for (Interval r : reformats) result.reformat_excluded_ms += r.end - r.begin;

  // Time already excluded as reformatting is not charged to the
  // model-initialization allowance a second time.
  std::int64_t init_ms = 0;
  for (Interval m : inits) {
    std::int64_t len = m.end - m.begin;
    for (Interval r : reformats) len -= overlap(m, r);
    init_ms += len;
  }
  result.model_init_excluded_ms = std::min(init_ms, kModelInitCapMs);

  result.excluded_ms = result.model_init_excluded_ms + result.reformat_excluded_ms;
  result.ttt_ms = (window.end - window.begin) - result.excluded_ms;
  return result;
}

std::int64_t first_quality_epoch(const RunLog& log, const BenchmarkSpec& spec) {
  const LogEvent& eval = log.events()[first_qualifying_eval(log, spec)];
  return integer_field(eval.payload, "epoch").value_or(0);
}

}  // namespace ttbench
