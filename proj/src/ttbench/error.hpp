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

#ifndef TTBENCH_ERROR_HPP_
#define TTBENCH_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace ttbench {

// Every failure the core can raise. The numeric values are mirrored by
// ttb_status in the C API, so append only.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kIo = 2,
  kMalformedLine = 3,
  kStructure = 4,
  kMalformedLog = 5,
  kUnknownBenchmark = 6,
  kTargetNotReached = 7,
  kMissingDataTouch = 8,
  kWrongRunCount = 9,
  kNonPositiveDuration = 10,
  kTooFewRuns = 11,
  kBenchmarkMismatch = 12,
  kUnknownAcceleratorType = 13,
  kInvalidConfig = 14,
  kShapeMismatch = 15,
  kInvalidObjective = 16,
  kMalformedCsv = 17,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace ttbench

#endif  // TTBENCH_ERROR_HPP_
