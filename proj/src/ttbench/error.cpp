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

#include "ttbench/error.hpp"

namespace ttbench {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kStructure: return "StructureError";
    case ErrorCode::kMalformedLog: return "MalformedLog";
    case ErrorCode::kUnknownBenchmark: return "UnknownBenchmark";
    case ErrorCode::kTargetNotReached: return "TargetNotReached";
    case ErrorCode::kMissingDataTouch: return "MissingDataTouch";
    case ErrorCode::kWrongRunCount: return "WrongRunCount";
    case ErrorCode::kNonPositiveDuration: return "NonPositiveDuration";
    case ErrorCode::kTooFewRuns: return "TooFewRuns";
    case ErrorCode::kBenchmarkMismatch: return "BenchmarkMismatch";
    case ErrorCode::kUnknownAcceleratorType: return "UnknownAcceleratorType";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kInvalidObjective: return "InvalidObjective";
    case ErrorCode::kMalformedCsv: return "MalformedCsv";
  }
  return "Unknown";
}

}  // namespace ttbench
