// Copyright 2026 The rlhf-game Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rlhf_game/errors.h"

namespace rlhf_game {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNegativeEntry: return "NegativeEntry";
    case ErrorCode::kNormalizationViolated: return "NormalizationViolated";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNonPositiveArgument: return "NonPositiveArgument";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kUnsupported: return "Unsupported";
    case ErrorCode::kDegenerateSolution: return "DegenerateSolution";
    case ErrorCode::kBracketFailure: return "BracketFailure";
    case ErrorCode::kDimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::kEmptyCandidateSet: return "EmptyCandidateSet";
    case ErrorCode::kEpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorCode::kDegeneratePreference: return "DegeneratePreference";
    case ErrorCode::kAllZeroAfterClamp: return "AllZeroAfterClamp";
    case ErrorCode::kConfigParse: return "ConfigParse";
    case ErrorCode::kUnknownSuite: return "UnknownSuite";
  }
  return "Unknown";
}

bool IsSolverError(ErrorCode code) {
  return code == ErrorCode::kDegenerateSolution ||
         code == ErrorCode::kBracketFailure ||
         code == ErrorCode::kDimensionTooLarge ||
         code == ErrorCode::kEmptyCandidateSet ||
         code == ErrorCode::kUnsupported;
}

GameError::GameError(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

void Fail(ErrorCode code, const std::string& message) {
  throw GameError(code, message);
}

}  // namespace rlhf_game
