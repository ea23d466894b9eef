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

#ifndef RLHF_GAME_ERRORS_H_
#define RLHF_GAME_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace rlhf_game {

enum class ErrorCode {
  kNegativeEntry,
  kNormalizationViolated,
  kDimensionMismatch,
  kIndexOutOfRange,
  kInvalidArgument,
  kNonPositiveArgument,
  kOutOfRange,
  kUnsupported,
  kDegenerateSolution,
  kBracketFailure,
  kDimensionTooLarge,
  kEmptyCandidateSet,
  kEpsilonTooLarge,
  kDegeneratePreference,
  kAllZeroAfterClamp,
  kConfigParse,
  kUnknownSuite,
};

std::string_view ErrorCodeName(ErrorCode code);

// Solver failures map to a distinct CLI exit code from input errors.
bool IsSolverError(ErrorCode code);

class GameError : public std::runtime_error {
 public:
  GameError(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& message);

}  // namespace rlhf_game

#endif  // RLHF_GAME_ERRORS_H_
