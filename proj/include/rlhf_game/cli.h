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

#ifndef RLHF_GAME_CLI_H_
#define RLHF_GAME_CLI_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "rlhf_game/mechanism.h"
#include "rlhf_game/serialization.h"
#include "rlhf_game/training.h"
#include "rlhf_game/verify.h"

namespace rlhf_game {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitConfigError = 2,
  kExitSolverError = 3,
};

struct CommandOptions {
  std::string command;  // solve | sweep | synth | verify
  std::string config;   // path to the JSON config; required
  std::optional<uint64_t> seed;
  std::string out;      // empty writes to the default stream
  std::optional<int> trials;
  std::string suite;    // verify only; overrides the config
  int workers = 0;      // 0 keeps the OpenMP default
};

// Runs one subcommand. Results go to options.out (or `out` when empty);
// diagnostics go to `err`. Returns an ExitCode.
int RunCommand(const CommandOptions& options, std::ostream& out,
               std::ostream& err);

// Config fragments shared with tests. All raise kConfigParse.
TrainingRule TrainingRuleFromJson(const Json& solver, const Json& candidates);
PaymentRule PaymentRuleFromJson(const Json& payment, const Json& candidates);
CandidateSet CandidateSetFromJson(const Json& j);
InstanceSampler InstanceSamplerFromJson(const Json& j);

}  // namespace rlhf_game

#endif  // RLHF_GAME_CLI_H_
