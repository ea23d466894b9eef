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

#ifndef RLHF_GAME_EXPERIMENTS_H_
#define RLHF_GAME_EXPERIMENTS_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "rlhf_game/core.h"
#include "rlhf_game/mechanism.h"
#include "rlhf_game/training.h"

namespace rlhf_game {

struct SweepSpec {
  int group = 0;  // the group that misreports
  std::vector<double> alphas = {0.2, 0.5, 1.0, 1.5, 2.0, 3.0};
  std::vector<double> betas = {0.5, 0.8, 1.0, 1.5, 2.0, 3.0};
};

struct SweepRow {
  std::string parameter;  // "alpha" or "beta"
  double value = 0.0;
  int group = 0;
  double valuation = 0.0;
  double payment = 0.0;
  double utility = 0.0;
  double social_welfare = 0.0;  // ASW of the final policy under true types
};

// Group spec.group reports SizeScale(alpha) for every alpha, then
// Blend(beta) for every beta, with the others truthful. One row per
// (parameter, value, group) in that order.
std::vector<SweepRow> RunSweep(const GameConfig& cfg,
                               const std::vector<GroupType>& types,
                               const PaymentRule& payment,
                               const TrainingRule& training,
                               const SweepSpec& spec, int workers = 0);

void WriteSweepCsv(std::ostream& out, const std::vector<SweepRow>& rows);

// Synthetic game: `groups` groups over `outcomes` outcomes, rm drawn from
// U[0,1]^K and normalized under `mode`, sizes uniform on {1..w_max},
// uniform initial policy, KL regularization. Group 0 applies the epsilon
// shift with the others truthful, under the affine-maximizer payment.
struct SynthSpec {
  int groups = 5;
  int outcomes = 10;
  int w_max = 10;
  double lambda = 1.0;
  NormMode mode = NormMode::kSumToOne;
  std::vector<double> epsilons = {0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1};
  int samples = 10000;
  // Reduce epsilon to the largest shift the sampled rm admits instead of
  // rejecting the sample.
  bool cap = true;
};

struct SynthRow {
  double epsilon = 0.0;
  double valuation_mean = 0.0;
  double valuation_std = 0.0;
  double valuation_se = 0.0;
  double utility_mean = 0.0;
  double utility_std = 0.0;
  double utility_se = 0.0;
  int samples = 0;
};

std::vector<SynthRow> RunSynth(const SynthSpec& spec, uint64_t seed,
                               int workers = 0);

void WriteSynthCsv(std::ostream& out, const std::vector<SynthRow>& rows);

}  // namespace rlhf_game

#endif  // RLHF_GAME_EXPERIMENTS_H_
