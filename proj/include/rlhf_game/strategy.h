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

#ifndef RLHF_GAME_STRATEGY_H_
#define RLHF_GAME_STRATEGY_H_

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rlhf_game/core.h"
#include "rlhf_game/mechanism.h"
#include "rlhf_game/training.h"

namespace rlhf_game {

struct Truthful {};
// Moves epsilon of reward toward the favourite outcome. With cap_at_bound
// the shift is reduced to the largest one the reward model admits instead
// of failing.
struct EpsilonShift {
  double epsilon = 0.0;
  bool cap_at_bound = false;
};
struct SizeScale {
  double alpha = 1.0;
};
struct Blend {
  double beta = 1.0;
};
struct Explicit {
  GroupType report;
};

using Strategy = std::variant<Truthful, EpsilonShift, SizeScale, Blend, Explicit>;

std::string StrategyName(const Strategy& strategy);

// Largest admissible shift: min(1 - rm(argmax), rm(argmin)) under SumToOne,
// rm(argmin) under MaxToOne. Throws kDegeneratePreference for constant rm.
double EpsilonShiftBound(const RewardModel& rm);

// SumToOne: +eps at argmax, -eps at argmin. MaxToOne: -eps at argmin only.
// Ties go to the lowest index. Requires 0 < eps < EpsilonShiftBound(rm).
RewardModel EpsilonShiftReward(const RewardModel& rm, double epsilon);
// Same construction with eps replaced by min(eps, EpsilonShiftBound(rm)).
RewardModel CappedEpsilonShiftReward(const RewardModel& rm, double epsilon);

// beta rm_i + (1 - beta) rm_{-i} where rm_{-i} is the size-weighted mean of
// the opponents. Negative entries clamp to 0, then the vector is rescaled
// by its sum or max. beta == 1 returns rm_i unchanged.
RewardModel BlendReward(const RewardModel& rm_i,
                        std::span<const GroupType> opponents, double beta,
                        NormMode mode);

// w' = clamp(floor(alpha w + 1/2), 1, w_bar).
GroupType SizeScaleType(const GroupType& type, double alpha, int w_bar);

// The report group i submits under `strategy`.
GroupType ApplyStrategy(const Strategy& strategy, const GroupType& truth,
                        std::span<const GroupType> opponents,
                        const GameConfig& cfg);

// c(x) = initial(x) / f''(pi(x) / initial(x)).
std::vector<double> CurvatureWeights(const GameConfig& cfg, const Policy& pi);

// t(z) = sum_x (rm_i(z) - rm_i(x)) c(x) at pi = psi(reports). Under zero
// payment, raising rm_i(z) alone moves v_i at rate w_i c(z) t(z) / sum c.
std::vector<double> TFunction(const GameConfig& cfg,
                              std::span<const GroupType> reports, int i,
                              const TrainingRule& rule = TrainingRule::Exact());

// A normalized report that moves rm_i(x) by delta in the direction of
// t(x), with the compensating coordinate the normalization requires:
//   MaxToOne  rm(x) += delta sign(t(x)); needs 0 < rm(x) < 1.
//   SumToOne  t(x) < 0: rm(x) -= delta, the first argmax gains delta.
//             t(x) > 0: rm(x) += delta, x2 loses delta, where x2 has
//             0 < rm(x2) <= rm(x) and the smallest c(x2) < c(x).
// Returns nullopt when no such deviation exists.
std::optional<RewardModel> PrescribedDeviation(const GameConfig& cfg,
                                               const RewardModel& rm,
                                               const Policy& pi, int x,
                                               double t_x, double delta);

// Finite search space for FindBestResponse. Candidates are visited in the
// order truthful, alphas, betas, epsilons, then every (coordinate, step)
// pair; ties keep the earlier candidate.
struct SearchSpec {
  std::vector<double> alphas;
  std::vector<double> betas;
  std::vector<double> epsilons;
  std::vector<double> coordinate_steps;

  static SearchSpec Default();
};

struct BestResponse {
  Strategy strategy;
  GroupType report;
  double gain = 0.0;  // utility over truthful; 0 when truthful is best
};

// `reports` holds every group's current report; entry i is replaced by each
// candidate. Candidates are evaluated in parallel and reduced in order.
BestResponse FindBestResponse(const GameConfig& cfg,
                              std::span<const GroupType> reports, int i,
                              const GroupType& true_type,
                              const PaymentRule& payment,
                              const TrainingRule& training,
                              const SearchSpec& search, int workers = 0);

struct MisreportDelta {
  double valuation = 0.0;
  double utility = 0.0;
};

// Group i's (deviated - truthful) valuation and utility with the other
// reports fixed. Entry i of `reports` is ignored.
MisreportDelta MisreportGain(const GameConfig& cfg,
                             std::span<const GroupType> reports,
                             std::span<const GroupType> true_types, int i,
                             const Strategy& strategy,
                             const PaymentRule& payment,
                             const TrainingRule& training);

}  // namespace rlhf_game

#endif  // RLHF_GAME_STRATEGY_H_
