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

#ifndef RLHF_GAME_CORE_H_
#define RLHF_GAME_CORE_H_

#include <optional>
#include <span>
#include <vector>

#include "rlhf_game/divergence.h"
#include "rlhf_game/types.h"

namespace rlhf_game {

// How exact ASW ties between candidate policies are resolved.
//   kValuationLex: larger (v_1, ..., v_n) lexicographically wins, then the
//                  lower index (or earlier grid point).
//   kIndexOnly:    lower index wins.
enum class TieBreak { kValuationLex, kIndexOnly };

struct GameConfig {
  OutcomeSpace space;
  Policy initial;
  DivergenceSpec divergence;
  NormMode mode = NormMode::kSumToOne;
  int w_bar = 1;
  TieBreak tie_break = TieBreak::kValuationLex;

  int size() const { return space.size(); }
  // Dimensions agree and w_bar >= 1. Policy already guarantees positivity.
  void Validate() const;
};

struct GameOutcome {
  Policy final_policy;
  std::vector<double> valuations;  // true w_i * v_i(final; true rm_i)
  std::vector<double> payments;
  std::vector<double> utilities;
  double asw = 0.0;                // against the reports
  std::vector<double> asw_minus;   // against the reports
  std::optional<double> mu;        // KKT multiplier when an exact solver ran
};

double Valuation(std::span<const double> policy, std::span<const double> rm);
double Valuation(const Policy& policy, const RewardModel& rm);

// sum_i w_i v_i(p) - D_f(p || initial).
double Asw(std::span<const double> policy, std::span<const GroupType> reports,
           const GameConfig& cfg);
double Asw(const Policy& policy, std::span<const GroupType> reports,
           const GameConfig& cfg);

// Asw() with group i's valuation term removed.
double AswMinusI(const Policy& policy, std::span<const GroupType> reports,
                 int i, const GameConfig& cfg);

// Reports must match the outcome space and have 1 <= w <= w_bar.
void ValidateReports(const GameConfig& cfg, std::span<const GroupType> reports);

// The reports with entry i removed.
std::vector<GroupType> WithoutGroup(std::span<const GroupType> reports, int i);
// The reports with entry i replaced.
std::vector<GroupType> WithReport(std::span<const GroupType> reports, int i,
                                  GroupType report);

}  // namespace rlhf_game

#endif  // RLHF_GAME_CORE_H_
