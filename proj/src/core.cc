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

#include "rlhf_game/core.h"

#include <string>

#include "rlhf_game/errors.h"

namespace rlhf_game {

void GameConfig::Validate() const {
  if (initial.size() != space.size()) {
    Fail(ErrorCode::kDimensionMismatch,
         "initial policy has " + std::to_string(initial.size()) +
             " entries for " + std::to_string(space.size()) + " outcomes");
  }
  if (w_bar < 1) Fail(ErrorCode::kInvalidArgument, "w_bar must be >= 1");
}

double Valuation(std::span<const double> policy, std::span<const double> rm) {
  if (policy.size() != rm.size()) {
    Fail(ErrorCode::kDimensionMismatch,
         "policy has " + std::to_string(policy.size()) +
             " entries, reward model " + std::to_string(rm.size()));
  }
  double out = 0.0;
  for (size_t x = 0; x < policy.size(); ++x) out += policy[x] * rm[x];
  return out;
}

double Valuation(const Policy& policy, const RewardModel& rm) {
  return Valuation(policy.probs(), rm.values());
}

double Asw(std::span<const double> policy, std::span<const GroupType> reports,
           const GameConfig& cfg) {
  double welfare = 0.0;
  for (const GroupType& g : reports) {
    welfare += g.w * Valuation(policy, g.rm.values());
  }
  return welfare - Divergence(cfg.divergence, policy, cfg.initial.probs());
}

double Asw(const Policy& policy, std::span<const GroupType> reports,
           const GameConfig& cfg) {
  return Asw(policy.probs(), reports, cfg);
}

double AswMinusI(const Policy& policy, std::span<const GroupType> reports,
                 int i, const GameConfig& cfg) {
  if (i < 0 || i >= static_cast<int>(reports.size())) {
    Fail(ErrorCode::kIndexOutOfRange, "group index " + std::to_string(i));
  }
  return Asw(policy, reports, cfg) - reports[i].w * Valuation(policy, reports[i].rm);
}

void ValidateReports(const GameConfig& cfg,
                     std::span<const GroupType> reports) {
  for (size_t i = 0; i < reports.size(); ++i) {
    if (reports[i].rm.size() != cfg.size()) {
      Fail(ErrorCode::kDimensionMismatch,
           "group " + std::to_string(i) + " reward model has " +
               std::to_string(reports[i].rm.size()) + " entries");
    }
    if (reports[i].rm.mode() != cfg.mode) {
      Fail(ErrorCode::kInvalidArgument,
           "group " + std::to_string(i) +
               " reward model uses a different normalization mode");
    }
    if (reports[i].w < 1 || reports[i].w > cfg.w_bar) {
      Fail(ErrorCode::kInvalidArgument,
           "group " + std::to_string(i) + " size " +
               std::to_string(reports[i].w) + " outside [1, w_bar]");
    }
  }
}

std::vector<GroupType> WithoutGroup(std::span<const GroupType> reports,
                                    int i) {
  std::vector<GroupType> out;
  out.reserve(reports.size());
  for (size_t j = 0; j < reports.size(); ++j) {
    if (static_cast<int>(j) != i) out.push_back(reports[j]);
  }
  return out;
}

std::vector<GroupType> WithReport(std::span<const GroupType> reports, int i,
                                  GroupType report) {
  std::vector<GroupType> out(reports.begin(), reports.end());
  out.at(i) = std::move(report);
  return out;
}

}  // namespace rlhf_game
