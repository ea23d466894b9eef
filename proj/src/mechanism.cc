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

#include "rlhf_game/mechanism.h"

#include <string>
#include <utility>

#include "rlhf_game/errors.h"

namespace rlhf_game {
namespace {

void CheckIndex(std::span<const GroupType> reports, int i) {
  if (i < 0 || i >= static_cast<int>(reports.size())) {
    Fail(ErrorCode::kIndexOutOfRange, "group index " + std::to_string(i));
  }
}

// Payment of group i given the deployed policy. ASW_{-i} is evaluated on
// the other groups' reports directly, which equals AswMinusI() but keeps
// group i's report out of the rounding.
double PaymentFor(const GameConfig& cfg, std::span<const GroupType> reports,
                  int i, const Policy& final_policy, const PaymentRule& payment,
                  const TrainingRule& training) {
  switch (payment.kind()) {
    case PaymentRule::Kind::kZero:
      return 0.0;
    case PaymentRule::Kind::kAffineMaximizer: {
      const std::vector<GroupType> others = WithoutGroup(reports, i);
      const Policy without = training.Train(cfg, others).policy;
      return Asw(without, others, cfg) - Asw(final_policy, others, cfg) +
             payment.surcharge();
    }
    case PaymentRule::Kind::kRestrictedH1: {
      const std::vector<GroupType> others = WithoutGroup(reports, i);
      const Policy without =
          SolveRestricted(cfg, others, *payment.candidates()).policy;
      return Asw(without, others, cfg) - Asw(final_policy, others, cfg);
    }
    case PaymentRule::Kind::kRestrictedH2: {
      const std::vector<GroupType> others = WithoutGroup(reports, i);
      const CandidateSet list = payment.builder()(cfg, i, others);
      const Policy without = SolveRestricted(cfg, others, list).policy;
      return Asw(without, others, cfg) - Asw(final_policy, others, cfg);
    }
  }
  Fail(ErrorCode::kInvalidArgument, "unknown payment rule");
}

}  // namespace

PaymentRule PaymentRule::Zero() { return PaymentRule(Kind::kZero); }

PaymentRule PaymentRule::AffineMaximizer(double surcharge) {
  PaymentRule rule(Kind::kAffineMaximizer);
  rule.surcharge_ = surcharge;
  return rule;
}

PaymentRule PaymentRule::RestrictedH1(CandidateSet candidates) {
  PaymentRule rule(Kind::kRestrictedH1);
  rule.candidates_ = std::make_shared<const CandidateSet>(std::move(candidates));
  return rule;
}

PaymentRule PaymentRule::RestrictedH2(CandidateBuilder builder) {
  if (!builder) Fail(ErrorCode::kInvalidArgument, "empty candidate builder");
  PaymentRule rule(Kind::kRestrictedH2);
  rule.builder_ = std::move(builder);
  return rule;
}

std::vector<double> PaymentAff(const GameConfig& cfg,
                               std::span<const GroupType> reports,
                               const TrainingRule& rule) {
  return PaymentAff(cfg, reports, rule, rule.Train(cfg, reports).policy);
}

std::vector<double> PaymentAff(const GameConfig& cfg,
                               std::span<const GroupType> reports,
                               const TrainingRule& rule, const Policy& full) {
  const PaymentRule aff = PaymentRule::AffineMaximizer();
  std::vector<double> out(reports.size());
  for (size_t i = 0; i < reports.size(); ++i) {
    out[i] = PaymentFor(cfg, reports, static_cast<int>(i), full, aff, rule);
  }
  return out;
}

std::vector<double> PaymentRestricted(const GameConfig& cfg,
                                      std::span<const GroupType> reports,
                                      const PaymentRule& rule,
                                      const TrainingRule& training) {
  if (rule.kind() != PaymentRule::Kind::kRestrictedH1 &&
      rule.kind() != PaymentRule::Kind::kRestrictedH2) {
    Fail(ErrorCode::kInvalidArgument, "not a restricted payment rule");
  }
  const Policy full = FinalPolicy(cfg, reports, rule, training).policy;
  std::vector<double> out(reports.size());
  for (size_t i = 0; i < reports.size(); ++i) {
    out[i] = PaymentFor(cfg, reports, static_cast<int>(i), full, rule, training);
  }
  return out;
}

TrainingRule::Output FinalPolicy(const GameConfig& cfg,
                                 std::span<const GroupType> reports,
                                 const PaymentRule& payment,
                                 const TrainingRule& training) {
  if (payment.kind() == PaymentRule::Kind::kRestrictedH1) {
    return TrainingRule::Output{
        SolveRestricted(cfg, reports, *payment.candidates()).policy,
        std::nullopt};
  }
  return training.Train(cfg, reports);
}

GameOutcome RunGame(const GameConfig& cfg, std::span<const GroupType> reports,
                    std::span<const GroupType> true_types,
                    const PaymentRule& payment, const TrainingRule& training) {
  if (reports.empty()) Fail(ErrorCode::kInvalidArgument, "no groups");
  if (reports.size() != true_types.size()) {
    Fail(ErrorCode::kDimensionMismatch, "reports and true types differ in length");
  }
  ValidateReports(cfg, reports);
  ValidateReports(cfg, true_types);
  TrainingRule::Output out = FinalPolicy(cfg, reports, payment, training);
  const int n = static_cast<int>(reports.size());
  GameOutcome outcome{out.policy, std::vector<double>(n),
                      std::vector<double>(n), std::vector<double>(n),
                      Asw(out.policy, reports, cfg), std::vector<double>(n),
                      out.mu};
  for (int i = 0; i < n; ++i) {
    outcome.valuations[i] =
        true_types[i].w * Valuation(out.policy, true_types[i].rm);
    outcome.payments[i] =
        PaymentFor(cfg, reports, i, out.policy, payment, training);
    outcome.utilities[i] = outcome.valuations[i] - outcome.payments[i];
    outcome.asw_minus[i] = AswMinusI(out.policy, reports, i, cfg);
  }
  return outcome;
}

GroupResult EvaluateGroup(const GameConfig& cfg,
                          std::span<const GroupType> reports, int i,
                          const GroupType& true_type,
                          const PaymentRule& payment,
                          const TrainingRule& training) {
  CheckIndex(reports, i);
  const Policy final_policy = FinalPolicy(cfg, reports, payment, training).policy;
  GroupResult out;
  out.valuation = true_type.w * Valuation(final_policy, true_type.rm);
  out.payment = PaymentFor(cfg, reports, i, final_policy, payment, training);
  out.utility = out.valuation - out.payment;
  return out;
}

}  // namespace rlhf_game
