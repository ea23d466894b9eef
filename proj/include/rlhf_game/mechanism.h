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

#ifndef RLHF_GAME_MECHANISM_H_
#define RLHF_GAME_MECHANISM_H_

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "rlhf_game/core.h"
#include "rlhf_game/training.h"

namespace rlhf_game {

// Builds the candidate list used for the "without group i" solve. It only
// ever sees the other groups' reports, so it cannot condition on group i.
using CandidateBuilder = std::function<CandidateSet(
    const GameConfig& cfg, int i, std::span<const GroupType> others)>;

class PaymentRule {
 public:
  enum class Kind { kZero, kAffineMaximizer, kRestrictedH1, kRestrictedH2 };

  static PaymentRule Zero();
  // p_i = ASW_{-i}(psi(reports_{-i})) - ASW_{-i}(psi(reports)) + surcharge.
  // A non-zero surcharge exists only to build IR counterexamples.
  static PaymentRule AffineMaximizer(double surcharge = 0.0);
  // Both argmaxes over one fixed candidate set; the final policy is the
  // restricted argmax over that same set.
  static PaymentRule RestrictedH1(CandidateSet candidates);
  // The final policy comes from the training rule; the without-i argmax runs
  // over builder(cfg, i, reports_{-i}).
  static PaymentRule RestrictedH2(CandidateBuilder builder);

  Kind kind() const { return kind_; }
  double surcharge() const { return surcharge_; }
  const CandidateSet* candidates() const { return candidates_.get(); }
  const CandidateBuilder& builder() const { return builder_; }

 private:
  explicit PaymentRule(Kind kind) : kind_(kind) {}

  Kind kind_;
  double surcharge_ = 0.0;
  std::shared_ptr<const CandidateSet> candidates_;
  CandidateBuilder builder_;
};

// Affine-maximizer payments for every group under `rule`. `full` may carry a
// precomputed psi(reports).
std::vector<double> PaymentAff(const GameConfig& cfg,
                               std::span<const GroupType> reports,
                               const TrainingRule& rule);
std::vector<double> PaymentAff(const GameConfig& cfg,
                               std::span<const GroupType> reports,
                               const TrainingRule& rule, const Policy& full);

// Heuristic payments. `rule` must be RestrictedH1 or RestrictedH2; `training`
// supplies the full-game policy for H2 and is ignored for H1.
std::vector<double> PaymentRestricted(const GameConfig& cfg,
                                      std::span<const GroupType> reports,
                                      const PaymentRule& rule,
                                      const TrainingRule& training);

// The policy the mechanism deploys: the restricted argmax for H1, otherwise
// training.Train(reports).
TrainingRule::Output FinalPolicy(const GameConfig& cfg,
                                 std::span<const GroupType> reports,
                                 const PaymentRule& payment,
                                 const TrainingRule& training);

// Plays one round. ASW fields are evaluated against `reports`; valuations
// and utilities use `true_types`.
GameOutcome RunGame(const GameConfig& cfg, std::span<const GroupType> reports,
                    std::span<const GroupType> true_types,
                    const PaymentRule& payment, const TrainingRule& training);

// Group i's side of RunGame without computing the other groups' payments.
struct GroupResult {
  double valuation = 0.0;
  double payment = 0.0;
  double utility = 0.0;
};

GroupResult EvaluateGroup(const GameConfig& cfg,
                          std::span<const GroupType> reports, int i,
                          const GroupType& true_type,
                          const PaymentRule& payment,
                          const TrainingRule& training);

}  // namespace rlhf_game

#endif  // RLHF_GAME_MECHANISM_H_
