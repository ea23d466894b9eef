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

#ifndef RLHF_GAME_VERIFY_H_
#define RLHF_GAME_VERIFY_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rlhf_game/core.h"
#include "rlhf_game/mechanism.h"
#include "rlhf_game/rng.h"
#include "rlhf_game/serialization.h"
#include "rlhf_game/training.h"

namespace rlhf_game {

// A game together with every group's true type.
struct Instance {
  GameConfig cfg;
  std::vector<GroupType> types;
};

Json ToJson(const Instance& instance);
Instance InstanceFromJson(const Json& j);

enum class InstanceFamily {
  kRandom,
  // K = 2, n = 2, initial (e, 1 - e), rm_1 = (1, 0), rm_2 = (0, 1) under
  // MaxToOne. Group 1 favours the outcome the initial policy starves, so its
  // truthful utility under the affine maximizer is at most about e.
  kOpposed,
};

struct InstanceSampler {
  std::vector<int> outcome_counts = {2, 3, 4};
  std::vector<int> group_counts = {1, 2, 3};
  std::vector<double> lambdas = {0.5, 1.0, 2.0};
  std::vector<DivergenceKind> kinds = {DivergenceKind::kKl};
  std::vector<NormMode> modes = {NormMode::kSumToOne, NormMode::kMaxToOne};
  int w_bar = 5;
  // Initial entries are drawn from U[min_initial, 1] and normalized.
  double min_initial = 0.05;
  InstanceFamily family = InstanceFamily::kRandom;
  double opposed_initial = 0.01;

  Instance Sample(Rng& rng) const;
};

// U[0, 1]^k normalized under `mode`; one in ten draws has a zero entry.
RewardModel SampleRewardModel(int k, NormMode mode, Rng& rng);
// A unilateral deviation for group i: a fresh type, a resized truthful
// report, a small perturbation, or the exaggerated vertex report.
GroupType SampleDeviation(const Instance& instance, int i, Rng& rng);

// The mechanism under test, possibly built per instance (restricted rules
// need their candidate sets).
struct Mechanism {
  PaymentRule payment;
  TrainingRule training;
};
using MechanismFactory =
    std::function<Mechanism(const Instance& instance, Rng& rng)>;

MechanismFactory FixedMechanism(PaymentRule payment, TrainingRule training);
// `count` random candidate policies per instance. With argmin set, the
// training rule is the ASW argmin over them.
MechanismFactory RandomRestrictedMechanism(
    int count, bool argmin = false,
    PaymentRule payment = PaymentRule::AffineMaximizer());

struct CheckOptions {
  uint64_t seed = 1;
  int trials = 1000;
  int workers = 0;
};

// passed <=> max_violation <= tolerance.
struct CheckReport {
  std::string suite;
  int trials = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  Json worst_instance;
  Json details;
  bool passed = false;

  Json ToJson() const;
};

// Violation: deviation utility - truthful utility.
CheckReport CheckDsic(const InstanceSampler& sampler,
                      const MechanismFactory& mechanism, int deviations,
                      const CheckOptions& options, double tolerance = 1e-9);

// Violation: -(truthful utility), over every group.
CheckReport CheckIr(const InstanceSampler& sampler,
                    const MechanismFactory& mechanism,
                    const CheckOptions& options, double tolerance = 1e-9);

// Violation: -(affine-maximizer payment), over every group.
CheckReport CheckNonNegativePayments(const InstanceSampler& sampler,
                                     const MechanismFactory& mechanism,
                                     const CheckOptions& options,
                                     double tolerance = 1e-10);

// Additive per-coordinate noise, uniform on [-epsilon, epsilon], clamped at
// zero and never renormalized.
struct NoiseModel {
  double epsilon = 0.0;

  RewardModel Perturb(const RewardModel& rm, std::span<const double> u) const;
  // Uniform draws on [-1, 1], one per coordinate.
  std::vector<double> Draw(int k, Rng& rng) const;
};

// Per instance and group: Monte-Carlo gain of each sampled deviation with
// the same noise draws in both arms. Violation: mean gain - 2 w_i epsilon
// - 3 standard errors.
CheckReport CheckApproxDsic(const InstanceSampler& sampler,
                            const MechanismFactory& mechanism,
                            const NoiseModel& noise, int samples,
                            int deviations, const CheckOptions& options,
                            double tolerance = 1e-9);

// Per draw: ASW(psi(true); true) - ASW(psi(noisy); true) - 2 eps sum_i w_i.
// With `adversarial`, every +-eps sign pattern is tried as well when K <= 3.
CheckReport CheckNoiseAsw(const InstanceSampler& sampler,
                          const MechanismFactory& mechanism,
                          const NoiseModel& noise, int draws, bool adversarial,
                          const CheckOptions& options, double tolerance = 1e-8);

struct CycleSpec {
  int reward_points = 16;            // random reward models in the grid
  std::vector<int> sizes = {1, 2, 3, 4};
  int max_length = 5;
  int sampled_cycles = 5000;
};

// Cycle sums over group 0's type grid with the other groups fixed. Every
// cycle of length <= max_length is covered exactly by a min-weight closed
// walk recursion; random cycles and all 2-cycles are sampled as well.
// Violation: -(most negative cycle sum).
CheckReport CheckCycleMonotonicity(const InstanceSampler& sampler,
                                   const MechanismFactory& mechanism,
                                   const CycleSpec& spec,
                                   const CheckOptions& options,
                                   double tolerance = 1e-8);

// l(a, b) = w_b (v(psi(b); rm_b) - v(psi(a); rm_b)): what type b gains by
// reporting b rather than a.
double CycleEdge(const GroupType& a, const Policy& psi_a, const GroupType& b,
                 const Policy& psi_b);

struct PathSums {
  double forward = 0.0;
  double backward = 0.0;
};

// Sums l along t -> ... -> t' and along the reverse. When the sizes differ
// the path runs rm -> rm* at w, switches size at rm*, then rm* -> rm' at w'.
// Each leg has `steps` interpolation steps. Group i sits at index 0.
PathSums EstimatePaymentPath(const GameConfig& cfg,
                             std::span<const GroupType> opponents,
                             const GroupType& t, const GroupType& t_prime,
                             int steps, const TrainingRule& training);

// For each endpoint pair, |forward + backward| over `steps`. Violation per
// pair: max(final - final_bound, largest non-decrease + 1e-12), so the
// check needs strictly decreasing values and a small final value.
CheckReport CheckPaymentPath(const InstanceSampler& sampler,
                             const TrainingRule& training,
                             const std::vector<int>& steps,
                             const CheckOptions& options,
                             double final_bound = 0.02);

}  // namespace rlhf_game

#endif  // RLHF_GAME_VERIFY_H_
