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

#ifndef RLHF_GAME_TRAINING_H_
#define RLHF_GAME_TRAINING_H_

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "rlhf_game/core.h"

namespace rlhf_game {

// Lower bound on any probability the solvers produce. Keeps every output a
// strictly positive Policy when the unconstrained optimum sits on the
// simplex boundary.
inline constexpr double kPositivityFloor = 1e-9;

// r(x) = sum_i w_i rm_i(x).
struct AggregateReward {
  std::vector<double> r;
};

AggregateReward Aggregate(std::span<const GroupType> reports, int size);

struct SolveResult {
  Policy policy;
  double mu = 0.0;       // multiplier of the simplex constraint
  int iterations = 0;
  double residual = 0.0; // |sum(policy) - 1| before the final rescale
  int clamped = 0;       // coordinates held at kPositivityFloor
};

struct SolverOptions {
  // Raise kDegenerateSolution when clamping leaves fewer than two free
  // outcomes instead of returning the near-vertex optimum.
  bool require_interior = false;
};

// Closed-form exponential tilt pi(x) ~ initial(x) exp(r(x) / lambda).
SolveResult SolveKl(const Policy& initial, double lambda,
                    std::span<const double> r);
SolveResult SolveKl(const GameConfig& cfg, std::span<const GroupType> reports);

// Interior formula pi(x) = initial(x) (1 + (r(x) - mu) / (2 lambda)) with an
// active-set pass that pins infeasible coordinates at kPositivityFloor.
SolveResult SolveChi2(const Policy& initial, double lambda,
                      std::span<const double> r, SolverOptions options = {});
SolveResult SolveChi2(const GameConfig& cfg, std::span<const GroupType> reports,
                      SolverOptions options = {});

// Monotone bisection on mu for sum_x max(floor, initial(x) g(r(x) - mu)) = 1
// with g = (f')^{-1}. Works for any smooth kind.
SolveResult SolveGeneric(const Policy& initial, const DivergenceSpec& spec,
                         std::span<const double> r);
SolveResult SolveGeneric(const GameConfig& cfg,
                         std::span<const GroupType> reports);

// max_x |r(x) - f'(pi(x)/initial(x)) - mu| over coordinates above the floor.
double KktResidual(const DivergenceSpec& spec, const Policy& initial,
                   std::span<const double> r, const SolveResult& result);

// Exhaustive ASW argmax over the interior simplex grid with the given
// spacing (every coordinate >= resolution). K <= 4, resolution >= 1e-4 and
// 1/resolution integral. Ties fall to cfg.tie_break, then to the earlier
// point in lexicographic order, so the result is independent of `workers`
// (0 keeps the OpenMP default).
Policy SolveGridOracle(const GameConfig& cfg,
                       std::span<const GroupType> reports, double resolution,
                       int workers = 0);
// Single-threaded reference used to test the parallel kernel.
Policy SolveGridOracleSerial(const GameConfig& cfg,
                             std::span<const GroupType> reports,
                             double resolution);

// A finite, ordered set of candidate policies.
class CandidateSet {
 public:
  explicit CandidateSet(std::vector<Policy> policies);

  const std::vector<Policy>& policies() const { return policies_; }
  int size() const { return static_cast<int>(policies_.size()); }
  const Policy& operator[](int index) const { return policies_[index]; }

 private:
  std::vector<Policy> policies_;
};

struct RestrictedChoice {
  Policy policy;
  int index = 0;
};

// ASW argmax over the candidates with cfg.tie_break resolving exact ties.
RestrictedChoice SolveRestricted(const GameConfig& cfg,
                                 std::span<const GroupType> reports,
                                 const CandidateSet& candidates);
// ASW argmin over the candidates, lowest index on ties. A deliberately
// non-monotone rule used as a negative control.
RestrictedChoice SolveRestrictedArgmin(const GameConfig& cfg,
                                       std::span<const GroupType> reports,
                                       const CandidateSet& candidates);

enum class SolverKind {
  kAuto,     // closed form for KL / chi-squared, bisection for generic
  kKl,
  kChi2,
  kGeneric,
  kGridOracle,
  kRestricted,
  kArgminRestricted,
};

// A training rule psi: reports -> policy. Empty reports map to the argmax of
// -D_f over the rule's feasible set, which is the initial policy for the
// exact solvers.
class TrainingRule {
 public:
  struct Output {
    Policy policy;
    std::optional<double> mu;
  };

  static TrainingRule Exact(SolverKind kind = SolverKind::kAuto,
                            SolverOptions options = {});
  static TrainingRule GridOracle(double resolution, int workers = 0);
  static TrainingRule Restricted(CandidateSet candidates);
  static TrainingRule ArgminRestricted(CandidateSet candidates);

  SolverKind kind() const { return kind_; }
  bool is_exact() const;
  const CandidateSet* candidates() const { return candidates_.get(); }

  Output Train(const GameConfig& cfg, std::span<const GroupType> reports) const;

 private:
  explicit TrainingRule(SolverKind kind) : kind_(kind) {}

  SolverKind kind_;
  SolverOptions options_;
  double resolution_ = 0.0;
  int workers_ = 0;
  std::shared_ptr<const CandidateSet> candidates_;
};

}  // namespace rlhf_game

#endif  // RLHF_GAME_TRAINING_H_
