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

#include "rlhf_game/strategy.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "rlhf_game/errors.h"
#include "parallel.h"

namespace rlhf_game {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

int ArgMax(std::span<const double> v) {
  return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
}

int ArgMin(std::span<const double> v) {
  return static_cast<int>(std::min_element(v.begin(), v.end()) - v.begin());
}

RewardModel Rebuild(const RewardModel& like, std::vector<double> values) {
  return like.normalized() ? RewardModel::Validate(std::move(values), like.mode())
                           : RewardModel::Unnormalized(std::move(values), like.mode());
}

RewardModel Shift(const RewardModel& rm, double epsilon) {
  std::vector<double> v(rm.values().begin(), rm.values().end());
  const int lo = ArgMin(v);
  if (rm.mode() == NormMode::kSumToOne) {
    const int hi = ArgMax(v);
    v[hi] += epsilon;
  }
  v[lo] = std::max(0.0, v[lo] - epsilon);
  return Rebuild(rm, std::move(v));
}

// Sum-or-max rescale used by blends and coordinate perturbations.
RewardModel Renormalize(std::vector<double> raw, NormMode mode) {
  for (double& x : raw) x = std::max(0.0, x);
  const double scale =
      mode == NormMode::kSumToOne
          ? [&] { double s = 0.0; for (double x : raw) s += x; return s; }()
          : *std::max_element(raw.begin(), raw.end());
  if (!(scale > 0.0)) {
    Fail(ErrorCode::kAllZeroAfterClamp, "report is zero after clamping");
  }
  for (double& x : raw) x /= scale;
  if (mode == NormMode::kMaxToOne) raw[ArgMax(raw)] = 1.0;
  return RewardModel::Validate(std::move(raw), mode);
}

}  // namespace

std::string StrategyName(const Strategy& strategy) {
  return std::visit(
      Overloaded{
          [](const Truthful&) { return std::string("truthful"); },
          [](const EpsilonShift& s) {
            return "epsilon_shift(" + std::to_string(s.epsilon) + ")";
          },
          [](const SizeScale& s) {
            return "size_scale(" + std::to_string(s.alpha) + ")";
          },
          [](const Blend& s) { return "blend(" + std::to_string(s.beta) + ")"; },
          [](const Explicit&) { return std::string("explicit"); },
      },
      strategy);
}

double EpsilonShiftBound(const RewardModel& rm) {
  const auto v = rm.values();
  const double hi = v[ArgMax(v)];
  const double lo = v[ArgMin(v)];
  if (hi == lo) {
    Fail(ErrorCode::kDegeneratePreference,
         "constant reward model has no favourite outcome");
  }
  return rm.mode() == NormMode::kSumToOne ? std::min(1.0 - hi, lo) : lo;
}

RewardModel EpsilonShiftReward(const RewardModel& rm, double epsilon) {
  const double bound = EpsilonShiftBound(rm);
  if (!(epsilon > 0.0)) {
    Fail(ErrorCode::kNonPositiveArgument, "epsilon must be positive");
  }
  if (!(epsilon < bound)) {
    Fail(ErrorCode::kEpsilonTooLarge,
         "epsilon " + std::to_string(epsilon) + " not below bound " +
             std::to_string(bound));
  }
  return Shift(rm, epsilon);
}

RewardModel CappedEpsilonShiftReward(const RewardModel& rm, double epsilon) {
  if (!(epsilon > 0.0)) {
    Fail(ErrorCode::kNonPositiveArgument, "epsilon must be positive");
  }
  return Shift(rm, std::min(epsilon, EpsilonShiftBound(rm)));
}

RewardModel BlendReward(const RewardModel& rm_i,
                        std::span<const GroupType> opponents, double beta,
                        NormMode mode) {
  if (opponents.empty()) {
    Fail(ErrorCode::kInvalidArgument, "blend needs at least one opponent");
  }
  if (beta == 1.0) return rm_i;
  const int k = rm_i.size();
  std::vector<double> mean(k, 0.0);
  double total = 0.0;
  for (const GroupType& g : opponents) {
    if (g.rm.size() != k) {
      Fail(ErrorCode::kDimensionMismatch, "opponent reward model size");
    }
    for (int x = 0; x < k; ++x) mean[x] += g.w * g.rm[x];
    total += g.w;
  }
  std::vector<double> raw(k);
  for (int x = 0; x < k; ++x) {
    raw[x] = beta * rm_i[x] + (1.0 - beta) * mean[x] / total;
  }
  return Renormalize(std::move(raw), mode);
}

GroupType SizeScaleType(const GroupType& type, double alpha, int w_bar) {
  if (!(alpha > 0.0)) {
    Fail(ErrorCode::kNonPositiveArgument, "alpha must be positive");
  }
  const double scaled = std::floor(alpha * type.w + 0.5);
  const int w = static_cast<int>(std::clamp(scaled, 1.0, static_cast<double>(w_bar)));
  return GroupType{type.rm, w};
}

GroupType ApplyStrategy(const Strategy& strategy, const GroupType& truth,
                        std::span<const GroupType> opponents,
                        const GameConfig& cfg) {
  return std::visit(
      Overloaded{
          [&](const Truthful&) { return truth; },
          [&](const EpsilonShift& s) {
            return GroupType{s.cap_at_bound
                                 ? CappedEpsilonShiftReward(truth.rm, s.epsilon)
                                 : EpsilonShiftReward(truth.rm, s.epsilon),
                             truth.w};
          },
          [&](const SizeScale& s) {
            return SizeScaleType(truth, s.alpha, cfg.w_bar);
          },
          [&](const Blend& s) {
            return GroupType{BlendReward(truth.rm, opponents, s.beta, cfg.mode),
                             truth.w};
          },
          [&](const Explicit& s) { return s.report; },
      },
      strategy);
}

std::vector<double> CurvatureWeights(const GameConfig& cfg, const Policy& pi) {
  if (!cfg.divergence.is_smooth()) {
    Fail(ErrorCode::kUnsupported, "curvature needs a smooth divergence");
  }
  std::vector<double> c(cfg.size());
  for (int x = 0; x < cfg.size(); ++x) {
    const double q = cfg.initial[x];
    c[x] = q / cfg.divergence.SecondDerivative(pi[x] / q);
  }
  return c;
}

std::vector<double> TFunction(const GameConfig& cfg,
                              std::span<const GroupType> reports, int i,
                              const TrainingRule& rule) {
  if (i < 0 || i >= static_cast<int>(reports.size())) {
    Fail(ErrorCode::kIndexOutOfRange, "group index " + std::to_string(i));
  }
  const Policy pi = rule.Train(cfg, reports).policy;
  const std::vector<double> c = CurvatureWeights(cfg, pi);
  const RewardModel& rm = reports[i].rm;
  std::vector<double> t(cfg.size(), 0.0);
  for (int z = 0; z < cfg.size(); ++z) {
    for (int x = 0; x < cfg.size(); ++x) t[z] += (rm[z] - rm[x]) * c[x];
  }
  return t;
}

std::optional<RewardModel> PrescribedDeviation(const GameConfig& cfg,
                                               const RewardModel& rm,
                                               const Policy& pi, int x,
                                               double t_x, double delta) {
  if (t_x == 0.0 || !(rm[x] > 0.0) || !(rm[x] < 1.0)) return std::nullopt;
  std::vector<double> v(rm.values().begin(), rm.values().end());
  if (rm.mode() == NormMode::kMaxToOne) {
    v[x] += t_x > 0.0 ? delta : -delta;
    if (v[x] < 0.0 || v[x] >= 1.0) return std::nullopt;
    return RewardModel::Validate(std::move(v), rm.mode());
  }
  if (t_x < 0.0) {
    const int hi = ArgMax(v);
    if (v[x] < delta || v[hi] + delta > 1.0) return std::nullopt;
    v[x] -= delta;
    v[hi] += delta;
    return RewardModel::Validate(std::move(v), rm.mode());
  }
  if (v[x] + delta > 1.0) return std::nullopt;
  const std::vector<double> c = CurvatureWeights(cfg, pi);
  int x2 = -1;
  for (int y = 0; y < rm.size(); ++y) {
    if (y == x || !(rm[y] >= delta) || rm[y] > rm[x] || !(c[y] < c[x])) {
      continue;
    }
    if (x2 < 0 || c[y] < c[x2]) x2 = y;
  }
  if (x2 < 0) return std::nullopt;
  v[x] += delta;
  v[x2] -= delta;
  return RewardModel::Validate(std::move(v), rm.mode());
}

SearchSpec SearchSpec::Default() {
  return SearchSpec{{0.2, 0.5, 1.5, 2.0, 3.0},
                    {0.5, 0.8, 1.5, 2.0, 3.0},
                    {0.001, 0.01, 0.05, 0.1},
                    {-0.1, -0.01, 0.01, 0.1}};
}

BestResponse FindBestResponse(const GameConfig& cfg,
                              std::span<const GroupType> reports, int i,
                              const GroupType& true_type,
                              const PaymentRule& payment,
                              const TrainingRule& training,
                              const SearchSpec& search, int workers) {
  const std::vector<GroupType> opponents = WithoutGroup(reports, i);
  std::vector<Strategy> candidates = {Truthful{}};
  for (double a : search.alphas) candidates.push_back(SizeScale{a});
  if (!opponents.empty()) {
    for (double b : search.betas) candidates.push_back(Blend{b});
  }
  for (double e : search.epsilons) candidates.push_back(EpsilonShift{e, false});
  for (int x = 0; x < cfg.size(); ++x) {
    for (double s : search.coordinate_steps) {
      std::vector<double> raw(true_type.rm.values().begin(),
                              true_type.rm.values().end());
      raw[x] += s;
      try {
        candidates.push_back(
            Explicit{GroupType{Renormalize(std::move(raw), cfg.mode), true_type.w}});
      } catch (const GameError&) {
        // Steps that empty the vector are not reports.
      }
    }
  }

  const int m = static_cast<int>(candidates.size());
  std::vector<double> utility(m, -std::numeric_limits<double>::infinity());
  std::vector<std::optional<GroupType>> report(m);
  const int threads = internal::ResolveWorkers(workers);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int c = 0; c < m; ++c) {
    try {
      GroupType r = ApplyStrategy(candidates[c], true_type, opponents, cfg);
      const std::vector<GroupType> deviated = WithReport(reports, i, r);
      utility[c] =
          EvaluateGroup(cfg, deviated, i, true_type, payment, training).utility;
      report[c] = std::move(r);
    } catch (const GameError&) {
      // Infeasible strategies (for example epsilon above the bound) are
      // skipped rather than aborting the search.
    }
  }
  if (!report[0]) {
    Fail(ErrorCode::kInvalidArgument, "truthful report could not be evaluated");
  }
  int best = 0;
  for (int c = 1; c < m; ++c) {
    if (report[c] && utility[c] > utility[best]) best = c;
  }
  return BestResponse{candidates[best], *report[best], utility[best] - utility[0]};
}

MisreportDelta MisreportGain(const GameConfig& cfg,
                             std::span<const GroupType> reports,
                             std::span<const GroupType> true_types, int i,
                             const Strategy& strategy,
                             const PaymentRule& payment,
                             const TrainingRule& training) {
  if (reports.size() != true_types.size()) {
    Fail(ErrorCode::kDimensionMismatch, "reports and true types differ in length");
  }
  const GroupType& truth = true_types[i];
  const std::vector<GroupType> truthful = WithReport(reports, i, truth);
  const std::vector<GroupType> opponents = WithoutGroup(reports, i);
  const std::vector<GroupType> deviated =
      WithReport(reports, i, ApplyStrategy(strategy, truth, opponents, cfg));
  const GroupResult a = EvaluateGroup(cfg, truthful, i, truth, payment, training);
  const GroupResult b = EvaluateGroup(cfg, deviated, i, truth, payment, training);
  return MisreportDelta{b.valuation - a.valuation, b.utility - a.utility};
}

}  // namespace rlhf_game
