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

#include "rlhf_game/experiments.h"

#include <cmath>
#include <utility>

#include "parallel.h"
#include "rlhf_game/errors.h"
#include "rlhf_game/rng.h"
#include "rlhf_game/serialization.h"
#include "rlhf_game/strategy.h"

namespace rlhf_game {

std::vector<SweepRow> RunSweep(const GameConfig& cfg,
                               const std::vector<GroupType>& types,
                               const PaymentRule& payment,
                               const TrainingRule& training,
                               const SweepSpec& spec, int workers) {
  const int n = static_cast<int>(types.size());
  if (spec.group < 0 || spec.group >= n) {
    Fail(ErrorCode::kIndexOutOfRange, "sweep group " + std::to_string(spec.group));
  }
  if (spec.alphas.empty() && spec.betas.empty()) {
    Fail(ErrorCode::kInvalidArgument, "sweep grids are empty");
  }
  std::vector<std::pair<std::string, double>> points;
  for (double a : spec.alphas) points.emplace_back("alpha", a);
  for (double b : spec.betas) points.emplace_back("beta", b);

  const std::vector<GroupType> opponents = WithoutGroup(types, spec.group);
  std::vector<std::vector<SweepRow>> blocks(points.size());
  internal::ParallelFor(static_cast<int>(points.size()), workers, [&](int p) {
    const auto& [name, value] = points[p];
    const Strategy strategy = name == "alpha" ? Strategy{SizeScale{value}}
                                              : Strategy{Blend{value}};
    const GroupType report =
        ApplyStrategy(strategy, types[spec.group], opponents, cfg);
    const std::vector<GroupType> reports = WithReport(types, spec.group, report);
    const GameOutcome outcome = RunGame(cfg, reports, types, payment, training);
    const double welfare = Asw(outcome.final_policy, types, cfg);
    for (int i = 0; i < n; ++i) {
      blocks[p].push_back(SweepRow{name, value, i, outcome.valuations[i],
                                   outcome.payments[i], outcome.utilities[i],
                                   welfare});
    }
  });
  std::vector<SweepRow> rows;
  for (auto& block : blocks) {
    for (SweepRow& row : block) rows.push_back(std::move(row));
  }
  return rows;
}

void WriteSweepCsv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "parameter,value,group,valuation,payment,utility,social_welfare\n";
  for (const SweepRow& r : rows) {
    out << r.parameter << ',' << FormatDouble(r.value) << ',' << r.group << ','
        << FormatDouble(r.valuation) << ',' << FormatDouble(r.payment) << ','
        << FormatDouble(r.utility) << ',' << FormatDouble(r.social_welfare)
        << '\n';
  }
}

namespace {

struct Moments {
  double mean = 0.0;
  double std = 0.0;
  double se = 0.0;
};

// Two-pass mean and sample standard deviation, summed in index order.
Moments Summarize(const std::vector<double>& xs) {
  Moments m;
  const double n = static_cast<double>(xs.size());
  for (double x : xs) m.mean += x;
  m.mean /= n;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.std = std::sqrt(ss / (n - 1.0));
    m.se = m.std / std::sqrt(n);
  }
  return m;
}

}  // namespace

std::vector<SynthRow> RunSynth(const SynthSpec& spec, uint64_t seed,
                               int workers) {
  if (spec.groups < 1 || spec.outcomes < 2 || spec.w_max < 1 ||
      spec.samples < 1 || spec.epsilons.empty()) {
    Fail(ErrorCode::kInvalidArgument, "invalid synthetic game parameters");
  }
  const GameConfig cfg{OutcomeSpace(spec.outcomes),
                       Policy::Uniform(spec.outcomes),
                       DivergenceSpec::Kl(spec.lambda), spec.mode, spec.w_max,
                       TieBreak::kValuationLex};
  const TrainingRule training = TrainingRule::Exact(SolverKind::kKl);
  const PaymentRule payment = PaymentRule::AffineMaximizer();
  const int e_count = static_cast<int>(spec.epsilons.size());

  std::vector<std::vector<double>> dv(e_count, std::vector<double>(spec.samples));
  std::vector<std::vector<double>> du(e_count, std::vector<double>(spec.samples));
  internal::ParallelFor(spec.samples, workers, [&](int s) {
    Rng rng(DeriveSeed(seed, static_cast<uint64_t>(s)));
    std::vector<GroupType> types;
    for (int i = 0; i < spec.groups; ++i) {
      std::vector<double> raw(spec.outcomes);
      for (double& x : raw) x = rng.Uniform();
      double scale = 0.0;
      for (double x : raw) {
        scale = spec.mode == NormMode::kSumToOne ? scale + x : std::max(scale, x);
      }
      for (double& x : raw) x /= scale;
      types.push_back(GroupType{RewardModel::Validate(std::move(raw), spec.mode),
                                rng.UniformInt(1, spec.w_max)});
    }
    const GroupResult truthful =
        EvaluateGroup(cfg, types, 0, types[0], payment, training);
    for (int e = 0; e < e_count; ++e) {
      const RewardModel shifted =
          spec.cap ? CappedEpsilonShiftReward(types[0].rm, spec.epsilons[e])
                   : EpsilonShiftReward(types[0].rm, spec.epsilons[e]);
      const std::vector<GroupType> reports =
          WithReport(types, 0, GroupType{shifted, types[0].w});
      const GroupResult deviated =
          EvaluateGroup(cfg, reports, 0, types[0], payment, training);
      dv[e][s] = deviated.valuation - truthful.valuation;
      du[e][s] = deviated.utility - truthful.utility;
    }
  });

  std::vector<SynthRow> rows;
  for (int e = 0; e < e_count; ++e) {
    const Moments v = Summarize(dv[e]);
    const Moments u = Summarize(du[e]);
    rows.push_back(SynthRow{spec.epsilons[e], v.mean, v.std, v.se, u.mean,
                            u.std, u.se, spec.samples});
  }
  return rows;
}

void WriteSynthCsv(std::ostream& out, const std::vector<SynthRow>& rows) {
  out << "epsilon,delta_valuation_mean,delta_valuation_std,"
         "delta_valuation_se,delta_utility_mean,delta_utility_std,"
         "delta_utility_se,samples\n";
  for (const SynthRow& r : rows) {
    out << FormatDouble(r.epsilon) << ',' << FormatDouble(r.valuation_mean)
        << ',' << FormatDouble(r.valuation_std) << ','
        << FormatDouble(r.valuation_se) << ',' << FormatDouble(r.utility_mean)
        << ',' << FormatDouble(r.utility_std) << ','
        << FormatDouble(r.utility_se) << ',' << r.samples << '\n';
  }
}

}  // namespace rlhf_game
