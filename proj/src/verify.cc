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

#include "rlhf_game/verify.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "parallel.h"
#include "rlhf_game/errors.h"

namespace rlhf_game {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct TrialResult {
  double violation = kNegInf;
  Json witness;
  Json details;
};

// Runs `trial(t, rng)` for every trial in parallel and keeps the largest
// violation, earliest trial on ties.
template <class Trial>
CheckReport RunTrials(const std::string& suite, const CheckOptions& options,
                      double tolerance, Trial&& trial) {
  std::vector<TrialResult> results(options.trials);
  internal::ParallelFor(options.trials, options.workers, [&](int t) {
    Rng rng(DeriveSeed(options.seed, static_cast<uint64_t>(t)));
    results[t] = trial(t, rng);
  });
  CheckReport report;
  report.suite = suite;
  report.trials = options.trials;
  report.tolerance = tolerance;
  report.max_violation = kNegInf;
  int worst = -1;
  for (int t = 0; t < options.trials; ++t) {
    if (worst < 0 || results[t].violation > report.max_violation) {
      worst = t;
      report.max_violation = results[t].violation;
    }
  }
  if (worst >= 0) {
    report.worst_instance = std::move(results[worst].witness);
    report.worst_instance["trial"] = worst;
    report.details = std::move(results[worst].details);
  }
  report.passed = report.max_violation <= tolerance;
  return report;
}

Policy SamplePolicy(int k, double min_entry, Rng& rng) {
  std::vector<double> w(k);
  for (double& x : w) x = rng.Uniform(min_entry, 1.0);
  return Policy::Normalize(std::move(w));
}

// Rescales a non-negative vector into `mode`.
RewardModel Normalized(std::vector<double> raw, NormMode mode) {
  double scale = 0.0;
  for (double x : raw) scale = mode == NormMode::kSumToOne ? scale + x : std::max(scale, x);
  for (double& x : raw) x /= scale;
  return RewardModel::Validate(std::move(raw), mode);
}

RewardModel Interpolate(const RewardModel& a, const RewardModel& b, double s) {
  std::vector<double> raw(a.size());
  for (int x = 0; x < a.size(); ++x) raw[x] = (1.0 - s) * a[x] + s * b[x];
  return Normalized(std::move(raw), a.mode());
}

Json Witness(const Instance& instance) { return ToJson(instance); }

}  // namespace

Json ToJson(const Instance& instance) {
  Json j;
  j["game"] = ToJson(instance.cfg);
  j["groups"] = ToJson(instance.types);
  return j;
}

Instance InstanceFromJson(const Json& j) {
  GameConfig cfg = GameConfigFromJson(j.at("game"));
  std::vector<GroupType> types = GroupTypesFromJson(j.at("groups"), cfg.mode);
  return Instance{std::move(cfg), std::move(types)};
}

RewardModel SampleRewardModel(int k, NormMode mode, Rng& rng) {
  std::vector<double> raw(k);
  for (double& x : raw) x = rng.Uniform();
  if (rng.Bernoulli(0.1)) raw[rng.UniformInt(0, k - 1)] = 0.0;
  if (*std::max_element(raw.begin(), raw.end()) <= 0.0) raw[0] = 1.0;
  return Normalized(std::move(raw), mode);
}

Instance InstanceSampler::Sample(Rng& rng) const {
  if (family == InstanceFamily::kOpposed) {
    const double e = opposed_initial;
    const NormMode mode = NormMode::kMaxToOne;
    GameConfig cfg{OutcomeSpace(2), Policy({e, 1.0 - e}),
                   DivergenceSpec::Kl(rng.Choice(lambdas)), mode, w_bar,
                   TieBreak::kValuationLex};
    std::vector<GroupType> types = {
        GroupType{RewardModel::Validate({1.0, 0.0}, mode), rng.UniformInt(1, w_bar)},
        GroupType{RewardModel::Validate({0.0, 1.0}, mode), rng.UniformInt(1, w_bar)}};
    return Instance{std::move(cfg), std::move(types)};
  }
  const int k = rng.Choice(outcome_counts);
  const int n = rng.Choice(group_counts);
  const double lambda = rng.Choice(lambdas);
  const DivergenceKind kind = rng.Choice(kinds);
  const NormMode mode = rng.Choice(modes);
  DivergenceSpec div = kind == DivergenceKind::kChiSquared
                           ? DivergenceSpec::ChiSquared(lambda)
                           : DivergenceSpec::Kl(lambda);
  if (kind != DivergenceKind::kKl && kind != DivergenceKind::kChiSquared) {
    Fail(ErrorCode::kUnsupported, "sampler draws KL or chi-squared games only");
  }
  GameConfig cfg{OutcomeSpace(k), SamplePolicy(k, min_initial, rng),
                 std::move(div), mode, w_bar, TieBreak::kValuationLex};
  std::vector<GroupType> types;
  for (int i = 0; i < n; ++i) {
    types.push_back(GroupType{SampleRewardModel(k, mode, rng),
                              rng.UniformInt(1, w_bar)});
  }
  return Instance{std::move(cfg), std::move(types)};
}

GroupType SampleDeviation(const Instance& instance, int i, Rng& rng) {
  const GameConfig& cfg = instance.cfg;
  const GroupType& truth = instance.types[i];
  switch (rng.UniformInt(0, 3)) {
    case 0:
      return GroupType{SampleRewardModel(cfg.size(), cfg.mode, rng),
                       rng.UniformInt(1, cfg.w_bar)};
    case 1:
      return GroupType{truth.rm, rng.UniformInt(1, cfg.w_bar)};
    case 2: {
      std::vector<double> raw(truth.rm.values().begin(), truth.rm.values().end());
      for (double& x : raw) x = std::max(0.0, x + rng.Uniform(-0.05, 0.05));
      if (*std::max_element(raw.begin(), raw.end()) <= 0.0) return truth;
      return GroupType{Normalized(std::move(raw), cfg.mode), truth.w};
    }
    default: {
      const auto v = truth.rm.values();
      std::vector<double> raw(v.size(), 0.0);
      raw[std::max_element(v.begin(), v.end()) - v.begin()] = 1.0;
      return GroupType{Normalized(std::move(raw), cfg.mode), cfg.w_bar};
    }
  }
}

MechanismFactory FixedMechanism(PaymentRule payment, TrainingRule training) {
  return [payment = std::move(payment), training = std::move(training)](
             const Instance&, Rng&) { return Mechanism{payment, training}; };
}

MechanismFactory RandomRestrictedMechanism(int count, bool argmin,
                                           PaymentRule payment) {
  if (count < 1) Fail(ErrorCode::kEmptyCandidateSet, "candidate count < 1");
  return [count, argmin, payment = std::move(payment)](const Instance& instance,
                                                       Rng& rng) {
    std::vector<Policy> policies;
    for (int c = 0; c < count; ++c) {
      policies.push_back(SamplePolicy(instance.cfg.size(), 0.05, rng));
    }
    CandidateSet set(std::move(policies));
    return Mechanism{payment,
                     argmin ? TrainingRule::ArgminRestricted(std::move(set))
                            : TrainingRule::Restricted(std::move(set))};
  };
}

Json CheckReport::ToJson() const {
  Json j;
  j["suite"] = suite;
  j["trials"] = trials;
  j["max_violation"] = max_violation;
  j["tolerance"] = tolerance;
  j["passed"] = passed;
  j["worst_instance"] = worst_instance;
  if (!details.is_null()) j["details"] = details;
  return j;
}

CheckReport CheckDsic(const InstanceSampler& sampler,
                      const MechanismFactory& mechanism, int deviations,
                      const CheckOptions& options, double tolerance) {
  return RunTrials("dsic", options, tolerance, [&](int, Rng& rng) {
    const Instance inst = sampler.Sample(rng);
    const Mechanism mech = mechanism(inst, rng);
    const int n = static_cast<int>(inst.types.size());
    std::vector<double> truthful(n);
    for (int i = 0; i < n; ++i) {
      truthful[i] = EvaluateGroup(inst.cfg, inst.types, i, inst.types[i],
                                  mech.payment, mech.training)
                        .utility;
    }
    TrialResult out;
    for (int d = 0; d < deviations; ++d) {
      const int i = rng.UniformInt(0, n - 1);
      const GroupType dev = SampleDeviation(inst, i, rng);
      const std::vector<GroupType> reports = WithReport(inst.types, i, dev);
      const double u = EvaluateGroup(inst.cfg, reports, i, inst.types[i],
                                     mech.payment, mech.training)
                           .utility;
      if (u - truthful[i] > out.violation) {
        out.violation = u - truthful[i];
        out.witness = Witness(inst);
        out.witness["group"] = i;
        out.witness["reports"] = ToJson(reports);
        out.details = {{"truthful_utility", truthful[i]},
                       {"deviation_utility", u}};
      }
    }
    return out;
  });
}

CheckReport CheckIr(const InstanceSampler& sampler,
                    const MechanismFactory& mechanism,
                    const CheckOptions& options, double tolerance) {
  return RunTrials("ir", options, tolerance, [&](int, Rng& rng) {
    const Instance inst = sampler.Sample(rng);
    const Mechanism mech = mechanism(inst, rng);
    const GameOutcome outcome = RunGame(inst.cfg, inst.types, inst.types,
                                        mech.payment, mech.training);
    TrialResult out;
    for (size_t i = 0; i < inst.types.size(); ++i) {
      if (-outcome.utilities[i] > out.violation) {
        out.violation = -outcome.utilities[i];
        out.witness = Witness(inst);
        out.witness["group"] = i;
        out.details = {{"utility", outcome.utilities[i]},
                       {"payment", outcome.payments[i]}};
      }
    }
    return out;
  });
}

CheckReport CheckNonNegativePayments(const InstanceSampler& sampler,
                                     const MechanismFactory& mechanism,
                                     const CheckOptions& options,
                                     double tolerance) {
  return RunTrials("nonneg", options, tolerance, [&](int, Rng& rng) {
    const Instance inst = sampler.Sample(rng);
    const Mechanism mech = mechanism(inst, rng);
    const std::vector<double> p = PaymentAff(inst.cfg, inst.types, mech.training);
    TrialResult out;
    for (size_t i = 0; i < p.size(); ++i) {
      if (-p[i] > out.violation) {
        out.violation = -p[i];
        out.witness = Witness(inst);
        out.witness["group"] = i;
        out.details = {{"payment", p[i]}};
      }
    }
    return out;
  });
}

RewardModel NoiseModel::Perturb(const RewardModel& rm,
                                std::span<const double> u) const {
  std::vector<double> v(rm.values().begin(), rm.values().end());
  for (size_t x = 0; x < v.size(); ++x) {
    v[x] = std::max(0.0, v[x] + epsilon * u[x]);
  }
  return RewardModel::Unnormalized(std::move(v), rm.mode());
}

std::vector<double> NoiseModel::Draw(int k, Rng& rng) const {
  std::vector<double> u(k);
  for (double& x : u) x = rng.Uniform(-1.0, 1.0);
  return u;
}

namespace {

std::vector<GroupType> Noisy(std::span<const GroupType> reports,
                             const NoiseModel& noise,
                             const std::vector<std::vector<double>>& draws) {
  std::vector<GroupType> out;
  for (size_t i = 0; i < reports.size(); ++i) {
    out.push_back(GroupType{noise.Perturb(reports[i].rm, draws[i]), reports[i].w});
  }
  return out;
}

}  // namespace

CheckReport CheckApproxDsic(const InstanceSampler& sampler,
                            const MechanismFactory& mechanism,
                            const NoiseModel& noise, int samples,
                            int deviations, const CheckOptions& options,
                            double tolerance) {
  if (samples < 2) Fail(ErrorCode::kInvalidArgument, "need >= 2 samples");
  return RunTrials("approx-dsic", options, tolerance, [&](int, Rng& rng) {
    const Instance inst = sampler.Sample(rng);
    const Mechanism mech = mechanism(inst, rng);
    const int n = static_cast<int>(inst.types.size());
    const int k = inst.cfg.size();
    TrialResult out;
    for (int i = 0; i < n; ++i) {
      std::vector<GroupType> devs;
      for (int d = 0; d < deviations; ++d) devs.push_back(SampleDeviation(inst, i, rng));
      std::vector<std::vector<double>> gains(deviations, std::vector<double>(samples));
      for (int s = 0; s < samples; ++s) {
        std::vector<std::vector<double>> draws;
        for (int g = 0; g < n; ++g) draws.push_back(noise.Draw(k, rng));
        const double truthful =
            EvaluateGroup(inst.cfg, Noisy(inst.types, noise, draws), i,
                          inst.types[i], mech.payment, mech.training)
                .utility;
        for (int d = 0; d < deviations; ++d) {
          const std::vector<GroupType> reports =
              Noisy(WithReport(inst.types, i, devs[d]), noise, draws);
          gains[d][s] = EvaluateGroup(inst.cfg, reports, i, inst.types[i],
                                      mech.payment, mech.training)
                            .utility -
                        truthful;
        }
      }
      const double bound = 2.0 * inst.types[i].w * noise.epsilon;
      for (int d = 0; d < deviations; ++d) {
        double mean = 0.0;
        for (double g : gains[d]) mean += g;
        mean /= samples;
        double var = 0.0;
        for (double g : gains[d]) var += (g - mean) * (g - mean);
        const double se = std::sqrt(var / (samples - 1) / samples);
        const double violation = mean - bound - 3.0 * se;
        if (violation > out.violation) {
          out.violation = violation;
          out.witness = Witness(inst);
          out.witness["group"] = i;
          out.witness["deviation"] = ToJson(devs[d]);
          out.details = {{"mean_gain", mean}, {"standard_error", se},
                         {"bound", bound}};
        }
      }
    }
    return out;
  });
}

CheckReport CheckNoiseAsw(const InstanceSampler& sampler,
                          const MechanismFactory& mechanism,
                          const NoiseModel& noise, int draws, bool adversarial,
                          const CheckOptions& options, double tolerance) {
  return RunTrials("noise-asw", options, tolerance, [&](int, Rng& rng) {
    const Instance inst = sampler.Sample(rng);
    const Mechanism mech = mechanism(inst, rng);
    const int n = static_cast<int>(inst.types.size());
    const int k = inst.cfg.size();
    double total_w = 0.0;
    for (const GroupType& g : inst.types) total_w += g.w;
    const double bound = 2.0 * noise.epsilon * total_w;
    const double best =
        Asw(mech.training.Train(inst.cfg, inst.types).policy, inst.types, inst.cfg);

    TrialResult out;
    auto evaluate = [&](const std::vector<std::vector<double>>& u) {
      const std::vector<GroupType> noisy = Noisy(inst.types, noise, u);
      const double shortfall =
          best - Asw(mech.training.Train(inst.cfg, noisy).policy, inst.types, inst.cfg);
      if (shortfall - bound > out.violation) {
        out.violation = shortfall - bound;
        out.witness = Witness(inst);
        out.witness["noisy_reports"] = ToJson(noisy);
        out.details = {{"shortfall", shortfall}, {"bound", bound}};
      }
    };
    for (int d = 0; d < draws; ++d) {
      std::vector<std::vector<double>> u;
      for (int g = 0; g < n; ++g) u.push_back(noise.Draw(k, rng));
      evaluate(u);
    }
    if (adversarial && k <= 3) {
      // Each sign pattern applied to one group alone and to all groups.
      for (int pattern = 0; pattern < (1 << k); ++pattern) {
        std::vector<double> signs(k);
        for (int x = 0; x < k; ++x) signs[x] = (pattern >> x) & 1 ? 1.0 : -1.0;
        for (int target = -1; target < n; ++target) {
          std::vector<std::vector<double>> u(n, std::vector<double>(k, 0.0));
          for (int g = 0; g < n; ++g) {
            if (target < 0 || g == target) u[g] = signs;
          }
          evaluate(u);
        }
      }
    }
    return out;
  });
}

double CycleEdge(const GroupType& a, const Policy& psi_a, const GroupType& b,
                 const Policy& psi_b) {
  (void)a;
  return b.w * (Valuation(psi_b, b.rm) - Valuation(psi_a, b.rm));
}

namespace {

// Splits a closed walk into simple cycles and returns the most negative one
// together with its sum.
std::pair<std::vector<int>, double> MostNegativeSimpleCycle(
    const std::vector<int>& walk,
    const std::vector<std::vector<double>>& edge) {
  std::vector<int> stack;
  std::vector<int> best;
  double best_sum = std::numeric_limits<double>::infinity();
  auto consider = [&](std::vector<int> cycle) {
    double sum = 0.0;
    for (size_t j = 0; j < cycle.size(); ++j) {
      sum += edge[cycle[j]][cycle[(j + 1) % cycle.size()]];
    }
    if (sum < best_sum) {
      best_sum = sum;
      best = std::move(cycle);
    }
  };
  for (int v : walk) {
    auto it = std::find(stack.begin(), stack.end(), v);
    if (it != stack.end()) {
      consider(std::vector<int>(it, stack.end()));
      stack.erase(it, stack.end());
    }
    stack.push_back(v);
  }
  if (!stack.empty()) consider(stack);
  return {best, best_sum};
}

}  // namespace

CheckReport CheckCycleMonotonicity(const InstanceSampler& sampler,
                                   const MechanismFactory& mechanism,
                                   const CycleSpec& spec,
                                   const CheckOptions& options,
                                   double tolerance) {
  if (spec.max_length < 2) Fail(ErrorCode::kInvalidArgument, "max_length < 2");
  return RunTrials("cycle", options, tolerance, [&](int, Rng& rng) {
    const Instance inst = sampler.Sample(rng);
    const Mechanism mech = mechanism(inst, rng);
    const GameConfig& cfg = inst.cfg;

    std::vector<RewardModel> rms = {inst.types[0].rm};
    while (static_cast<int>(rms.size()) < spec.reward_points) {
      rms.push_back(SampleRewardModel(cfg.size(), cfg.mode, rng));
    }
    std::vector<GroupType> grid;
    for (const RewardModel& rm : rms) {
      for (int w : spec.sizes) {
        grid.push_back(GroupType{rm, std::clamp(w, 1, cfg.w_bar)});
      }
    }
    const int m = static_cast<int>(grid.size());
    std::vector<Policy> psi;
    for (const GroupType& t : grid) {
      psi.push_back(mech.training.Train(cfg, WithReport(inst.types, 0, t)).policy);
    }
    std::vector<std::vector<double>> edge(m, std::vector<double>(m));
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) edge[a][b] = CycleEdge(grid[a], psi[a], grid[b], psi[b]);
    }

    // Minimum closed walk through each start with at most max_length edges.
    // A negative closed walk contains a negative simple cycle no longer
    // than itself, so this covers every simple cycle exactly.
    const int len = spec.max_length;
    double exhaustive = 0.0;
    std::vector<int> worst_walk;
    std::vector<std::vector<int>> pred(len + 1, std::vector<int>(m, -1));
    for (int s = 0; s < m; ++s) {
      std::vector<double> cur(m);
      for (int v = 0; v < m; ++v) {
        cur[v] = edge[s][v];
        pred[1][v] = s;
      }
      for (int l = 2; l <= len; ++l) {
        std::vector<double> next(m, std::numeric_limits<double>::infinity());
        for (int u = 0; u < m; ++u) {
          for (int v = 0; v < m; ++v) {
            const double c = cur[u] + edge[u][v];
            if (c < next[v]) {
              next[v] = c;
              pred[l][v] = u;
            }
          }
        }
        cur.swap(next);
        if (cur[s] < exhaustive) {
          exhaustive = cur[s];
          worst_walk.assign(1, s);
          int v = s;
          for (int back = l; back >= 1; --back) {
            v = pred[back][v];
            worst_walk.push_back(v);
          }
          std::reverse(worst_walk.begin(), worst_walk.end());
        }
      }
    }

    double sampled = 0.0;
    std::vector<int> worst_sampled;
    auto cycle_sum = [&](const std::vector<int>& c) {
      double sum = 0.0;
      for (size_t j = 0; j < c.size(); ++j) sum += edge[c[j]][c[(j + 1) % c.size()]];
      return sum;
    };
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        const double sum = edge[a][b] + edge[b][a];
        if (sum < sampled) {
          sampled = sum;
          worst_sampled = {a, b};
        }
      }
    }
    for (int c = 0; c < spec.sampled_cycles; ++c) {
      std::vector<int> cycle(rng.UniformInt(2, len));
      for (int& v : cycle) v = rng.UniformInt(0, m - 1);
      const double sum = cycle_sum(cycle);
      if (sum < sampled) {
        sampled = sum;
        worst_sampled = cycle;
      }
    }

    TrialResult out;
    out.violation = 0.0 - std::min(exhaustive, sampled);
    out.witness = Witness(inst);
    std::vector<int> cycle;
    double cycle_value = 0.0;
    if (exhaustive <= sampled && !worst_walk.empty()) {
      worst_walk.pop_back();  // closing vertex repeats the start
      std::tie(cycle, cycle_value) = MostNegativeSimpleCycle(worst_walk, edge);
    } else if (!worst_sampled.empty()) {
      std::tie(cycle, cycle_value) = MostNegativeSimpleCycle(worst_sampled, edge);
    }
    Json types = Json::array();
    for (int v : cycle) types.push_back(ToJson(grid[v]));
    out.witness["cycle"] = types;
    out.details = {{"exhaustive_min", exhaustive},
                   {"sampled_min", sampled},
                   {"simple_cycle_sum", cycle_value},
                   {"grid_points", m}};
    return out;
  });
}

PathSums EstimatePaymentPath(const GameConfig& cfg,
                             std::span<const GroupType> opponents,
                             const GroupType& t, const GroupType& t_prime,
                             int steps, const TrainingRule& training) {
  if (steps < 1) Fail(ErrorCode::kInvalidArgument, "steps must be >= 1");
  if (t == t_prime) return PathSums{};
  std::vector<GroupType> nodes = {t};
  if (t.w == t_prime.w) {
    for (int s = 1; s < steps; ++s) {
      nodes.push_back(GroupType{Interpolate(t.rm, t_prime.rm, double(s) / steps), t.w});
    }
  } else {
    const RewardModel star = RewardModel::Uniform(cfg.size(), cfg.mode);
    for (int s = 1; s < steps; ++s) {
      nodes.push_back(GroupType{Interpolate(t.rm, star, double(s) / steps), t.w});
    }
    nodes.push_back(GroupType{star, t.w});
    nodes.push_back(GroupType{star, t_prime.w});
    for (int s = 1; s < steps; ++s) {
      nodes.push_back(
          GroupType{Interpolate(star, t_prime.rm, double(s) / steps), t_prime.w});
    }
  }
  nodes.push_back(t_prime);

  std::vector<GroupType> reports = {t};
  reports.insert(reports.end(), opponents.begin(), opponents.end());
  std::vector<Policy> psi;
  for (const GroupType& node : nodes) {
    reports[0] = node;
    psi.push_back(training.Train(cfg, reports).policy);
  }
  PathSums sums;
  for (size_t j = 0; j + 1 < nodes.size(); ++j) {
    sums.forward += CycleEdge(nodes[j], psi[j], nodes[j + 1], psi[j + 1]);
    sums.backward += CycleEdge(nodes[j + 1], psi[j + 1], nodes[j], psi[j]);
  }
  return sums;
}

CheckReport CheckPaymentPath(const InstanceSampler& sampler,
                             const TrainingRule& training,
                             const std::vector<int>& steps,
                             const CheckOptions& options, double final_bound) {
  if (steps.empty()) Fail(ErrorCode::kInvalidArgument, "no step counts");
  return RunTrials("payment-path", options, 0.0, [&](int, Rng& rng) {
    const Instance inst = sampler.Sample(rng);
    const GroupType t = inst.types[0];
    // A pair with t == t' has identically zero sums and says nothing.
    GroupType t_prime = t;
    while (t_prime == t) {
      t_prime = GroupType{SampleRewardModel(inst.cfg.size(), inst.cfg.mode, rng),
                          rng.UniformInt(1, inst.cfg.w_bar)};
    }
    const std::vector<GroupType> opponents = WithoutGroup(inst.types, 0);
    std::vector<double> gaps;
    for (int m : steps) {
      const PathSums s = EstimatePaymentPath(inst.cfg, opponents, t, t_prime, m, training);
      gaps.push_back(std::abs(s.forward + s.backward));
    }
    TrialResult out;
    out.violation = gaps.back() - final_bound;
    for (size_t j = 1; j < gaps.size(); ++j) {
      out.violation = std::max(out.violation, gaps[j] - gaps[j - 1] + 1e-12);
    }
    out.witness = Witness(inst);
    out.witness["t"] = ToJson(t);
    out.witness["t_prime"] = ToJson(t_prime);
    out.details = {{"steps", steps}, {"gaps", gaps}};
    return out;
  });
}

}  // namespace rlhf_game
