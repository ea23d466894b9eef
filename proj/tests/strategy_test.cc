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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "golden_values.h"
#include "rlhf_game/errors.h"
#include "rlhf_game/mechanism.h"
#include "rlhf_game/rng.h"
#include "test_util.h"

namespace rlhf_game {
namespace {

using testing::Group;
using testing::MakeConfig;
using testing::RandomReports;
using testing::RandomReward;
using testing::RandomSimplex;

ErrorCode CodeOf(const auto& fn) {
  try {
    fn();
  } catch (const GameError& e) {
    return e.code();
  }
  FAIL("expected a GameError");
  return ErrorCode::kInvalidArgument;
}

std::vector<double> Values(const RewardModel& rm) {
  return {rm.values().begin(), rm.values().end()};
}

void CheckNear(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  REQUIRE(a.size() == b.size());
  for (size_t x = 0; x < a.size(); ++x) CHECK(std::abs(a[x] - b[x]) <= tol);
}

TEST_CASE("epsilon shift examples") {
  const auto sum = RewardModel::Validate({0.6, 0.4}, NormMode::kSumToOne);
  CheckNear(Values(EpsilonShiftReward(sum, 0.1)), {0.7, 0.3}, 1e-15);
  const auto max = RewardModel::Validate({1.0, 0.3}, NormMode::kMaxToOne);
  CheckNear(Values(EpsilonShiftReward(max, 0.1)), {1.0, 0.2}, 1e-15);
  const auto flat = RewardModel::Validate({0.5, 0.5}, NormMode::kSumToOne);
  CHECK(CodeOf([&] { EpsilonShiftReward(flat, 0.01); }) == ErrorCode::kDegeneratePreference);
  CHECK(CodeOf([&] { EpsilonShiftReward(max, 0.3); }) == ErrorCode::kEpsilonTooLarge);
  CHECK(CodeOf([&] { EpsilonShiftReward(sum, 0.4); }) == ErrorCode::kEpsilonTooLarge);
  CheckNear(Values(CappedEpsilonShiftReward(max, 0.5)), {1.0, 0.0}, 0.0);
  CHECK(EpsilonShiftBound(sum) == doctest::Approx(0.4));
}

TEST_CASE("blend examples") {
  const auto rm = RewardModel::Validate({1, 0}, NormMode::kMaxToOne);
  const std::vector<GroupType> opp = {Group({0, 1}, 1)};
  CHECK(BlendReward(rm, opp, 1.0, NormMode::kMaxToOne) == rm);
  CheckNear(Values(BlendReward(rm, opp, 0.5, NormMode::kMaxToOne)), {1, 1}, 0.0);
  const auto sum = RewardModel::Validate({0.8, 0.2}, NormMode::kSumToOne);
  const std::vector<GroupType> sum_opp = {Group({0.2, 0.8}, 1, NormMode::kSumToOne)};
  CheckNear(Values(BlendReward(sum, sum_opp, 2.0, NormMode::kSumToOne)), {1, 0}, 1e-15);
  // Opponent weights enter the mean.
  const std::vector<GroupType> weighted = {Group({0.2, 0.8}, 3, NormMode::kSumToOne),
                                           Group({0.8, 0.2}, 1, NormMode::kSumToOne)};
  CheckNear(Values(BlendReward(sum, weighted, 0.0, NormMode::kSumToOne)), {0.35, 0.65}, 1e-15);
  // raw = -2 (1, 1) + 3 (0.5, 0.5) = (-0.5, -0.5).
  const auto ones = RewardModel::Validate({1, 1}, NormMode::kMaxToOne);
  const std::vector<GroupType> split = {Group({1, 0}, 1), Group({0, 1}, 1)};
  CHECK(CodeOf([&] { BlendReward(ones, split, -2.0, NormMode::kMaxToOne); }) ==
        ErrorCode::kAllZeroAfterClamp);
}

TEST_CASE("size scale examples") {
  const auto rm = RewardModel::Validate({1, 0}, NormMode::kMaxToOne);
  CHECK(SizeScaleType({rm, 5}, 1.0, 10).w == 5);
  CHECK(SizeScaleType({rm, 3}, 2.4, 10).w == 7);
  CHECK(SizeScaleType({rm, 7}, 3.0, 10).w == 10);
  CHECK(SizeScaleType({rm, 1}, 0.2, 10).w == 1);
  CHECK(SizeScaleType({rm, 3}, 2.4, 10).rm == rm);
}

TEST_CASE("identity strategies are exact") {
  Rng rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = rng.UniformInt(2, 6);
    const auto mode = trial % 2 ? NormMode::kSumToOne : NormMode::kMaxToOne;
    const GameConfig cfg = MakeConfig(RandomSimplex(k, rng), DivergenceSpec::Kl(1), mode, 8);
    const GroupType truth{RandomReward(k, mode, rng), rng.UniformInt(1, 8)};
    const auto opp = RandomReports(2, k, mode, 8, rng);
    CHECK(ApplyStrategy(Truthful{}, truth, opp, cfg) == truth);
    CHECK(ApplyStrategy(Blend{1.0}, truth, opp, cfg) == truth);
    CHECK(ApplyStrategy(SizeScale{1.0}, truth, opp, cfg) == truth);
  }
}

TEST_CASE("epsilon shift preserves normalization") {
  Rng rng(52);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = rng.UniformInt(2, 8);
    const auto mode = trial % 2 ? NormMode::kSumToOne : NormMode::kMaxToOne;
    const RewardModel rm = RandomReward(k, mode, rng);
    const double eps = rng.Uniform(0.0, 1.0) * EpsilonShiftBound(rm);
    if (!(eps > 0.0)) continue;
    const RewardModel shifted = EpsilonShiftReward(rm, eps);
    CHECK(shifted.normalized());
    int changed = 0;
    for (int x = 0; x < k; ++x) changed += shifted[x] != rm[x];
    CHECK(changed == (mode == NormMode::kSumToOne ? 2 : 1));
  }
}

TEST_CASE("t function examples") {
  const GameConfig kl = MakeConfig({0.5, 0.5}, DivergenceSpec::Kl(1));
  const std::vector<GroupType> one = {Group({1, 0}, 1)};
  const auto t = TFunction(kl, one, 0);
  CHECK(t[0] == doctest::Approx(golden::kKlT0).epsilon(1e-13));
  CHECK(t[1] == doctest::Approx(golden::kKlT1).epsilon(1e-13));

  const GameConfig chi = MakeConfig({0.5, 0.5}, DivergenceSpec::ChiSquared(1));
  const auto t2 = TFunction(chi, one, 0);
  CHECK(t2[0] == doctest::Approx(golden::kChi2T0).epsilon(1e-14));
  CHECK(t2[1] == doctest::Approx(golden::kChi2T1).epsilon(1e-14));

  const std::vector<GroupType> flat = {{RewardModel::Uniform(2, NormMode::kMaxToOne), 1},
                                       Group({1, 0}, 2)};
  for (double v : TFunction(kl, flat, 0)) CHECK(v == 0.0);
  CHECK_THROWS_AS(TFunction(kl, one, 1), GameError);
}

TEST_CASE("kl t function equals the centred reward over lambda") {
  Rng rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = rng.UniformInt(2, 6);
    const auto mode = trial % 2 ? NormMode::kSumToOne : NormMode::kMaxToOne;
    const double lambda = rng.Uniform(0.3, 3.0);
    const GameConfig cfg = MakeConfig(RandomSimplex(k, rng), DivergenceSpec::Kl(lambda), mode);
    const auto reports = RandomReports(rng.UniformInt(1, 3), k, mode, 5, rng);
    const int i = rng.UniformInt(0, static_cast<int>(reports.size()) - 1);
    const auto t = TFunction(cfg, reports, i);
    const Policy pi = SolveKl(cfg, reports).policy;
    const double v = Valuation(pi, reports[i].rm);
    for (int z = 0; z < k; ++z) {
      CHECK(std::abs(t[z] - (reports[i].rm[z] - v) / lambda) <= 1e-10);
    }
  }
}

TEST_CASE("prescribed deviations raise valuation in the direction of t") {
  Rng rng(54);
  const TrainingRule exact = TrainingRule::Exact();
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int k = rng.UniformInt(2, 4);
    const auto mode = trial % 2 ? NormMode::kSumToOne : NormMode::kMaxToOne;
    const GameConfig cfg = MakeConfig(RandomSimplex(k, rng), DivergenceSpec::Kl(1), mode, 3);
    const auto reports = RandomReports(rng.UniformInt(1, 3), k, mode, 3, rng);
    const int i = rng.UniformInt(0, static_cast<int>(reports.size()) - 1);
    const Policy pi = exact.Train(cfg, reports).policy;
    const auto t = TFunction(cfg, reports, i);
    const double v0 = Valuation(pi, reports[i].rm);
    for (int x = 0; x < k; ++x) {
      if (std::abs(t[x]) < 0.01) continue;
      const auto dev = PrescribedDeviation(cfg, reports[i].rm, pi, x, t[x], 1e-4);
      if (!dev) continue;
      const auto moved = WithReport(reports, i, {*dev, reports[i].w});
      const double v1 = Valuation(exact.Train(cfg, moved).policy, reports[i].rm);
      CHECK(v1 > v0);
      ++checked;
    }
  }
  CHECK(checked >= 20);
}

TEST_CASE("best response") {
  Rng rng(55);
  const TrainingRule exact = TrainingRule::Exact();
  const SearchSpec search = SearchSpec::Default();
  int zero_gains = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int k = rng.UniformInt(2, 4);
    const auto mode = trial % 2 ? NormMode::kSumToOne : NormMode::kMaxToOne;
    const GameConfig cfg = MakeConfig(RandomSimplex(k, rng), DivergenceSpec::Kl(1), mode, 5);
    auto reports = RandomReports(rng.UniformInt(1, 3), k, mode, 5, rng);
    const BestResponse aff =
        FindBestResponse(cfg, reports, 0, reports[0], PaymentRule::AffineMaximizer(), exact,
                         search, 2);
    CHECK(aff.gain <= 1e-9);
    CHECK(aff.gain >= 0.0);

    // Strictly positive rewards with a strict favourite: a small shift pays.
    std::vector<double> rm(k);
    for (double& x : rm) x = rng.Uniform(0.2, 0.9);
    rm[0] = 1.0;
    if (mode == NormMode::kSumToOne) {
      double s = 0.0;
      for (double x : rm) s += x;
      for (double& x : rm) x /= s;
    }
    reports[0].rm = RewardModel::Validate(rm, mode);
    const BestResponse zero =
        FindBestResponse(cfg, reports, 0, reports[0], PaymentRule::Zero(), exact, search, 2);
    CHECK(zero.gain > 0.0);

    reports[0].rm = RewardModel::Uniform(k, mode);
    const BestResponse flat =
        FindBestResponse(cfg, reports, 0, reports[0], PaymentRule::Zero(), exact, search, 2);
    zero_gains += std::abs(flat.gain) <= 1e-15;
  }
  CHECK(zero_gains == 20);
}

TEST_CASE("best response is independent of worker count") {
  Rng rng(56);
  const GameConfig cfg = MakeConfig(RandomSimplex(3, rng), DivergenceSpec::Kl(1),
                                    NormMode::kSumToOne, 5);
  const auto reports = RandomReports(3, 3, NormMode::kSumToOne, 5, rng);
  const auto run = [&](int workers) {
    return FindBestResponse(cfg, reports, 1, reports[1], PaymentRule::Zero(),
                            TrainingRule::Exact(), SearchSpec::Default(), workers);
  };
  const BestResponse one = run(1);
  for (int workers : {2, 8}) {
    const BestResponse other = run(workers);
    CHECK(other.gain == one.gain);
    CHECK(other.report == one.report);
    CHECK(StrategyName(other.strategy) == StrategyName(one.strategy));
  }
}

TEST_CASE("misreport gain on synthetic instances") {
  Rng rng(57);
  const TrainingRule exact = TrainingRule::Exact();
  for (int trial = 0; trial < 20; ++trial) {
    const GameConfig cfg = MakeConfig(std::vector<double>(10, 0.1), DivergenceSpec::Kl(1),
                                      NormMode::kSumToOne, 10);
    const auto types = RandomReports(5, 10, NormMode::kSumToOne, 10, rng);
    const MisreportDelta none =
        MisreportGain(cfg, types, types, 0, Truthful{}, PaymentRule::Zero(), exact);
    CHECK(none.valuation == 0.0);
    CHECK(none.utility == 0.0);
    const EpsilonShift shift{0.01, true};
    const MisreportDelta free =
        MisreportGain(cfg, types, types, 0, shift, PaymentRule::Zero(), exact);
    CHECK(free.valuation > 0.0);
    const MisreportDelta paid =
        MisreportGain(cfg, types, types, 0, shift, PaymentRule::AffineMaximizer(), exact);
    CHECK(paid.utility < 0.0);
    CHECK(paid.valuation == free.valuation);
  }
}

}  // namespace
}  // namespace rlhf_game
