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

#include <vector>

#include "doctest.h"
#include "golden_values.h"
#include "rlhf_game/errors.h"
#include "rlhf_game/rng.h"
#include "rlhf_game/types.h"

namespace rlhf_game {
namespace {

GameConfig KlConfig(std::vector<double> initial, double lambda,
                    NormMode mode = NormMode::kMaxToOne, int w_bar = 5) {
  const int k = static_cast<int>(initial.size());
  return GameConfig{OutcomeSpace(k), Policy(std::move(initial)),
                    DivergenceSpec::Kl(lambda), mode, w_bar};
}

std::vector<double> RandomSimplex(int k, Rng& rng) {
  std::vector<double> v(k);
  double total = 0.0;
  for (double& x : v) total += (x = rng.Uniform(0.05, 1.0));
  for (double& x : v) x /= total;
  return v;
}

ErrorCode CodeOf(const auto& fn) {
  try {
    fn();
  } catch (const GameError& e) {
    return e.code();
  }
  FAIL("expected a GameError");
  return ErrorCode::kInvalidArgument;
}

TEST_CASE("reward model validation") {
  CHECK(RewardModel::Validate({0.5, 0.5}, NormMode::kSumToOne).normalized());
  CHECK(RewardModel::Validate({1.0, 0.3}, NormMode::kMaxToOne).normalized());
  CHECK(CodeOf([] { RewardModel::Validate({0.7, 0.7}, NormMode::kMaxToOne); }) ==
        ErrorCode::kNormalizationViolated);
  CHECK(CodeOf([] { RewardModel::Validate({1.2, -0.2}, NormMode::kSumToOne); }) ==
        ErrorCode::kNegativeEntry);
  CHECK(CodeOf([] { RewardModel::Validate({0.5, 0.6}, NormMode::kSumToOne); }) ==
        ErrorCode::kNormalizationViolated);
}

TEST_CASE("policy and outcome space invariants") {
  CHECK(CodeOf([] { Policy({1.0, 0.0}); }) == ErrorCode::kInvalidArgument);
  CHECK_THROWS_AS(Policy({0.5, 0.6}), GameError);
  CHECK_THROWS_AS(OutcomeSpace(1), GameError);
  CHECK_THROWS_AS(OutcomeSpace(2, {"a"}), GameError);
  CHECK(Policy::Uniform(4)[2] == doctest::Approx(0.25));
}

TEST_CASE("valuation examples") {
  CHECK(Valuation(Policy({0.5, 0.5}),
                  RewardModel::Validate({1, 0}, NormMode::kMaxToOne)) == 0.5);
  const Policy kl({golden::kKlPi0, golden::kKlPi1});
  CHECK(Valuation(kl, RewardModel::Validate({1, 0}, NormMode::kMaxToOne)) ==
        doctest::Approx(golden::kKlPi0).epsilon(1e-15));
  CHECK(Valuation(Policy({0.2, 0.3, 0.5}),
                  RewardModel::Validate({0.5, 0.3, 0.2}, NormMode::kSumToOne)) ==
        doctest::Approx(0.29).epsilon(1e-14));
  CHECK(CodeOf([] {
          Valuation(Policy({0.5, 0.5}),
                    RewardModel::Validate({1, 0, 0}, NormMode::kMaxToOne));
        }) == ErrorCode::kDimensionMismatch);
}

TEST_CASE("asw examples") {
  const GameConfig cfg = KlConfig({0.5, 0.5}, 1.0);
  const std::vector<GroupType> one = {
      {RewardModel::Validate({1, 0}, NormMode::kMaxToOne), 1}};
  const Policy kl({golden::kKlPi0, golden::kKlPi1});
  CHECK(Asw(kl, one, cfg) == doctest::Approx(golden::kKlAsw).epsilon(1e-14));
  CHECK(AswMinusI(kl, one, 0, cfg) ==
        doctest::Approx(-golden::kKlDivergence).epsilon(1e-13));
  CHECK(Asw(cfg.initial, std::vector<GroupType>{}, cfg) == 0.0);
  CHECK(AswMinusI(cfg.initial, one, 0, cfg) == 0.0);
  CHECK(Asw(cfg.initial, one, cfg) == 0.5);
  CHECK(CodeOf([&] { AswMinusI(kl, one, 1, cfg); }) ==
        ErrorCode::kIndexOutOfRange);

  const std::vector<GroupType> two = {
      {RewardModel::Validate({1, 0}, NormMode::kMaxToOne), 1},
      {RewardModel::Validate({0, 1}, NormMode::kMaxToOne), 1}};
  const double d = Divergence(cfg.divergence, kl, cfg.initial);
  CHECK(AswMinusI(kl, two, 0, cfg) == doctest::Approx(golden::kKlPi1 - d));
}

TEST_CASE("report validation") {
  const GameConfig cfg = KlConfig({0.5, 0.5}, 1.0, NormMode::kMaxToOne, 3);
  const auto rm = RewardModel::Validate({1, 0}, NormMode::kMaxToOne);
  CHECK_NOTHROW(ValidateReports(cfg, std::vector<GroupType>{{rm, 3}}));
  CHECK_THROWS_AS(ValidateReports(cfg, std::vector<GroupType>{{rm, 4}}),
                  GameError);
  CHECK_THROWS_AS(ValidateReports(cfg, std::vector<GroupType>{{rm, 0}}),
                  GameError);
  const auto sum = RewardModel::Validate({1, 0}, NormMode::kSumToOne);
  CHECK_THROWS_AS(ValidateReports(cfg, std::vector<GroupType>{{sum, 1}}),
                  GameError);
}

TEST_CASE("valuation is linear in the policy") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = rng.UniformInt(2, 6);
    const std::vector<double> p = RandomSimplex(k, rng);
    const std::vector<double> q = RandomSimplex(k, rng);
    const std::vector<double> rm = RandomSimplex(k, rng);
    const double a = rng.Uniform();
    std::vector<double> mix(k);
    for (int x = 0; x < k; ++x) mix[x] = a * p[x] + (1 - a) * q[x];
    const double lhs = Valuation(mix, rm);
    const double rhs = a * Valuation(p, rm) + (1 - a) * Valuation(q, rm);
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("asw decomposes over groups") {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = rng.UniformInt(2, 5);
    const GameConfig cfg = KlConfig(RandomSimplex(k, rng), rng.Uniform(0.5, 2),
                                    NormMode::kSumToOne, 5);
    std::vector<GroupType> reports;
    const int n = rng.UniformInt(1, 4);
    for (int i = 0; i < n; ++i) {
      reports.push_back({RewardModel::Validate(RandomSimplex(k, rng),
                                               NormMode::kSumToOne),
                         rng.UniformInt(1, 5)});
    }
    const Policy p(RandomSimplex(k, rng));
    for (int i = 0; i < n; ++i) {
      const double lhs = Asw(p, reports, cfg);
      const double rhs = AswMinusI(p, reports, i, cfg) +
                         reports[i].w * Valuation(p, reports[i].rm);
      CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
  }
}

TEST_CASE("constant reward models value every policy equally") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = rng.UniformInt(2, 6);
    const Policy p(RandomSimplex(k, rng));
    CHECK(Valuation(p, RewardModel::Uniform(k, NormMode::kMaxToOne)) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(Valuation(p, RewardModel::Uniform(k, NormMode::kSumToOne)) ==
          doctest::Approx(1.0 / k).epsilon(1e-14));
  }
}

TEST_CASE("report list helpers") {
  const auto a = RewardModel::Validate({1, 0}, NormMode::kMaxToOne);
  const auto b = RewardModel::Validate({0, 1}, NormMode::kMaxToOne);
  const std::vector<GroupType> reports = {{a, 1}, {b, 2}, {a, 3}};
  const auto without = WithoutGroup(reports, 1);
  REQUIRE(without.size() == 2);
  CHECK(without[1].w == 3);
  const auto replaced = WithReport(reports, 0, {b, 4});
  CHECK(replaced[0] == GroupType{b, 4});
  CHECK(replaced[2] == reports[2]);
}

}  // namespace
}  // namespace rlhf_game
