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

#include "rlhf_game/divergence.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "rlhf_game/errors.h"

namespace rlhf_game {
namespace {

void RequirePositiveLambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    Fail(ErrorCode::kInvalidArgument, "lambda must be positive");
  }
}

void RequirePositive(double u) {
  if (!(u > 0.0)) {
    Fail(ErrorCode::kNonPositiveArgument,
         "f-divergence generator evaluated at " + std::to_string(u));
  }
}

}  // namespace

std::string_view DivergenceKindName(DivergenceKind kind) {
  switch (kind) {
    case DivergenceKind::kKl: return "kl";
    case DivergenceKind::kChiSquared: return "chi2";
    case DivergenceKind::kGenericSmooth: return "generic";
    case DivergenceKind::kTotalVariation: return "tv";
  }
  return "unknown";
}

DivergenceSpec DivergenceSpec::Kl(double lambda) {
  RequirePositiveLambda(lambda);
  return DivergenceSpec(DivergenceKind::kKl, lambda);
}

DivergenceSpec DivergenceSpec::ChiSquared(double lambda) {
  RequirePositiveLambda(lambda);
  return DivergenceSpec(DivergenceKind::kChiSquared, lambda);
}

DivergenceSpec DivergenceSpec::TotalVariation(double lambda) {
  RequirePositiveLambda(lambda);
  return DivergenceSpec(DivergenceKind::kTotalVariation, lambda);
}

DivergenceSpec DivergenceSpec::Generic(SmoothEvaluators evaluators,
                                       double lambda) {
  RequirePositiveLambda(lambda);
  if (!evaluators.f || !evaluators.f_prime || !evaluators.f_double_prime ||
      !evaluators.f_prime_inverse) {
    Fail(ErrorCode::kInvalidArgument, "generic divergence missing evaluators");
  }
  if (!(evaluators.strong_convexity > 0.0)) {
    Fail(ErrorCode::kInvalidArgument,
         "generic divergence needs a positive strong-convexity constant");
  }
  if (std::abs(evaluators.f(1.0)) > kSimplexTolerance) {
    Fail(ErrorCode::kInvalidArgument, "generic divergence has f(1) != 0");
  }
  // 121 points, ten per decade.
  for (int i = 0; i <= 120; ++i) {
    const double u = std::pow(10.0, -6.0 + i * 0.1);
    if (!(evaluators.f_double_prime(u) >= evaluators.strong_convexity)) {
      Fail(ErrorCode::kInvalidArgument,
           "generic divergence fails f'' >= alpha at u = " + std::to_string(u));
    }
  }
  DivergenceSpec spec(DivergenceKind::kGenericSmooth, lambda);
  spec.generic_ = std::make_shared<const SmoothEvaluators>(std::move(evaluators));
  return spec;
}

double DivergenceSpec::Value(double u) const {
  RequirePositive(u);
  switch (kind_) {
    case DivergenceKind::kKl: return lambda_ * u * std::log(u);
    case DivergenceKind::kChiSquared: return lambda_ * (u - 1.0) * (u - 1.0);
    case DivergenceKind::kTotalVariation: return lambda_ * std::abs(u - 1.0);
    case DivergenceKind::kGenericSmooth: return generic_->f(u);
  }
  return 0.0;
}

double DivergenceSpec::Derivative(double u) const {
  RequirePositive(u);
  switch (kind_) {
    case DivergenceKind::kKl: return lambda_ * (std::log(u) + 1.0);
    case DivergenceKind::kChiSquared: return 2.0 * lambda_ * (u - 1.0);
    case DivergenceKind::kGenericSmooth: return generic_->f_prime(u);
    case DivergenceKind::kTotalVariation: break;
  }
  Fail(ErrorCode::kUnsupported, "total variation has no derivative");
}

double DivergenceSpec::SecondDerivative(double u) const {
  RequirePositive(u);
  switch (kind_) {
    case DivergenceKind::kKl: return lambda_ / u;
    case DivergenceKind::kChiSquared: return 2.0 * lambda_;
    case DivergenceKind::kGenericSmooth: return generic_->f_double_prime(u);
    case DivergenceKind::kTotalVariation: break;
  }
  Fail(ErrorCode::kUnsupported, "total variation has no second derivative");
}

double DivergenceSpec::InverseDerivative(double y) const {
  switch (kind_) {
    case DivergenceKind::kKl: return std::exp(y / lambda_ - 1.0);
    case DivergenceKind::kChiSquared: {
      const double u = 1.0 + y / (2.0 * lambda_);
      if (!(u > 0.0)) {
        Fail(ErrorCode::kOutOfRange,
             "chi-squared f' has no preimage for " + std::to_string(y));
      }
      return u;
    }
    case DivergenceKind::kGenericSmooth: {
      const double u = generic_->f_prime_inverse(y);
      if (!(u > 0.0)) {
        Fail(ErrorCode::kOutOfRange,
             "generic f' has no preimage for " + std::to_string(y));
      }
      return u;
    }
    case DivergenceKind::kTotalVariation: break;
  }
  Fail(ErrorCode::kUnsupported, "total variation has no inverse derivative");
}

double DivergenceSpec::InverseDerivativeClamped(double y) const {
  switch (kind_) {
    case DivergenceKind::kKl: return std::exp(y / lambda_ - 1.0);
    case DivergenceKind::kChiSquared:
      return std::max(0.0, 1.0 + y / (2.0 * lambda_));
    case DivergenceKind::kGenericSmooth: {
      double u = 0.0;
      try {
        u = generic_->f_prime_inverse(y);
      } catch (const std::exception&) {
        return 0.0;
      }
      return u > 0.0 ? u : 0.0;
    }
    case DivergenceKind::kTotalVariation: break;
  }
  Fail(ErrorCode::kUnsupported, "total variation has no inverse derivative");
}

double Divergence(const DivergenceSpec& spec, std::span<const double> p,
                  std::span<const double> q) {
  if (p.size() != q.size()) {
    Fail(ErrorCode::kDimensionMismatch, "divergence of vectors of unequal size");
  }
  double out = 0.0;
  for (size_t x = 0; x < p.size(); ++x) out += q[x] * spec.Value(p[x] / q[x]);
  return out;
}

double Divergence(const DivergenceSpec& spec, const Policy& p,
                  const Policy& q) {
  return Divergence(spec, p.probs(), q.probs());
}

}  // namespace rlhf_game
