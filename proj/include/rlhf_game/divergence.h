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

#ifndef RLHF_GAME_DIVERGENCE_H_
#define RLHF_GAME_DIVERGENCE_H_

#include <functional>
#include <memory>
#include <span>
#include <string_view>

#include "rlhf_game/types.h"

namespace rlhf_game {

enum class DivergenceKind { kKl, kChiSquared, kGenericSmooth, kTotalVariation };

std::string_view DivergenceKindName(DivergenceKind kind);

// User-supplied generator f of a smooth f-divergence. The evaluators must be
// pure and re-entrant. f_prime_inverse may throw or return a non-positive
// value for arguments outside the range of f'.
struct SmoothEvaluators {
  std::function<double(double)> f;
  std::function<double(double)> f_prime;
  std::function<double(double)> f_double_prime;
  std::function<double(double)> f_prime_inverse;
  double strong_convexity = 0.0;
};

// The regularizer D_f(p||q) = sum_x q(x) f(p(x)/q(x)).
//
//   KL          f(u) = lambda u ln u
//   ChiSquared  f(u) = lambda (u - 1)^2
//   Generic     caller-supplied, strongly convex and C^2
//   TotalVar    f(u) = lambda |u - 1|; value only, no derivatives, so the
//               exact solvers reject it and only the grid oracle accepts it.
class DivergenceSpec {
 public:
  static DivergenceSpec Kl(double lambda);
  static DivergenceSpec ChiSquared(double lambda);
  static DivergenceSpec TotalVariation(double lambda);
  // Spot-checks f(1) = 0 and f'' >= strong_convexity on a log grid over
  // [1e-6, 1e6].
  static DivergenceSpec Generic(SmoothEvaluators evaluators, double lambda);

  DivergenceKind kind() const { return kind_; }
  double lambda() const { return lambda_; }
  bool is_smooth() const { return kind_ != DivergenceKind::kTotalVariation; }

  double Value(double u) const;
  double Derivative(double u) const;
  double SecondDerivative(double u) const;
  // Inverse of f'; throws kOutOfRange outside the range of f'.
  double InverseDerivative(double y) const;
  // max(0, (f')^{-1}(y)) with out-of-range arguments mapped to 0.
  double InverseDerivativeClamped(double y) const;

 private:
  DivergenceSpec(DivergenceKind kind, double lambda)
      : kind_(kind), lambda_(lambda) {}

  DivergenceKind kind_;
  double lambda_;
  std::shared_ptr<const SmoothEvaluators> generic_;
};

double Divergence(const DivergenceSpec& spec, std::span<const double> p,
                  std::span<const double> q);
double Divergence(const DivergenceSpec& spec, const Policy& p, const Policy& q);

}  // namespace rlhf_game

#endif  // RLHF_GAME_DIVERGENCE_H_
