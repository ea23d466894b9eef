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

#include "rlhf_game/types.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "rlhf_game/errors.h"

namespace rlhf_game {
namespace {

std::string Describe(double value) {
  std::ostringstream out;
  out.precision(17);
  out << value;
  return out.str();
}

void CheckNonNegative(std::span<const double> values) {
  for (size_t x = 0; x < values.size(); ++x) {
    if (!(values[x] >= 0.0) || !std::isfinite(values[x])) {
      Fail(ErrorCode::kNegativeEntry, "reward entry " + std::to_string(x) +
                                          " is " + Describe(values[x]));
    }
  }
}

}  // namespace

OutcomeSpace::OutcomeSpace(int size, std::vector<std::string> labels)
    : size_(size), labels_(std::move(labels)) {
  if (size_ < 2) {
    Fail(ErrorCode::kInvalidArgument, "outcome space needs at least 2 outcomes");
  }
  if (!labels_.empty() && static_cast<int>(labels_.size()) != size_) {
    Fail(ErrorCode::kDimensionMismatch,
         "expected " + std::to_string(size_) + " labels, got " +
             std::to_string(labels_.size()));
  }
}

RewardModel RewardModel::Validate(std::vector<double> values, NormMode mode) {
  if (values.empty()) {
    Fail(ErrorCode::kDimensionMismatch, "empty reward model");
  }
  CheckNonNegative(values);
  if (mode == NormMode::kSumToOne) {
    const double sum = std::accumulate(values.begin(), values.end(), 0.0);
    if (std::abs(sum - 1.0) > kSimplexTolerance) {
      Fail(ErrorCode::kNormalizationViolated,
           "sum-normalized reward sums to " + Describe(sum));
    }
  } else {
    const double max = *std::max_element(values.begin(), values.end());
    if (std::abs(max - 1.0) > kSimplexTolerance) {
      Fail(ErrorCode::kNormalizationViolated,
           "max-normalized reward has maximum " + Describe(max));
    }
  }
  return RewardModel(std::move(values), mode, true);
}

RewardModel RewardModel::Unnormalized(std::vector<double> values,
                                      NormMode mode) {
  if (values.empty()) {
    Fail(ErrorCode::kDimensionMismatch, "empty reward model");
  }
  CheckNonNegative(values);
  return RewardModel(std::move(values), mode, false);
}

RewardModel RewardModel::Uniform(int size, NormMode mode) {
  const double value = mode == NormMode::kSumToOne ? 1.0 / size : 1.0;
  return RewardModel(std::vector<double>(size, value), mode, true);
}

Policy::Policy(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) Fail(ErrorCode::kDimensionMismatch, "empty policy");
  double sum = 0.0;
  for (size_t x = 0; x < probs_.size(); ++x) {
    if (!(probs_[x] > 0.0) || !std::isfinite(probs_[x])) {
      Fail(ErrorCode::kInvalidArgument, "policy entry " + std::to_string(x) +
                                            " is not strictly positive (" +
                                            Describe(probs_[x]) + ")");
    }
    sum += probs_[x];
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    Fail(ErrorCode::kNormalizationViolated,
         "policy sums to " + Describe(sum));
  }
}

Policy Policy::Uniform(int size) {
  return Policy(std::vector<double>(size, 1.0 / size));
}

Policy Policy::Normalize(std::vector<double> weights) {
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& p : weights) p /= sum;
  return Policy(std::move(weights));
}

double SupNormDistance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    Fail(ErrorCode::kDimensionMismatch, "sup-norm of vectors of unequal size");
  }
  double out = 0.0;
  for (size_t x = 0; x < a.size(); ++x) {
    out = std::max(out, std::abs(a[x] - b[x]));
  }
  return out;
}

}  // namespace rlhf_game
