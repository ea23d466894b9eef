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

#ifndef RLHF_GAME_TYPES_H_
#define RLHF_GAME_TYPES_H_

#include <span>
#include <string>
#include <vector>

namespace rlhf_game {

// Tolerance for every simplex and normalization check.
inline constexpr double kSimplexTolerance = 1e-12;

// A finite set of K abstract outcomes (response sequences for a fixed prompt).
class OutcomeSpace {
 public:
  explicit OutcomeSpace(int size, std::vector<std::string> labels = {});

  int size() const { return size_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  int size_;
  std::vector<std::string> labels_;
};

enum class NormMode { kSumToOne, kMaxToOne };

// A non-negative reward vector over outcomes. Instances built through
// Validate() are normalized under their mode; Unnormalized() exists for the
// noisy-input path where only non-negativity is guaranteed.
class RewardModel {
 public:
  // Never renormalizes: returns the model iff the invariants already hold.
  static RewardModel Validate(std::vector<double> values, NormMode mode);
  static RewardModel Unnormalized(std::vector<double> values, NormMode mode);
  // The constant model: 1/K under kSumToOne, all ones under kMaxToOne.
  static RewardModel Uniform(int size, NormMode mode);

  std::span<const double> values() const { return values_; }
  double operator[](int x) const { return values_[x]; }
  int size() const { return static_cast<int>(values_.size()); }
  NormMode mode() const { return mode_; }
  bool normalized() const { return normalized_; }

  bool operator==(const RewardModel& other) const = default;

 private:
  RewardModel(std::vector<double> values, NormMode mode, bool normalized)
      : values_(std::move(values)), mode_(mode), normalized_(normalized) {}

  std::vector<double> values_;
  NormMode mode_;
  bool normalized_;
};

// A strictly positive probability vector over outcomes.
class Policy {
 public:
  explicit Policy(std::vector<double> probs);
  static Policy Uniform(int size);
  // Divides by the sum first; entries must already be positive.
  static Policy Normalize(std::vector<double> weights);

  std::span<const double> probs() const { return probs_; }
  double operator[](int x) const { return probs_[x]; }
  int size() const { return static_cast<int>(probs_.size()); }

  bool operator==(const Policy& other) const = default;

 private:
  std::vector<double> probs_;
};

// Private type of a group: its reward model and its size.
struct GroupType {
  RewardModel rm;
  int w = 1;

  bool operator==(const GroupType& other) const = default;
};

double SupNormDistance(std::span<const double> a, std::span<const double> b);

}  // namespace rlhf_game

#endif  // RLHF_GAME_TYPES_H_
