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

// Generated by tools/oracles/derive_values.py. Do not edit.
#ifndef RLHF_GAME_TESTS_GOLDEN_VALUES_H_
#define RLHF_GAME_TESTS_GOLDEN_VALUES_H_

namespace rlhf_game::golden {

inline constexpr double kKlPi0 = 0.7310585786300048792511592;
inline constexpr double kKlPi1 = 0.2689414213699951207488408;
inline constexpr double kKlMu = -0.3798854930417224753682366;
inline constexpr double kKlDivergence = 0.1109440716717273546193959;
inline constexpr double kKlAsw = 0.6201145069582775246317634;
inline constexpr double kKlT0 = 0.2689414213699951207488408;
inline constexpr double kKlT1 = -0.7310585786300048792511592;
inline constexpr double kKlValueAtE = 2.718281828459045235360287;
inline constexpr double kChi2Pi0 = 0.6250000000000000000000000;
inline constexpr double kChi2Pi1 = 0.3750000000000000000000000;
inline constexpr double kChi2Mu = 0.5000000000000000000000000;
inline constexpr double kChi2Divergence = 0.06250000000000000000000000;
inline constexpr double kChi2T0 = 0.2500000000000000000000000;
inline constexpr double kChi2T1 = -0.2500000000000000000000000;
inline constexpr double kOpposedPayment = 0.1201145069582775246317634;
inline constexpr double kOpposedUtility = 0.3798854930417224753682366;
inline constexpr double kH1Payment = 0.3680642071684970699106821;
inline constexpr double kRestrictedAsw0 = 0.5319357928315029300893179;
inline constexpr double kRestrictedAsw1 = -0.2680642071684970699106821;
inline constexpr double kKlLambda100Shift = 0.002499979166874997943926839;

}  // namespace rlhf_game::golden

#endif  // RLHF_GAME_TESTS_GOLDEN_VALUES_H_
