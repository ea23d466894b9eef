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

#ifndef RLHF_GAME_SERIALIZATION_H_
#define RLHF_GAME_SERIALIZATION_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "rlhf_game/core.h"

namespace rlhf_game {

using Json = nlohmann::ordered_json;

// Game encoding:
//   {"outcomes": K, "labels": [...], "initial": [...],
//    "divergence": {"kind": "kl" | "chi2" | "tv", "lambda": x},
//    "mode": "sum" | "max", "w_bar": n,
//    "tie_break": "valuation_lex" | "index"}
// Group encoding: {"rm": [...], "w": n}.
// Parse failures and invariant violations raise kConfigParse.
Json ToJson(const GameConfig& cfg);
GameConfig GameConfigFromJson(const Json& j);

Json ToJson(const GroupType& type);
// Reward models are validated against `mode`; never renormalized.
GroupType GroupTypeFromJson(const Json& j, NormMode mode);
Json ToJson(const std::vector<GroupType>& types);
std::vector<GroupType> GroupTypesFromJson(const Json& j, NormMode mode);

Json ToJson(const Policy& policy);
Policy PolicyFromJson(const Json& j);

std::string NormModeName(NormMode mode);
NormMode NormModeFromName(const std::string& name);

// Reads a JSON document from disk; kConfigParse on I/O or syntax errors.
Json ReadJsonFile(const std::string& path);

// 17 significant digits, enough to round-trip every double.
std::string FormatDouble(double value);

}  // namespace rlhf_game

#endif  // RLHF_GAME_SERIALIZATION_H_
