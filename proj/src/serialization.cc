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

#include "rlhf_game/serialization.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include "rlhf_game/errors.h"

namespace rlhf_game {
namespace {

// Runs `fn`, turning JSON type errors and invariant violations into
// kConfigParse with `what` as context.
template <class Fn>
auto Parse(const std::string& what, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const GameError& e) {
    if (e.code() == ErrorCode::kConfigParse) throw;
    Fail(ErrorCode::kConfigParse, what + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kConfigParse, what + ": " + e.what());
  }
}

DivergenceSpec DivergenceFromJson(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const double lambda = j.at("lambda").get<double>();
  if (kind == "kl") return DivergenceSpec::Kl(lambda);
  if (kind == "chi2") return DivergenceSpec::ChiSquared(lambda);
  if (kind == "tv") return DivergenceSpec::TotalVariation(lambda);
  Fail(ErrorCode::kConfigParse, "unknown divergence kind '" + kind + "'");
}

}  // namespace

std::string NormModeName(NormMode mode) {
  return mode == NormMode::kSumToOne ? "sum" : "max";
}

NormMode NormModeFromName(const std::string& name) {
  if (name == "sum") return NormMode::kSumToOne;
  if (name == "max") return NormMode::kMaxToOne;
  Fail(ErrorCode::kConfigParse, "unknown normalization mode '" + name + "'");
}

Json ToJson(const GameConfig& cfg) {
  if (!cfg.divergence.is_smooth() &&
      cfg.divergence.kind() != DivergenceKind::kTotalVariation) {
    Fail(ErrorCode::kUnsupported, "divergence has no config encoding");
  }
  if (cfg.divergence.kind() == DivergenceKind::kGenericSmooth) {
    Fail(ErrorCode::kUnsupported,
         "generic divergences carry code and cannot be serialized");
  }
  Json j;
  j["outcomes"] = cfg.size();
  if (!cfg.space.labels().empty()) j["labels"] = cfg.space.labels();
  j["initial"] = ToJson(cfg.initial);
  j["divergence"] = {
      {"kind", std::string(DivergenceKindName(cfg.divergence.kind()))},
      {"lambda", cfg.divergence.lambda()}};
  j["mode"] = NormModeName(cfg.mode);
  j["w_bar"] = cfg.w_bar;
  j["tie_break"] =
      cfg.tie_break == TieBreak::kValuationLex ? "valuation_lex" : "index";
  return j;
}

GameConfig GameConfigFromJson(const Json& j) {
  return Parse("game", [&] {
    const int k = j.at("outcomes").get<int>();
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    OutcomeSpace space(k, std::move(labels));
    Policy initial = j.contains("initial") ? PolicyFromJson(j.at("initial"))
                                           : Policy::Uniform(k);
    GameConfig cfg{std::move(space), std::move(initial),
                   DivergenceFromJson(j.at("divergence")),
                   NormModeFromName(j.value("mode", std::string("sum"))),
                   j.value("w_bar", 1), TieBreak::kValuationLex};
    const std::string tie = j.value("tie_break", std::string("valuation_lex"));
    if (tie == "index") {
      cfg.tie_break = TieBreak::kIndexOnly;
    } else if (tie != "valuation_lex") {
      Fail(ErrorCode::kConfigParse, "unknown tie_break '" + tie + "'");
    }
    cfg.Validate();
    return cfg;
  });
}

Json ToJson(const GroupType& type) {
  Json j;
  j["rm"] = std::vector<double>(type.rm.values().begin(), type.rm.values().end());
  j["w"] = type.w;
  return j;
}

GroupType GroupTypeFromJson(const Json& j, NormMode mode) {
  return Parse("group", [&] {
    return GroupType{
        RewardModel::Validate(j.at("rm").get<std::vector<double>>(), mode),
        j.at("w").get<int>()};
  });
}

Json ToJson(const std::vector<GroupType>& types) {
  Json j = Json::array();
  for (const GroupType& t : types) j.push_back(ToJson(t));
  return j;
}

std::vector<GroupType> GroupTypesFromJson(const Json& j, NormMode mode) {
  return Parse("groups", [&] {
    std::vector<GroupType> out;
    for (const Json& g : j) out.push_back(GroupTypeFromJson(g, mode));
    return out;
  });
}

Json ToJson(const Policy& policy) {
  return std::vector<double>(policy.probs().begin(), policy.probs().end());
}

Policy PolicyFromJson(const Json& j) {
  return Parse("policy", [&] { return Policy(j.get<std::vector<double>>()); });
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kConfigParse, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kConfigParse, path + ": " + e.what());
  }
}

std::string FormatDouble(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace rlhf_game
