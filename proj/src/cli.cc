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

#include "rlhf_game/cli.h"

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "rlhf_game/errors.h"
#include "rlhf_game/experiments.h"

namespace rlhf_game {
namespace {

// Wraps JSON access errors as kConfigParse.
template <class Fn>
auto ParseField(const std::string& what, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kConfigParse, what + ": " + e.what());
  }
}

DivergenceKind KindFromName(const std::string& name) {
  if (name == "kl") return DivergenceKind::kKl;
  if (name == "chi2") return DivergenceKind::kChiSquared;
  Fail(ErrorCode::kConfigParse, "sampler kinds must be kl or chi2, got '" + name + "'");
}

SweepSpec SweepSpecFromJson(const Json& j) {
  return ParseField("sweep", [&] {
    SweepSpec spec;
    spec.group = j.value("group", 0);
    if (j.contains("alpha")) spec.alphas = j.at("alpha").get<std::vector<double>>();
    if (j.contains("beta")) spec.betas = j.at("beta").get<std::vector<double>>();
    return spec;
  });
}

SynthSpec SynthSpecFromJson(const Json& j) {
  return ParseField("synth", [&] {
    SynthSpec spec;
    spec.groups = j.value("groups", spec.groups);
    spec.outcomes = j.value("outcomes", spec.outcomes);
    spec.w_max = j.value("w_max", spec.w_max);
    spec.lambda = j.value("lambda", spec.lambda);
    spec.mode = NormModeFromName(j.value("mode", std::string("sum")));
    if (j.contains("epsilons")) {
      spec.epsilons = j.at("epsilons").get<std::vector<double>>();
    }
    spec.samples = j.value("samples", spec.samples);
    spec.cap = j.value("cap", spec.cap);
    return spec;
  });
}

// Reads the game-level parts of a config used by solve and sweep.
struct GameSetup {
  GameConfig cfg;
  std::vector<GroupType> types;
  std::vector<GroupType> reports;
  TrainingRule training;
  PaymentRule payment;
};

GameSetup GameSetupFromJson(const Json& config) {
  if (!config.contains("game")) Fail(ErrorCode::kConfigParse, "missing 'game'");
  GameConfig cfg = GameConfigFromJson(config.at("game"));
  if (!config.contains("groups")) Fail(ErrorCode::kConfigParse, "missing 'groups'");
  std::vector<GroupType> types = GroupTypesFromJson(config.at("groups"), cfg.mode);
  std::vector<GroupType> reports =
      config.contains("reports") ? GroupTypesFromJson(config.at("reports"), cfg.mode)
                                 : types;
  const Json candidates = config.value("candidates", Json());
  TrainingRule training =
      TrainingRuleFromJson(config.value("solver", Json::object()), candidates);
  PaymentRule payment =
      PaymentRuleFromJson(config.value("payment", Json::object()), candidates);
  try {
    ValidateReports(cfg, types);
    ValidateReports(cfg, reports);
  } catch (const GameError& e) {
    Fail(ErrorCode::kConfigParse, e.what());
  }
  if (types.empty() || types.size() != reports.size()) {
    Fail(ErrorCode::kConfigParse, "need matching, non-empty groups and reports");
  }
  return GameSetup{std::move(cfg), std::move(types), std::move(reports),
                   std::move(training), std::move(payment)};
}

void CmdSolve(const Json& config, std::ostream& out) {
  GameSetup setup = GameSetupFromJson(config);
  const GameOutcome outcome = RunGame(setup.cfg, setup.reports, setup.types,
                                      setup.payment, setup.training);
  Json j;
  j["policy"] = ToJson(outcome.final_policy);
  j["mu"] = outcome.mu ? Json(*outcome.mu) : Json();
  j["asw"] = outcome.asw;
  j["asw_minus"] = Json(outcome.asw_minus);
  j["valuations"] = Json(outcome.valuations);
  j["payments"] = Json(outcome.payments);
  j["utilities"] = Json(outcome.utilities);
  out << j.dump(2) << '\n';
}

void CmdSweep(const Json& config, int workers, std::ostream& out) {
  GameSetup setup = GameSetupFromJson(config);
  const SweepSpec spec = SweepSpecFromJson(config.value("sweep", Json::object()));
  WriteSweepCsv(out, RunSweep(setup.cfg, setup.types, setup.payment,
                              setup.training, spec, workers));
}

void CmdSynth(const Json& config, uint64_t seed, std::optional<int> samples,
              int workers, std::ostream& out) {
  SynthSpec spec = SynthSpecFromJson(config.value("synth", Json::object()));
  if (samples) spec.samples = *samples;
  WriteSynthCsv(out, RunSynth(spec, seed, workers));
}

// Builds the mechanism for sampled instances. Restricted kinds draw
// `random_candidates` policies per instance.
MechanismFactory MechanismFromJson(const Json& v) {
  const Json solver = v.value("solver", Json::object());
  const Json payment_json = v.value("payment", Json::object());
  PaymentRule payment = PaymentRuleFromJson(payment_json, Json());
  const std::string kind = ParseField("solver", [&] {
    return solver.value("kind", std::string("auto"));
  });
  if (kind == "restricted" || kind == "argmin_restricted") {
    const int count = ParseField("solver", [&] {
      return solver.at("random_candidates").get<int>();
    });
    return RandomRestrictedMechanism(count, kind == "argmin_restricted",
                                     std::move(payment));
  }
  return FixedMechanism(std::move(payment), TrainingRuleFromJson(solver, Json()));
}

// The suites and their default trial counts.
const std::vector<std::pair<std::string, int>>& Suites() {
  static const auto* suites = new std::vector<std::pair<std::string, int>>{
      {"dsic", 1000},       {"ir", 1000},   {"nonneg", 1000},
      {"approx-dsic", 100}, {"noise-asw", 100}, {"cycle", 10},
      {"payment-path", 20}};
  return *suites;
}

int CmdVerify(const Json& config, const CommandOptions& options,
              std::ostream& out) {
  const Json v = config.value("verify", Json::object());
  std::string suite = options.suite;
  if (suite.empty()) {
    suite = ParseField("verify", [&] { return v.value("suite", std::string()); });
  }
  int default_trials = -1;
  for (const auto& [name, trials] : Suites()) {
    if (name == suite) default_trials = trials;
  }
  if (default_trials < 0) {
    Fail(ErrorCode::kUnknownSuite, "unknown suite '" + suite + "'");
  }
  CheckOptions check;
  check.seed = options.seed.value_or(config.value("seed", uint64_t{1}));
  check.trials = options.trials.value_or(v.value("trials", default_trials));
  check.workers = options.workers;
  const InstanceSampler sampler =
      InstanceSamplerFromJson(v.value("sampler", Json::object()));
  const MechanismFactory mechanism = MechanismFromJson(v);

  auto num = [&](const char* key, double fallback) {
    return ParseField("verify", [&] { return v.value(key, fallback); });
  };
  auto integer = [&](const char* key, int fallback) {
    return ParseField("verify", [&] { return v.value(key, fallback); });
  };

  CheckReport report;
  if (suite == "dsic") {
    report = CheckDsic(sampler, mechanism, integer("deviations", 20), check,
                       num("tolerance", 1e-9));
  } else if (suite == "ir") {
    report = CheckIr(sampler, mechanism, check, num("tolerance", 1e-9));
  } else if (suite == "nonneg") {
    report = CheckNonNegativePayments(sampler, mechanism, check,
                                      num("tolerance", 1e-10));
  } else if (suite == "approx-dsic") {
    report = CheckApproxDsic(sampler, mechanism, NoiseModel{num("epsilon", 0.01)},
                             integer("samples", 30), integer("deviations", 3),
                             check, num("tolerance", 1e-9));
  } else if (suite == "noise-asw") {
    const bool adversarial =
        ParseField("verify", [&] { return v.value("adversarial", true); });
    report = CheckNoiseAsw(sampler, mechanism, NoiseModel{num("epsilon", 0.05)},
                           integer("draws", 50), adversarial, check,
                           num("tolerance", 1e-8));
  } else if (suite == "cycle") {
    CycleSpec spec;
    ParseField("verify.cycle", [&] {
      const Json c = v.value("cycle", Json::object());
      spec.reward_points = c.value("reward_points", spec.reward_points);
      if (c.contains("sizes")) spec.sizes = c.at("sizes").get<std::vector<int>>();
      spec.max_length = c.value("max_length", spec.max_length);
      spec.sampled_cycles = c.value("sampled_cycles", spec.sampled_cycles);
      return 0;
    });
    report = CheckCycleMonotonicity(sampler, mechanism, spec, check,
                                    num("tolerance", 1e-8));
  } else {
    const std::vector<int> steps = ParseField("verify", [&] {
      return v.value("steps", std::vector<int>{4, 8, 16, 32});
    });
    report = CheckPaymentPath(
        sampler,
        TrainingRuleFromJson(v.value("solver", Json::object()), Json()),
        steps, check, num("final_bound", 0.02));
  }
  Json j = report.ToJson();
  j["seed"] = check.seed;
  out << j.dump(2) << '\n';
  return report.passed ? kExitOk : kExitCheckFailed;
}

int Dispatch(const CommandOptions& options, std::ostream& out) {
  if (options.config.empty()) Fail(ErrorCode::kConfigParse, "--config is required");
  const Json config = ReadJsonFile(options.config);
  if (!config.is_object()) Fail(ErrorCode::kConfigParse, "config must be an object");
  const uint64_t seed = options.seed.value_or(
      ParseField("seed", [&] { return config.value("seed", uint64_t{1}); }));
  if (options.command == "solve") {
    CmdSolve(config, out);
  } else if (options.command == "sweep") {
    CmdSweep(config, options.workers, out);
  } else if (options.command == "synth") {
    CmdSynth(config, seed, options.trials, options.workers, out);
  } else if (options.command == "verify") {
    return CmdVerify(config, options, out);
  } else {
    Fail(ErrorCode::kConfigParse, "unknown command '" + options.command + "'");
  }
  return kExitOk;
}

}  // namespace

CandidateSet CandidateSetFromJson(const Json& j) {
  if (j.is_null()) Fail(ErrorCode::kConfigParse, "restricted rule needs 'candidates'");
  return ParseField("candidates", [&] {
    std::vector<Policy> policies;
    for (const Json& p : j) policies.push_back(PolicyFromJson(p));
    if (policies.empty()) Fail(ErrorCode::kConfigParse, "candidate list is empty");
    return CandidateSet(std::move(policies));
  });
}

TrainingRule TrainingRuleFromJson(const Json& solver, const Json& candidates) {
  return ParseField("solver", [&] {
    const std::string kind = solver.value("kind", std::string("auto"));
    SolverOptions opts;
    opts.require_interior = solver.value("require_interior", false);
    if (kind == "auto") return TrainingRule::Exact(SolverKind::kAuto, opts);
    if (kind == "kl") return TrainingRule::Exact(SolverKind::kKl, opts);
    if (kind == "chi2") return TrainingRule::Exact(SolverKind::kChi2, opts);
    if (kind == "generic") return TrainingRule::Exact(SolverKind::kGeneric, opts);
    if (kind == "grid") {
      return TrainingRule::GridOracle(solver.value("resolution", 1e-3));
    }
    if (kind == "restricted") {
      return TrainingRule::Restricted(CandidateSetFromJson(candidates));
    }
    if (kind == "argmin_restricted") {
      return TrainingRule::ArgminRestricted(CandidateSetFromJson(candidates));
    }
    Fail(ErrorCode::kConfigParse, "unknown solver kind '" + kind + "'");
  });
}

PaymentRule PaymentRuleFromJson(const Json& payment, const Json& candidates) {
  return ParseField("payment", [&] {
    const std::string kind = payment.value("kind", std::string("aff"));
    if (kind == "aff") {
      return PaymentRule::AffineMaximizer(payment.value("surcharge", 0.0));
    }
    if (kind == "zero") return PaymentRule::Zero();
    if (kind == "h1") return PaymentRule::RestrictedH1(CandidateSetFromJson(candidates));
    Fail(ErrorCode::kConfigParse, "unknown payment kind '" + kind + "'");
  });
}

InstanceSampler InstanceSamplerFromJson(const Json& j) {
  return ParseField("sampler", [&] {
    InstanceSampler s;
    if (j.contains("outcomes")) s.outcome_counts = j.at("outcomes").get<std::vector<int>>();
    if (j.contains("groups")) s.group_counts = j.at("groups").get<std::vector<int>>();
    if (j.contains("lambdas")) s.lambdas = j.at("lambdas").get<std::vector<double>>();
    if (j.contains("kinds")) {
      s.kinds.clear();
      for (const Json& k : j.at("kinds")) s.kinds.push_back(KindFromName(k.get<std::string>()));
    }
    if (j.contains("modes")) {
      s.modes.clear();
      for (const Json& m : j.at("modes")) s.modes.push_back(NormModeFromName(m.get<std::string>()));
    }
    s.w_bar = j.value("w_bar", s.w_bar);
    s.min_initial = j.value("min_initial", s.min_initial);
    s.opposed_initial = j.value("opposed_initial", s.opposed_initial);
    const std::string family = j.value("family", std::string("random"));
    if (family == "opposed") {
      s.family = InstanceFamily::kOpposed;
    } else if (family != "random") {
      Fail(ErrorCode::kConfigParse, "unknown sampler family '" + family + "'");
    }
    for (int k : s.outcome_counts) {
      if (k < 2) Fail(ErrorCode::kConfigParse, "sampler outcomes must be >= 2");
    }
    for (int n : s.group_counts) {
      if (n < 1) Fail(ErrorCode::kConfigParse, "sampler groups must be >= 1");
    }
    if (s.outcome_counts.empty() || s.group_counts.empty() || s.lambdas.empty() ||
        s.kinds.empty() || s.modes.empty() || s.w_bar < 1 ||
        !(s.min_initial > 0.0)) {
      Fail(ErrorCode::kConfigParse, "invalid sampler");
    }
    return s;
  });
}

int RunCommand(const CommandOptions& options, std::ostream& out,
               std::ostream& err) {
  // Buffer the whole result so a failing command leaves no partial file.
  std::ostringstream buffer;
  int code = kExitOk;
  try {
    code = Dispatch(options, buffer);
  } catch (const GameError& e) {
    err << "error [" << ErrorCodeName(e.code()) << "]: " << e.what() << '\n';
    if (IsSolverError(e.code())) return kExitSolverError;
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolverError;
  }
  if (options.out.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(options.out, std::ios::binary);
    file << buffer.str();
    if (!file) {
      err << "error: cannot write " << options.out << '\n';
      return kExitConfigError;
    }
  }
  return code;
}

}  // namespace rlhf_game
