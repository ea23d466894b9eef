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

// Command-line front end:
//
//   rlhf_game solve  --config game.json [--out result.json]
//   rlhf_game sweep  --config sweep.json [--out rows.csv] [--workers N]
//   rlhf_game synth  --config synth.json [--seed S] [--trials SAMPLES]
//   rlhf_game verify --config verify.json --suite dsic [--seed S] [--trials N]
//
// Exit codes: 0 success or check passed, 1 check failed, 2 config error,
// 3 solver error.

#include <iostream>
#include <utility>

#include "CLI11.hpp"
#include "rlhf_game/cli.h"

int main(int argc, char** argv) {
  CLI::App app{"Simulator for the RLHF game: SW-Max training, affine-maximizer "
               "payments, misreporting strategies and incentive checks."};
  app.require_subcommand(1);

  rlhf_game::CommandOptions options;
  uint64_t seed = 0;
  int trials = 0;
  const std::pair<const char*, const char*> commands[] = {
      {"solve", "train on the reported groups and print policy, payments, utilities"},
      {"sweep", "CSV of one group's outcome under size and reward misreports"},
      {"synth", "CSV of valuation and utility changes under shifted reports"},
      {"verify", "run an incentive check suite and print a JSON report"}};
  for (const auto& [name, description] : commands) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", options.config, "JSON config path")->required();
    sub->add_option("--out", options.out, "output path (default stdout)");
    sub->add_option("--seed", seed, "master seed (overrides the config)");
    sub->add_option("--trials", trials,
                    "trials for verify, samples for synth")
        ->check(CLI::PositiveNumber);
    sub->add_option("--workers", options.workers, "worker threads (0 = all)")
        ->check(CLI::NonNegativeNumber);
    if (std::string(name) == "verify") {
      sub->add_option("--suite", options.suite,
                      "dsic|ir|nonneg|approx-dsic|noise-asw|cycle|payment-path");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : rlhf_game::kExitConfigError;
  }

  for (CLI::App* sub : app.get_subcommands()) {
    options.command = sub->get_name();
    if (sub->count("--seed") > 0) options.seed = seed;
    if (sub->count("--trials") > 0) options.trials = trials;
  }
  return rlhf_game::RunCommand(options, std::cout, std::cerr);
}
