# Copyright 2026 The rlhf-game Authors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Writes the restricted-candidate sweep fixtures in fixtures/.

Six responses are scored on helpfulness, harmlessness and humour. One
expert policy per attribute is the KL tilt of the uniform policy toward
that attribute; the candidate set holds every mixture of the three experts
with weights on a 0.1 grid. Groups value one attribute each, or a blend of
two.

  python3 tools/fixtures/make_sweep_fixtures.py
"""

import itertools
import json
import math
import pathlib

K = 6
HELP = [1.0, 0.8, 0.3, 0.1, 0.5, 0.0]
HARM = [0.2, 0.6, 1.0, 0.9, 0.1, 0.4]
HUMOR = [0.1, 0.3, 0.0, 0.5, 1.0, 0.7]
EXPERT_LAMBDA = 0.25
STEP = 10  # mixture weights in multiples of 1/STEP


def expert(rm):
  weights = [math.exp(x / EXPERT_LAMBDA) for x in rm]
  total = sum(weights)
  return [w / total for w in weights]


def blend(a, b, wa):
  raw = [wa * x + (1 - wa) * y for x, y in zip(a, b)]
  top = max(raw)
  return [x / top for x in raw]


def candidates():
  experts = [expert(HELP), expert(HARM), expert(HUMOR)]
  out = []
  for i, j in itertools.product(range(STEP + 1), repeat=2):
    if i + j > STEP:
      continue
    mix = (i / STEP, j / STEP, (STEP - i - j) / STEP)
    policy = [sum(m * e[x] for m, e in zip(mix, experts)) for x in range(K)]
    total = sum(policy)
    out.append([p / total for p in policy])
  return out


def fixture(name, rms, sizes):
  return name, {
      "game": {
          "outcomes": K,
          "labels": ["r%d" % x for x in range(K)],
          "divergence": {"kind": "kl", "lambda": 1.0},
          "mode": "max",
          "w_bar": 20,
      },
      "groups": [{"rm": rm, "w": w} for rm, w in zip(rms, sizes)],
      "solver": {"kind": "restricted"},
      "payment": {"kind": "aff"},
      "candidates": candidates(),
      "sweep": {
          "group": 0,
          "alpha": [0.2, 0.5, 1, 1.5, 2, 3],
          "beta": [0.5, 0.8, 1, 1.5, 2, 3],
      },
  }


def main():
  three = [HELP, HARM, HUMOR]
  mixed = [blend(HELP, HARM, 0.8), blend(HELP, HARM, 0.2), HUMOR]
  games = [fixture("sweep_three_%d%d%d" % s, three, s)
           for s in [(3, 2, 1), (4, 5, 3), (5, 5, 2), (3, 1, 4)]]
  games.append(fixture("sweep_mixed_231", mixed, (2, 3, 1)))
  games += [fixture("sweep_two_%d%d" % s, [HARM, HUMOR], s)
            for s in [(3, 7), (5, 5), (7, 3)]]
  root = pathlib.Path(__file__).resolve().parents[2] / "fixtures"
  for name, config in games:
    (root / (name + ".json")).write_text(json.dumps(config, indent=1) + "\n")


if __name__ == "__main__":
  main()
