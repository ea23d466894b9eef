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

"""Independent high-precision derivation of the worked-example values.

Recomputes every reference number the C++ tests compare against from first
principles with mpmath at 40 digits and prints tests/golden_values.h. Shares
no code with the library.

  python3 tools/oracles/derive_values.py > tests/golden_values.h
"""

import mpmath as mp

mp.mp.dps = 40

LICENSE = """Copyright 2026 The rlhf-game Authors. All rights reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License."""


def kl(p, q, lam=1):
  return lam * mp.fsum(qi * (pi / qi) * mp.log(pi / qi) for pi, qi in zip(p, q))


def chi2(p, q, lam=1):
  return lam * mp.fsum(qi * (pi / qi - 1) ** 2 for pi, qi in zip(p, q))


def tilt(q, r, lam):
  w = [qi * mp.e ** (ri / lam) for qi, ri in zip(q, r)]
  z = mp.fsum(w)
  return [x / z for x in w], lam * mp.log(z) - lam


def dot(a, b):
  return mp.fsum(x * y for x, y in zip(a, b))


def main():
  half = [mp.mpf(1) / 2, mp.mpf(1) / 2]
  vals = {}

  # One group, rm = (1, 0), w = 1, KL lambda = 1.
  pi, mu = tilt(half, [1, 0], 1)
  vals["kKlPi0"] = pi[0]
  vals["kKlPi1"] = pi[1]
  vals["kKlMu"] = mu
  vals["kKlDivergence"] = kl(pi, half)
  vals["kKlAsw"] = pi[0] - kl(pi, half)
  # t(z) = sum_x (rm(z) - rm(x)) q(x) / f''(p(x)/q(x)) with f''(u) = 1/u.
  rm = [1, 0]
  c = [q / (1 / (p / q)) for p, q in zip(pi, half)]
  vals["kKlT0"] = mp.fsum((rm[0] - rm[x]) * c[x] for x in range(2))
  vals["kKlT1"] = mp.fsum((rm[1] - rm[x]) * c[x] for x in range(2))

  # f(e) for KL lambda = 1.
  vals["kKlValueAtE"] = mp.e * mp.log(mp.e)

  # Chi-squared lambda = 1: p = q (1 + (r - mu) / 2), mu = sum q r.
  mu2 = dot(half, [1, 0])
  pc = [q * (1 + (r - mu2) / 2) for q, r in zip(half, [1, 0])]
  vals["kChi2Pi0"] = pc[0]
  vals["kChi2Pi1"] = pc[1]
  vals["kChi2Mu"] = mu2
  vals["kChi2Divergence"] = chi2(pc, half)
  c2 = [q / 2 for q in half]  # f'' = 2 lambda
  vals["kChi2T0"] = mp.fsum((rm[0] - rm[x]) * c2[x] for x in range(2))
  vals["kChi2T1"] = mp.fsum((rm[1] - rm[x]) * c2[x] for x in range(2))

  # Two opposed groups, KL lambda = 1: the full game returns the initial
  # policy, the single-group game returns the tilt.
  full = half
  alone, _ = tilt(half, [0, 1], 1)
  asw_alone = alone[1] - kl(alone, half)
  vals["kOpposedPayment"] = asw_alone - (dot(full, [0, 1]) - kl(full, half))
  vals["kOpposedUtility"] = dot(full, [1, 0]) - vals["kOpposedPayment"]

  # Restricted candidates {(0.9,0.1), (0.5,0.5), (0.1,0.9)}.
  cands = [[mp.mpf("0.9"), mp.mpf("0.1")], half, [mp.mpf("0.1"), mp.mpf("0.9")]]
  full_idx = max(range(3), key=lambda k: cands[k][0] - kl(cands[k], half))
  empty_idx = max(range(3), key=lambda k: -kl(cands[k], half))
  vals["kH1Payment"] = -kl(cands[empty_idx], half) + kl(cands[full_idx], half)
  vals["kRestrictedAsw0"] = cands[0][0] - kl(cands[0], half)
  vals["kRestrictedAsw1"] = cands[2][0] - kl(cands[2], half)

  # lambda = 100: distance of the tilt from the initial policy.
  big, _ = tilt(half, [1, 0], 100)
  vals["kKlLambda100Shift"] = big[0] - half[0]

  for line in LICENSE.splitlines():
    print(("// " + line).rstrip())
  print()
  print("// Generated by tools/oracles/derive_values.py. Do not edit.")
  print("#ifndef RLHF_GAME_TESTS_GOLDEN_VALUES_H_")
  print("#define RLHF_GAME_TESTS_GOLDEN_VALUES_H_")
  print()
  print("namespace rlhf_game::golden {")
  print()
  for k, v in vals.items():
    print(f"inline constexpr double {k} = {mp.nstr(v, 25, strip_zeros=False)};")
  print()
  print("}  // namespace rlhf_game::golden")
  print()
  print("#endif  // RLHF_GAME_TESTS_GOLDEN_VALUES_H_")


if __name__ == "__main__":
  main()
