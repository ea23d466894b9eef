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

#include "rlhf_game/training.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "rlhf_game/errors.h"
#include "parallel.h"

namespace rlhf_game {
namespace {

bool IsConstant(std::span<const double> r) {
  for (double v : r) {
    if (v != r[0]) return false;
  }
  return true;
}

void CheckAggregate(const Policy& initial, std::span<const double> r) {
  if (static_cast<int>(r.size()) != initial.size()) {
    Fail(ErrorCode::kDimensionMismatch,
         "aggregate reward has " + std::to_string(r.size()) +
             " entries, initial policy " + std::to_string(initial.size()));
  }
  for (double v : r) {
    if (!std::isfinite(v)) Fail(ErrorCode::kInvalidArgument, "non-finite reward");
  }
}

void CheckLambda(double lambda) {
  if (!(lambda > 0.0)) {
    Fail(ErrorCode::kNonPositiveArgument, "lambda must be positive");
  }
}

double Sum(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

// Returns -1, 0, 1 as a is lexicographically larger, equal, smaller than b
// in the group valuations it induces.
int CompareValuations(std::span<const double> a, std::span<const double> b,
                      std::span<const GroupType> reports) {
  for (const GroupType& g : reports) {
    const double va = Valuation(a, g.rm.values());
    const double vb = Valuation(b, g.rm.values());
    if (va > vb) return -1;
    if (va < vb) return 1;
  }
  return 0;
}

}  // namespace

AggregateReward Aggregate(std::span<const GroupType> reports, int size) {
  AggregateReward out{std::vector<double>(size, 0.0)};
  for (const GroupType& g : reports) {
    if (g.rm.size() != size) {
      Fail(ErrorCode::kDimensionMismatch,
           "reward model has " + std::to_string(g.rm.size()) +
               " entries, expected " + std::to_string(size));
    }
    for (int x = 0; x < size; ++x) out.r[x] += g.w * g.rm[x];
  }
  return out;
}

SolveResult SolveKl(const Policy& initial, double lambda,
                    std::span<const double> r) {
  CheckLambda(lambda);
  CheckAggregate(initial, r);
  if (IsConstant(r)) return SolveResult{initial, r[0] - lambda, 0, 0.0, 0};

  const double r_max = *std::max_element(r.begin(), r.end());
  std::vector<double> weights(r.size());
  for (size_t x = 0; x < r.size(); ++x) {
    weights[x] = initial[x] * std::exp((r[x] - r_max) / lambda);
    if (!(weights[x] > 0.0)) {
      Fail(ErrorCode::kDegenerateSolution,
           "exponential tilt underflows; lambda too small for these rewards");
    }
  }
  const double total = Sum(weights);
  for (double& w : weights) w /= total;
  const double residual = std::abs(Sum(weights) - 1.0);
  // mu = lambda ln Z - lambda with Z = sum initial exp(r / lambda).
  const double mu = r_max + lambda * std::log(total) - lambda;
  return SolveResult{Policy::Normalize(std::move(weights)), mu, 1, residual, 0};
}

SolveResult SolveKl(const GameConfig& cfg, std::span<const GroupType> reports) {
  if (cfg.divergence.kind() != DivergenceKind::kKl) {
    Fail(ErrorCode::kUnsupported, "SolveKl needs a KL divergence");
  }
  ValidateReports(cfg, reports);
  return SolveKl(cfg.initial, cfg.divergence.lambda(),
                 Aggregate(reports, cfg.size()).r);
}

SolveResult SolveChi2(const Policy& initial, double lambda,
                      std::span<const double> r, SolverOptions options) {
  CheckLambda(lambda);
  CheckAggregate(initial, r);
  if (IsConstant(r)) return SolveResult{initial, r[0], 0, 0.0, 0};

  const int k = initial.size();
  std::vector<bool> fixed(k, false);
  std::vector<double> pi(k, 0.0);
  double mu = 0.0;
  int clamped = 0;
  int rounds = 0;
  // Each pass pins one coordinate that the interior formula drives below the
  // floor. Every pinned coordinate is active at the optimum, so at most k - 1
  // passes are needed.
  while (true) {
    ++rounds;
    double mass0 = 0.0;
    double mass_r = 0.0;
    for (int x = 0; x < k; ++x) {
      if (fixed[x]) continue;
      mass0 += initial[x];
      mass_r += initial[x] * r[x];
    }
    const double target = 1.0 - clamped * kPositivityFloor;
    mu = (mass_r - 2.0 * lambda * (target - mass0)) / mass0;
    int worst = -1;
    for (int x = 0; x < k; ++x) {
      if (fixed[x]) {
        pi[x] = kPositivityFloor;
        continue;
      }
      pi[x] = initial[x] * (1.0 + (r[x] - mu) / (2.0 * lambda));
      if (pi[x] < kPositivityFloor && (worst < 0 || pi[x] < pi[worst])) {
        worst = x;
      }
    }
    if (worst < 0) break;
    fixed[worst] = true;
    ++clamped;
  }
  if (options.require_interior && k - clamped < 2) {
    Fail(ErrorCode::kDegenerateSolution,
         "chi-squared optimum has a single outcome with positive mass");
  }
  const double residual = std::abs(Sum(pi) - 1.0);
  return SolveResult{Policy::Normalize(std::move(pi)), mu, rounds, residual,
                     clamped};
}

SolveResult SolveChi2(const GameConfig& cfg, std::span<const GroupType> reports,
                      SolverOptions options) {
  if (cfg.divergence.kind() != DivergenceKind::kChiSquared) {
    Fail(ErrorCode::kUnsupported, "SolveChi2 needs a chi-squared divergence");
  }
  ValidateReports(cfg, reports);
  return SolveChi2(cfg.initial, cfg.divergence.lambda(),
                   Aggregate(reports, cfg.size()).r, options);
}

SolveResult SolveGeneric(const Policy& initial, const DivergenceSpec& spec,
                         std::span<const double> r) {
  if (!spec.is_smooth()) {
    Fail(ErrorCode::kUnsupported,
         std::string("no exact solver for divergence ") +
             std::string(DivergenceKindName(spec.kind())));
  }
  CheckAggregate(initial, r);
  if (IsConstant(r)) {
    return SolveResult{initial, r[0] - spec.Derivative(1.0), 0, 0.0, 0};
  }

  const int k = initial.size();
  auto mass = [&](double mu) {
    double s = 0.0;
    for (int x = 0; x < k; ++x) {
      s += std::max(kPositivityFloor,
                    initial[x] * spec.InverseDerivativeClamped(r[x] - mu));
    }
    return s;
  };

  const auto [r_lo, r_hi] = std::minmax_element(r.begin(), r.end());
  const double p_min = *std::min_element(initial.probs().begin(),
                                         initial.probs().end());
  double lo = *r_lo - std::abs(spec.Derivative(2.0 / p_min));
  double hi = *r_hi + std::abs(spec.Derivative(kPositivityFloor));
  double width = std::max(1.0, hi - lo);
  int expansions = 0;
  while (mass(lo) <= 1.0) {
    if (++expansions > 60) {
      Fail(ErrorCode::kBracketFailure, "no lower bracket for the multiplier");
    }
    lo -= width;
    width *= 2.0;
  }
  width = std::max(1.0, hi - lo);
  expansions = 0;
  while (mass(hi) >= 1.0) {
    if (++expansions > 60) {
      Fail(ErrorCode::kBracketFailure, "no upper bracket for the multiplier");
    }
    hi += width;
    width *= 2.0;
  }

  double mu = 0.5 * (lo + hi);
  double s = mass(mu);
  int iterations = 1;
  while (std::abs(s - 1.0) > 1e-12 && iterations < 200) {
    if (s > 1.0) {
      lo = mu;
    } else {
      hi = mu;
    }
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    mu = mid;
    s = mass(mu);
    ++iterations;
  }

  std::vector<double> pi(k);
  int clamped = 0;
  for (int x = 0; x < k; ++x) {
    const double raw = initial[x] * spec.InverseDerivativeClamped(r[x] - mu);
    if (raw <= kPositivityFloor) ++clamped;
    pi[x] = std::max(kPositivityFloor, raw);
  }
  return SolveResult{Policy::Normalize(std::move(pi)), mu, iterations,
                     std::abs(s - 1.0), clamped};
}

SolveResult SolveGeneric(const GameConfig& cfg,
                         std::span<const GroupType> reports) {
  ValidateReports(cfg, reports);
  return SolveGeneric(cfg.initial, cfg.divergence,
                      Aggregate(reports, cfg.size()).r);
}

double KktResidual(const DivergenceSpec& spec, const Policy& initial,
                   std::span<const double> r, const SolveResult& result) {
  double worst = 0.0;
  for (int x = 0; x < initial.size(); ++x) {
    if (result.policy[x] <= 2.0 * kPositivityFloor) continue;
    const double g =
        r[x] - spec.Derivative(result.policy[x] / initial[x]) - result.mu;
    worst = std::max(worst, std::abs(g));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Grid oracle.

namespace {

constexpr int kMaxGridDimension = 4;

struct GridPoint {
  double value = -std::numeric_limits<double>::infinity();
  std::array<int, kMaxGridDimension> j{};
  bool valid = false;
};

struct GridProblem {
  const GameConfig* cfg;
  std::span<const GroupType> reports;
  int k;
  int n;  // 1 / resolution
  // table[x][j] = r(x) j/n - initial(x) f(j / (n initial(x))).
  std::vector<std::vector<double>> table;

  std::vector<double> Probs(const std::array<int, kMaxGridDimension>& j) const {
    std::vector<double> p(k);
    for (int x = 0; x < k; ++x) p[x] = static_cast<double>(j[x]) / n;
    return p;
  }

  // Strict total order: higher ASW, then the configured tie-break, then the
  // lexicographically earlier point.
  bool Better(const GridPoint& a, const GridPoint& b) const {
    if (!b.valid) return a.valid;
    if (!a.valid) return false;
    if (a.value != b.value) return a.value > b.value;
    if (cfg->tie_break == TieBreak::kValuationLex) {
      const int c = CompareValuations(Probs(a.j), Probs(b.j), reports);
      if (c != 0) return c < 0;
    }
    return a.j < b.j;
  }
};

GridProblem MakeGridProblem(const GameConfig& cfg,
                            std::span<const GroupType> reports,
                            double resolution) {
  cfg.Validate();
  ValidateReports(cfg, reports);
  const int k = cfg.size();
  if (k > kMaxGridDimension) {
    Fail(ErrorCode::kDimensionTooLarge,
         "grid oracle supports at most 4 outcomes, got " + std::to_string(k));
  }
  if (!(resolution >= 1e-4) || resolution > 1.0 / k) {
    Fail(ErrorCode::kInvalidArgument,
         "grid resolution must lie in [1e-4, 1/K]");
  }
  const double inv = 1.0 / resolution;
  const long n = std::lround(inv);
  if (std::abs(inv - static_cast<double>(n)) > 1e-6 * inv) {
    Fail(ErrorCode::kInvalidArgument, "1/resolution must be an integer");
  }
  GridProblem problem{&cfg, reports, k, static_cast<int>(n), {}};
  const std::vector<double> r = Aggregate(reports, k).r;
  const DivergenceSpec& spec = cfg.divergence;
  problem.table.assign(k, std::vector<double>(problem.n + 1, 0.0));
  for (int x = 0; x < k; ++x) {
    const double q = cfg.initial[x];
    for (int j = 1; j <= problem.n; ++j) {
      const double p = static_cast<double>(j) / problem.n;
      problem.table[x][j] = r[x] * p - q * spec.Value(p / q);
    }
  }
  return problem;
}

// Scans every point whose first coordinate is j0, in lexicographic order.
void ScanSlice(const GridProblem& g, int j0, GridPoint& best) {
  const auto& t = g.table;
  const int n = g.n;
  GridPoint cur;
  cur.valid = true;
  cur.j[0] = j0;
  auto offer = [&](double value) {
    cur.value = value;
    if (!best.valid || value > best.value ||
        (value == best.value && g.Better(cur, best))) {
      best = cur;
    }
  };
  const double v0 = t[0][j0];
  switch (g.k) {
    case 2:
      cur.j[1] = n - j0;
      offer(v0 + t[1][n - j0]);
      break;
    case 3:
      for (int j1 = 1; j1 <= n - j0 - 1; ++j1) {
        cur.j[1] = j1;
        cur.j[2] = n - j0 - j1;
        offer(v0 + t[1][j1] + t[2][n - j0 - j1]);
      }
      break;
    case 4:
      for (int j1 = 1; j1 <= n - j0 - 2; ++j1) {
        const double v01 = v0 + t[1][j1];
        cur.j[1] = j1;
        for (int j2 = 1; j2 <= n - j0 - j1 - 1; ++j2) {
          cur.j[2] = j2;
          cur.j[3] = n - j0 - j1 - j2;
          offer(v01 + t[2][j2] + t[3][n - j0 - j1 - j2]);
        }
      }
      break;
    default:
      break;
  }
}

Policy PointToPolicy(const GridProblem& g, const GridPoint& p) {
  return Policy::Normalize(g.Probs(p.j));
}

}  // namespace

Policy SolveGridOracle(const GameConfig& cfg,
                       std::span<const GroupType> reports, double resolution,
                       int workers) {
  const GridProblem g = MakeGridProblem(cfg, reports, resolution);
  const int slices = g.n - g.k + 1;
  const int threads = internal::ResolveWorkers(workers);
  // Each thread carries its running best across a contiguous block of
  // slices; Better is a strict total order, so the merge is exact.
  std::vector<GridPoint> best(threads);
#pragma omp parallel num_threads(threads)
  {
    GridPoint local;
#pragma omp for schedule(static)
    for (int s = 0; s < slices; ++s) ScanSlice(g, s + 1, local);
    best[internal::ThreadIndex()] = local;
  }
  GridPoint winner;
  for (const GridPoint& p : best) {
    if (g.Better(p, winner)) winner = p;
  }
  return PointToPolicy(g, winner);
}

Policy SolveGridOracleSerial(const GameConfig& cfg,
                             std::span<const GroupType> reports,
                             double resolution) {
  const GridProblem g = MakeGridProblem(cfg, reports, resolution);
  GridPoint winner;
  for (int j0 = 1; j0 <= g.n - g.k + 1; ++j0) ScanSlice(g, j0, winner);
  return PointToPolicy(g, winner);
}

// ---------------------------------------------------------------------------
// Restricted rules.

CandidateSet::CandidateSet(std::vector<Policy> policies)
    : policies_(std::move(policies)) {
  if (policies_.empty()) {
    Fail(ErrorCode::kEmptyCandidateSet, "candidate set is empty");
  }
  for (const Policy& p : policies_) {
    if (p.size() != policies_[0].size()) {
      Fail(ErrorCode::kDimensionMismatch, "candidates differ in dimension");
    }
  }
}

RestrictedChoice SolveRestricted(const GameConfig& cfg,
                                 std::span<const GroupType> reports,
                                 const CandidateSet& candidates) {
  ValidateReports(cfg, reports);
  if (candidates[0].size() != cfg.size()) {
    Fail(ErrorCode::kDimensionMismatch, "candidates do not match the game");
  }
  int best = 0;
  double best_value = Asw(candidates[0], reports, cfg);
  for (int c = 1; c < candidates.size(); ++c) {
    const double value = Asw(candidates[c], reports, cfg);
    if (value > best_value) {
      best = c;
      best_value = value;
    } else if (value == best_value &&
               cfg.tie_break == TieBreak::kValuationLex &&
               CompareValuations(candidates[c].probs(),
                                 candidates[best].probs(), reports) < 0) {
      best = c;
    }
  }
  return RestrictedChoice{candidates[best], best};
}

RestrictedChoice SolveRestrictedArgmin(const GameConfig& cfg,
                                       std::span<const GroupType> reports,
                                       const CandidateSet& candidates) {
  ValidateReports(cfg, reports);
  int worst = 0;
  double worst_value = Asw(candidates[0], reports, cfg);
  for (int c = 1; c < candidates.size(); ++c) {
    const double value = Asw(candidates[c], reports, cfg);
    if (value < worst_value) {
      worst = c;
      worst_value = value;
    }
  }
  return RestrictedChoice{candidates[worst], worst};
}

// ---------------------------------------------------------------------------
// TrainingRule.

TrainingRule TrainingRule::Exact(SolverKind kind, SolverOptions options) {
  switch (kind) {
    case SolverKind::kAuto:
    case SolverKind::kKl:
    case SolverKind::kChi2:
    case SolverKind::kGeneric:
      break;
    default:
      Fail(ErrorCode::kInvalidArgument, "not an exact solver kind");
  }
  TrainingRule rule(kind);
  rule.options_ = options;
  return rule;
}

TrainingRule TrainingRule::GridOracle(double resolution, int workers) {
  TrainingRule rule(SolverKind::kGridOracle);
  rule.resolution_ = resolution;
  rule.workers_ = workers;
  return rule;
}

TrainingRule TrainingRule::Restricted(CandidateSet candidates) {
  TrainingRule rule(SolverKind::kRestricted);
  rule.candidates_ = std::make_shared<const CandidateSet>(std::move(candidates));
  return rule;
}

TrainingRule TrainingRule::ArgminRestricted(CandidateSet candidates) {
  TrainingRule rule(SolverKind::kArgminRestricted);
  rule.candidates_ = std::make_shared<const CandidateSet>(std::move(candidates));
  return rule;
}

bool TrainingRule::is_exact() const {
  return kind_ == SolverKind::kAuto || kind_ == SolverKind::kKl ||
         kind_ == SolverKind::kChi2 || kind_ == SolverKind::kGeneric;
}

TrainingRule::Output TrainingRule::Train(
    const GameConfig& cfg, std::span<const GroupType> reports) const {
  cfg.Validate();
  switch (kind_) {
    case SolverKind::kAuto:
      switch (cfg.divergence.kind()) {
        case DivergenceKind::kKl: {
          SolveResult res = SolveKl(cfg, reports);
          return Output{std::move(res.policy), res.mu};
        }
        case DivergenceKind::kChiSquared: {
          SolveResult res = SolveChi2(cfg, reports, options_);
          return Output{std::move(res.policy), res.mu};
        }
        case DivergenceKind::kGenericSmooth: {
          SolveResult res = SolveGeneric(cfg, reports);
          return Output{std::move(res.policy), res.mu};
        }
        case DivergenceKind::kTotalVariation:
          Fail(ErrorCode::kUnsupported,
               "total variation has no exact solver; use the grid oracle");
      }
      break;
    case SolverKind::kKl: {
      SolveResult res = SolveKl(cfg, reports);
      return Output{std::move(res.policy), res.mu};
    }
    case SolverKind::kChi2: {
      SolveResult res = SolveChi2(cfg, reports, options_);
      return Output{std::move(res.policy), res.mu};
    }
    case SolverKind::kGeneric: {
      SolveResult res = SolveGeneric(cfg, reports);
      return Output{std::move(res.policy), res.mu};
    }
    case SolverKind::kGridOracle:
      return Output{SolveGridOracle(cfg, reports, resolution_, workers_),
                    std::nullopt};
    case SolverKind::kRestricted:
      return Output{SolveRestricted(cfg, reports, *candidates_).policy,
                    std::nullopt};
    case SolverKind::kArgminRestricted:
      return Output{SolveRestrictedArgmin(cfg, reports, *candidates_).policy,
                    std::nullopt};
  }
  Fail(ErrorCode::kInvalidArgument, "unknown solver kind");
}

}  // namespace rlhf_game
