/*
 * Copyright 2026 The costeval Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "absl/strings/str_format.h"
#include "costeval/calibration.h"
#include "costeval/continuous.h"
#include "costeval/loss_engine.h"
#include "costeval/metrics.h"
#include "costeval/roc.h"
#include "testing/identity_suite.h"
#include "testing/random_datasets.h"

namespace costeval {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double ExpectedLossOrNan(const EmpiricalModel& model,
                         const ThresholdChoiceMethod& method) {
  auto loss = ExpectedLoss(model, {method, OperatingWeight::Uniform()});
  return loss.ok() ? *loss : NAN;
}

// NaN-safe |a - b| <= tolerance.
bool Near(double a, double b, double tolerance) {
  return std::abs(a - b) <= tolerance;
}

const testing::IdentityReport& Suite(double* seconds = nullptr) {
  static double elapsed = 0;
  static const testing::IdentityReport report = [] {
    const Clock::time_point start = Clock::now();
    testing::IdentityReport result = testing::RunIdentitySuite(2026, 1000);
    elapsed = Seconds(start);
    return result;
  }();
  if (seconds != nullptr) *seconds = elapsed;
  return report;
}

bool SuiteHealthy() {
  return Suite().datasets == 1000 && Suite().failed_calls == 0;
}

Outcome IdentitySuite() {
  double seconds = 0;
  const testing::IdentityReport& report = Suite(&seconds);
  double worst = 0;
  for (const char* prefix : {"sf/", "rf/", "su/", "sd/", "opt/"}) {
    worst = std::max(worst, report.Worst(prefix));
  }
  return {SuiteHealthy() && worst <= 1e-12 && seconds <= 30.0,
          absl::StrFormat("worst gap %.3g over %d datasets, %.2f s", worst,
                          report.datasets, seconds)};
}

Outcome EmpiricalRateUniform() {
  const double identity = Suite().Worst("ru/skew");
  const double oracle = Suite().Worst("ru/oracle");
  return {SuiteHealthy() && identity <= 1e-12 && oracle <= 1e-12,
          absl::StrFormat("identity gap %.3g, brute-force gap %.3g", identity,
                          oracle)};
}

Outcome RateDrivenConvergence() {
  const Clock::time_point start = Clock::now();
  std::mt19937_64 rng(3);
  double worst = 0;
  double worst_step = 0;
  for (double separation : {0.5, 1.0, 1.14, 2.0}) {
    const EmpiricalModel model = *EmpiricalModel::Build(
        testing::BinormalDataset(rng, 10000, separation));
    const double target = RateDrivenLossFromAuc(Auc(model), model.priors());
    worst = std::max(
        worst,
        std::abs(ExpectedLossOrNan(model, ThresholdChoiceMethod::RateDriven()) -
                 target));
    worst_step = std::max(
        worst_step,
        std::abs(ExpectedLossOrNan(model, ThresholdChoiceMethod::RateDriven(
                                              RateDrivenInversion::kStep)) -
                 target));
  }
  const double seconds = Seconds(start);
  return {worst <= 5e-4 && worst_step <= 5e-4 && seconds <= 5.0,
          absl::StrFormat("gap %.3g (step inversion %.3g), %.2f s", worst,
                          worst_step, seconds)};
}

Outcome TableValues() {
  const double high = RateDrivenLossFromAuc(0.79, kBalancedWeights);
  const double low = RateDrivenLossFromAuc(0.67, kBalancedWeights);
  return {Near(high, 0.188, 5e-4) && Near(low, 0.248, 5e-4),
          absl::StrFormat("AUC 0.79 -> %.5f, AUC 0.67 -> %.5f", high, low)};
}

Outcome ExtremeCases() {
  constexpr int kSize = 10000;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ScoredDataset ranked;
  ScoredDataset crisp;
  for (int i = 0; i < kSize; ++i) {
    const int label = i % 2;
    ranked.samples.push_back({0.5 * unit(rng) + 0.5 * label, label});
    crisp.samples.push_back({unit(rng) < 0.5 ? 0.0 : 1.0, label});
  }
  const EmpiricalModel perfect = *EmpiricalModel::Build(ranked);
  const EmpiricalModel random = *EmpiricalModel::Build(crisp);
  using M = ThresholdChoiceMethod;
  const double p_ru = ExpectedLossOrNan(perfect, M::RateUniform());
  const double p_rd = ExpectedLossOrNan(perfect, M::RateDriven());
  const double p_opt = ExpectedLossOrNan(perfect, M::Optimal());
  const double r_su = ExpectedLossOrNan(random, M::ScoreUniform());
  const double r_sd = ExpectedLossOrNan(random, M::ScoreDriven());
  const double r_ru = ExpectedLossOrNan(random, M::RateUniform());
  const double r_rd = ExpectedLossOrNan(random, M::RateDriven());
  const double r_opt = ExpectedLossOrNan(random, M::Optimal());
  const bool pass = Near(p_ru, 0.25, 1e-3) && Near(p_rd, 1.0 / 12, 1e-3) &&
                    p_opt == 0.0 && Near(r_su, 0.5, 0.02) &&
                    Near(r_sd, 0.5, 0.02) && Near(r_ru, 0.5, 0.02) &&
                    Near(r_rd, 1.0 / 3, 0.02) && Near(r_opt, 0.25, 0.02);
  return {pass, absl::StrFormat("perfect ru %.5f rd %.5f opt %g; crisp su "
                                "%.4f sd %.4f ru %.4f rd %.4f opt %.4f",
                                p_ru, p_rd, p_opt, r_su, r_sd, r_ru, r_rd,
                                r_opt)};
}

Outcome DecompositionExactness() {
  const double gap = Suite().Worst("decomposition");
  return {SuiteHealthy() && gap <= 1e-12,
          absl::StrFormat("worst |BS - CL - RL| %.3g", gap)};
}

Outcome PavChain() {
  const double gap = Suite().Worst("pav/");
  return {SuiteHealthy() && gap <= 1e-12,
          absl::StrFormat("worst gap %.3g (brier-rl %.3g, brier-opt %.3g, "
                          "residual %.3g, sd-opt %.3g)",
                          gap, Suite().Worst("pav/brier-rl"),
                          Suite().Worst("pav/brier-opt"),
                          Suite().Worst("pav/residual"),
                          Suite().Worst("pav/sd-opt"))};
}

Outcome EvenlySpaced() {
  const testing::IdentityReport& report = Suite();
  return {SuiteHealthy() && report.est_brier_scaled <= 5.0 &&
              report.est_mae_scaled <= 5.0,
          absl::StrFormat("worst n*gap: brier %.3f, mae %.3f (tie-free); "
                          "brier with ties %.3f",
                          report.est_brier_scaled, report.est_mae_scaled,
                          report.est_brier_scaled_ties)};
}

Outcome ReferenceValues() {
  const Clock::time_point start = Clock::now();
  const ContinuousModel fig9 = *BuiltinModel("fig9");
  const ContinuousModel fig10 = *BuiltinModel("fig10");
  const ContinuousModel diagonal = *BuiltinModel("diagonal");
  const double opt9 = OptimalLoss(fig9).value_or(NAN);
  const double opt10 = OptimalLoss(fig10).value_or(NAN);
  auto split = DecomposeBrier(diagonal);
  const double diagonal_rl = split.ok() ? split->refinement_loss : NAN;
  const double cost_third = CostOfScore(fig10, 1.0 / 3 + 1e-9).value_or(NAN);
  // Refinement curve is flat on the straight ROC segment [1/3, 3/4].
  const CurveSeries curve = RefinementCurve(fig10, 101);
  double height = NAN;
  for (const auto& [t, value] : curve.points) {
    if (t > 0.5 && t < 0.6) height = value;
  }
  const double area = (0.75 - 1.0 / 3) * height;
  const double seconds = Seconds(start);
  const bool pass = Near(opt9, 0.10245, 1e-3) && Near(opt10, 0.2266, 1e-3) &&
                    Near(diagonal_rl, 0.25, 1e-6) &&
                    Near(cost_third, 0.512, 1e-3) &&
                    Near(height, 0.2927, 1e-3) && Near(area, 0.1220, 1e-3) &&
                    seconds <= 60.0;
  return {pass, absl::StrFormat("fig9 %.5f, fig10 %.5f, diagonal RL %.7f, "
                                "c(1/3) %.4f, RL height %.4f, area %.4f, "
                                "%.2f s",
                                opt9, opt10, diagonal_rl, cost_third, height,
                                area, seconds)};
}

// Density of the calibrated model from its CDF, 5-point stencil.
double StencilDensity(const CalibratedContinuousModel& model, int k, double s,
                      double h) {
  return (-model.Cdf(k, s + 2 * h) + 8 * model.Cdf(k, s + h) -
          8 * model.Cdf(k, s - h) + model.Cdf(k, s - 2 * h)) /
         (12 * h);
}

// Halving the step moves a smooth stencil by O(h^4); a kink inside the
// stencil moves it by O(1).
bool StraddlesKink(const CalibratedContinuousModel& model, int k, double s,
                   double h) {
  const double coarse = StencilDensity(model, k, s, h);
  const double fine = StencilDensity(model, k, s, h / 2);
  return std::abs(coarse - fine) > 1e-6 * (std::abs(coarse) + 1e-3);
}

struct IdempotenceResult {
  double worst = 0;
  int checked = 0;
  int skipped = 0;
};

IdempotenceResult CheckIdempotence(const ContinuousModel& source) {
  IdempotenceResult result;
  auto calibrated = CalibratedContinuousModel::Create(source);
  if (!calibrated.ok()) {
    result.worst = INFINITY;
    return result;
  }
  constexpr double kStep = 1e-4;
  const ClassWeights w = source.priors();
  for (int i = 0; i < 1000; ++i) {
    const double s = (i + 0.5) / 1000;
    bool skip = false;
    for (const ScoreAtom& atom : calibrated->atoms()) {
      skip |= std::abs(atom.location - s) <= 2 * kStep;
    }
    for (const ScoreInterval& interval : calibrated->intervals().intervals) {
      if (interval.kind == IntervalKind::kSingular) {
        skip |= s >= interval.sigma_lo - 2 * kStep &&
                s <= interval.sigma_hi + 2 * kStep;
      }
    }
    for (int k : {kClass0, kClass1}) {
      skip |= StraddlesKink(*calibrated, k, s, kStep);
    }
    const double d0 = StencilDensity(*calibrated, kClass0, s, kStep);
    const double d1 = StencilDensity(*calibrated, kClass1, s, kStep);
    const double total = w.class0 * d0 + w.class1 * d1;
    if (skip || !(total > 1e-8)) {
      ++result.skipped;
      continue;
    }
    ++result.checked;
    result.worst = std::max(result.worst, std::abs(w.class1 * d1 / total - s));
  }
  return result;
}

Outcome ContinuousIdentities() {
  double worst_rl = 0;
  double worst_lambda = 0;
  double worst_convexify = 0;
  double worst_idempotence = 0;
  int convex = 0;
  int checked = 0;
  int skipped = 0;
  bool pass = true;
  for (const ContinuousModel& model : BuiltinModels()) {
    if (!ClassifyIntervals(model).ok()) continue;
    ++convex;
    auto opt = OptimalLoss(model);
    auto split = DecomposeBrier(model);
    auto lambda = ComputeLambdaComponents(model);
    auto convexified = OptimalLoss(Convexify(model));
    if (!opt.ok() || !lambda.ok() || !convexified.ok()) {
      pass = false;
      continue;
    }
    // Refinement needs scores in [0, 1].
    if (split.ok()) {
      worst_rl = std::max(worst_rl, std::abs(*opt - split->refinement_loss));
    }
    worst_lambda = std::max(
        worst_lambda, std::abs(*opt - (lambda->bijective + lambda->singular)));
    worst_convexify = std::max(worst_convexify, std::abs(*convexified - *opt));
    const IdempotenceResult idempotence = CheckIdempotence(model);
    worst_idempotence = std::max(worst_idempotence, idempotence.worst);
    checked += idempotence.checked;
    skipped += idempotence.skipped;
  }
  const ContinuousModel two_bump = *BuiltinModel("two_bump_nonconvex");
  const ContinuousModel hull = Convexify(two_bump);
  const double bump_opt = OptimalLoss(two_bump).value_or(NAN);
  const double hull_opt = OptimalLoss(hull).value_or(NAN);
  auto hull_split = DecomposeBrier(hull);
  const double hull_rl = hull_split.ok() ? hull_split->refinement_loss : NAN;
  pass = pass && convex > 0 && worst_rl <= 1e-5 && worst_lambda <= 1e-5 &&
         worst_convexify <= 1e-5 && worst_idempotence <= 1e-6 &&
         ClassifyIntervals(hull).ok() && Near(hull_opt, bump_opt, 1e-5) &&
         Near(hull_rl, hull_opt, 1e-5);
  return {pass,
          absl::StrFormat(
              "%d convex models: RL %.2g, lambda %.2g, convexify %.2g, "
              "idempotence %.2g (%d points, %d skipped); two_bump hull %.2g",
              convex, worst_rl, worst_lambda, worst_convexify,
              worst_idempotence, checked, skipped,
              std::abs(hull_opt - bump_opt))};
}

int RunAll() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>>
      criteria = {
          {"identity suite", IdentitySuite},
          {"empirical rate-uniform", EmpiricalRateUniform},
          {"rate-driven convergence", RateDrivenConvergence},
          {"rate-driven table values", TableValues},
          {"extreme-case box", ExtremeCases},
          {"decomposition exactness", DecompositionExactness},
          {"PAV chain", PavChain},
          {"evenly-spaced convergence", EvenlySpaced},
          {"continuous reference values", ReferenceValues},
          {"continuous identities", ContinuousIdentities},
      };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const Outcome outcome = criteria[i].second();
    failures += outcome.pass ? 0 : 1;
    std::printf("[%s] criterion %zu %s: %s\n", outcome.pass ? "PASS" : "FAIL",
                i + 1, criteria[i].first, outcome.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace costeval

int main() { return costeval::RunAll(); }
