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


// Shared identity suite: every check reports its worst absolute gap over a
// batch of random datasets so gtest and the acceptance binary can apply
// their own thresholds.

#ifndef COSTEVAL_TESTS_TESTING_IDENTITY_SUITE_H_
#define COSTEVAL_TESTS_TESTING_IDENTITY_SUITE_H_

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>

#include "costeval/calibration.h"
#include "costeval/loss_engine.h"
#include "costeval/metrics.h"
#include "costeval/model.h"
#include "costeval/roc.h"
#include "costeval/threshold_methods.h"
#include "testing/oracles.h"
#include "testing/random_datasets.h"

namespace costeval::testing {

struct IdentityReport {
  int datasets = 0;
  // Check name -> worst absolute gap.
  std::map<std::string, double> worst;
  // EST convergence, worst n * |gap| on tie-free datasets.
  double est_brier_scaled = 0;
  double est_mae_scaled = 0;
  // Same over datasets with ties, reported only.
  double est_brier_scaled_ties = 0;
  // Orderings MAE >= BS >= L^opt violated by more than 1e-12.
  int ordering_violations = 0;
  int failed_calls = 0;

  void Record(const std::string& name, double gap) {
    double& slot = worst[name];
    slot = std::max(slot, std::isnan(gap) ? INFINITY : gap);
  }
  double Worst(const std::string& prefix) const {
    double result = 0;
    for (const auto& [name, gap] : worst) {
      if (name.rfind(prefix, 0) == 0) result = std::max(result, gap);
    }
    return result;
  }
};

namespace internal {

inline double LossOf(const EmpiricalModel& model,
                     const ThresholdChoiceMethod& method, ConditionKind kind,
                     IdentityReport& report) {
  auto loss = ExpectedLoss(model, {method, OperatingWeight::Uniform(kind)});
  if (!loss.ok()) {
    ++report.failed_calls;
    return NAN;
  }
  return *loss;
}

inline double Value(const absl::StatusOr<double>& value,
                    IdentityReport& report) {
  if (!value.ok()) {
    ++report.failed_calls;
    return NAN;
  }
  return *value;
}

}  // namespace internal

inline void CheckIdentities(const ScoredDataset& dataset, std::mt19937_64& rng,
                            IdentityReport& report) {
  using internal::LossOf;
  using internal::Value;
  constexpr ConditionKind kCost = ConditionKind::kCost;
  constexpr ConditionKind kSkew = ConditionKind::kSkew;
  auto built = EmpiricalModel::Build(dataset);
  if (!built.ok()) {
    ++report.failed_calls;
    return;
  }
  const EmpiricalModel& model = *built;
  ++report.datasets;
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Score-fixed at a random threshold and at an observed score.
  std::uniform_int_distribution<size_t> pick(0, dataset.samples.size() - 1);
  for (double t : {unit(rng), dataset.samples[pick(rng)].score}) {
    const auto method = ThresholdChoiceMethod::ScoreFixed(t);
    report.Record("sf/cost",
                  std::abs(LossOf(model, method, kCost, report) -
                           ErrorRate(model, t)));
    report.Record("sf/skew",
                  std::abs(LossOf(model, method, kSkew, report) -
                           MacroErrorRate(model, t)));
  }

  const double rate = unit(rng);
  const auto rate_fixed = ThresholdChoiceMethod::RateFixed(rate);
  auto inverted = model.InverseRate(rate);
  if (inverted.ok()) {
    report.Record("rf/cost",
                  std::abs(LossOf(model, rate_fixed, kCost, report) -
                           ErrorRate(model, inverted->threshold)));
  } else {
    ++report.failed_calls;
  }
  report.Record("rf/skew",
                std::abs(LossOf(model, rate_fixed, kSkew, report) -
                         Value(ClosedFormLoss(model, rate_fixed, kSkew),
                               report)));

  const auto su = ThresholdChoiceMethod::ScoreUniform();
  const double mae = Value(MeanAbsoluteError(model), report);
  report.Record("su/cost", std::abs(LossOf(model, su, kCost, report) - mae));
  report.Record("su/skew",
                std::abs(LossOf(model, su, kSkew, report) -
                         Value(MacroMeanAbsoluteError(model), report)));

  const auto sd = ThresholdChoiceMethod::ScoreDriven();
  const double bs = Value(BrierScore(model), report);
  report.Record("sd/cost", std::abs(LossOf(model, sd, kCost, report) - bs));
  report.Record("sd/skew",
                std::abs(LossOf(model, sd, kSkew, report) -
                         Value(MacroBrierScore(model), report)));

  const auto opt = ThresholdChoiceMethod::Optimal();
  const double opt_cost = LossOf(model, opt, kCost, report);
  report.Record("opt/cost", std::abs(opt_cost - RefinementLossHull(model)));
  report.Record("opt/skew",
                std::abs(LossOf(model, opt, kSkew, report) -
                         RefinementLossHull(model, kBalancedWeights)));

  // Empirical rate-uniform under skew.
  const double n = static_cast<double>(model.size());
  const double auc = Auc(model);
  const double ru_skew =
      LossOf(model, ThresholdChoiceMethod::RateUniform(), kSkew, report);
  report.Record("ru/skew",
                std::abs(ru_skew - ((n / (n + 1)) * (1 - 2 * auc) / 4 + 0.5)));
  report.Record("ru/oracle",
                std::abs(ru_skew - BruteForceRateUniformLoss(
                                       dataset, kBalancedWeights)));

  // Interpolated rate-driven matches its AUC formula exactly.
  report.Record("rd/cost",
                std::abs(LossOf(model, ThresholdChoiceMethod::RateDriven(),
                                kCost, report) -
                         RateDrivenLossFromAuc(auc, model.priors())));

  const Decomposition roc = Decompose(model, RocPartition(model));
  report.Record("decomposition",
                std::abs(roc.calibration_loss + roc.refinement_loss - bs));

  if (mae + 1e-12 < bs || bs + 1e-12 < opt_cost) ++report.ordering_violations;

  // PAV chain.
  const CalibratedModel pav = Pav(model);
  const double pav_bs = Value(BrierScore(pav.model), report);
  report.Record("pav/brier-rl", std::abs(pav_bs - RefinementLossHull(model)));
  report.Record("pav/brier-opt", std::abs(pav_bs - opt_cost));
  report.Record("pav/residual",
                std::abs(Value(PerfectCalibrationResidual(pav.model), report)));
  report.Record("pav/sd-opt",
                std::abs(LossOf(pav.model, sd, kCost, report) -
                         LossOf(pav.model, opt, kCost, report)));

  // EST convergence. A single distinct score has no EST image.
  if (model.num_groups() < 2) return;
  auto est = Est(model);
  if (!est.ok()) {
    ++report.failed_calls;
    return;
  }
  const double shift = model.prior(kClass0) * model.prior(kClass1) *
                       (1 - 2 * auc);
  const double est_bs =
      n * std::abs(Value(BrierScore(est->model), report) - (shift + 1.0 / 3));
  const double est_mae = n * std::abs(Value(MeanAbsoluteError(est->model),
                                            report) -
                                      (shift + 0.5));
  if (model.num_groups() == model.size()) {
    report.est_brier_scaled = std::max(report.est_brier_scaled, est_bs);
    report.est_mae_scaled = std::max(report.est_mae_scaled, est_mae);
  } else {
    report.est_brier_scaled_ties =
        std::max(report.est_brier_scaled_ties, est_bs);
  }
}

// The suite: "count" datasets with n in [2, 200], half of them with ties.
inline IdentityReport RunIdentitySuite(uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  IdentityReport report;
  for (int i = 0; i < count; ++i) {
    CheckIdentities(RandomDataset(rng, {.with_ties = i % 2 == 1}), rng,
                    report);
  }
  return report;
}

}  // namespace costeval::testing

#endif  // COSTEVAL_TESTS_TESTING_IDENTITY_SUITE_H_
