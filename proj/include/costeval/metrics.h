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

// Threshold-based error rates and aggregate score metrics.

#ifndef COSTEVAL_METRICS_H_
#define COSTEVAL_METRICS_H_

#include <optional>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "costeval/model.h"

namespace costeval {

// pi0 (1 - F0(t)) + pi1 F1(t).
double ErrorRate(const EmpiricalModel& model, double t);
// Same with both class weights set to 1/2.
double MacroErrorRate(const EmpiricalModel& model, double t);
double ErrorRate(const EmpiricalModel& model, double t, ClassWeights weights);

// Fails with ScoresOutOfUnitRange unless all scores lie in [0,1].
absl::Status CheckUnitScores(const EmpiricalModel& model);

// Per-class mean absolute error: the class-0 mean score and one minus the
// class-1 mean score.
absl::StatusOr<double> MeanAbsoluteErrorClass(const EmpiricalModel& model,
                                              int k);
absl::StatusOr<double> MeanAbsoluteError(const EmpiricalModel& model);
absl::StatusOr<double> MacroMeanAbsoluteError(const EmpiricalModel& model);

absl::StatusOr<double> BrierScoreClass(const EmpiricalModel& model, int k);
absl::StatusOr<double> BrierScore(const EmpiricalModel& model);
absl::StatusOr<double> MacroBrierScore(const EmpiricalModel& model);

// Probability that a class-0 score is below a class-1 score, ties counted
// half.
double Auc(const EmpiricalModel& model);

struct MetricReport {
  std::optional<double> threshold;
  std::optional<double> acc;
  std::optional<double> macc;
  // Score-based metrics are absent when scores leave [0,1].
  std::optional<double> mae;
  std::optional<double> mmae;
  std::optional<double> mae0;
  std::optional<double> mae1;
  std::optional<double> bs;
  std::optional<double> mbs;
  std::optional<double> bs0;
  std::optional<double> bs1;
  double auc = 0;
};

MetricReport ComputeMetricReport(const EmpiricalModel& model,
                                 std::optional<double> threshold);

}  // namespace costeval

#endif  // COSTEVAL_METRICS_H_
