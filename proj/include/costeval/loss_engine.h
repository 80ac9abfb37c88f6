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

// Pointwise loss, expected loss over a distribution of operating conditions,
// closed-form counterparts and cost-space curves.

#ifndef COSTEVAL_LOSS_ENGINE_H_
#define COSTEVAL_LOSS_ENGINE_H_

#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "costeval/model.h"
#include "costeval/threshold_methods.h"

namespace costeval {

// Distribution of the operating condition on [0,1].
struct OperatingWeight {
  enum class Family { kUniform, kBeta };

  Family family = Family::kUniform;
  double alpha = 1.0;
  double beta = 1.0;
  ConditionKind kind = ConditionKind::kCost;

  static OperatingWeight Uniform(ConditionKind kind = ConditionKind::kCost);
  static OperatingWeight Beta(double alpha, double beta,
                              ConditionKind kind = ConditionKind::kCost);

  double Density(double x) const;
  // "uniform" or "beta:A,B".
  std::string Spec() const;
};

// Parses "uniform" or "beta:A,B" with A, B > 0.
absl::StatusOr<OperatingWeight> ParseWeightSpec(absl::string_view spec,
                                                ConditionKind kind);

struct LossQuery {
  ThresholdChoiceMethod method;
  OperatingWeight weight;
};

// 2 {c w0 (1 - F0) + (1 - c) w1 F1}.
double PointwiseLoss(const ClassCdfs& cdfs, double condition,
                     ClassWeights weights);
// Cost-proportion loss at threshold t.
double PointwiseLossCost(const EmpiricalModel& model, double t, double cost);
// Skew loss at threshold t: z (1 - F0) + (1 - z) F1.
double PointwiseLossSkew(const EmpiricalModel& model, double t, double skew);

// Exact piecewise integration for uniform weights, adaptive Gauss-Kronrod
// per breakpoint segment for Beta weights.
absl::StatusOr<double> ExpectedLoss(const EmpiricalModel& model,
                                    const LossQuery& query);

// Closed-form value paired with each method under uniform weights: error
// rate, error rate at the inverted rate, mean absolute error, Brier score,
// the two AUC formulas and the hull refinement loss.
absl::StatusOr<double> ClosedFormLoss(const EmpiricalModel& model,
                                      const ThresholdChoiceMethod& method,
                                      ConditionKind kind);

// w0 w1 (1 - 2 AUC) + 1/2, the large-sample rate-uniform loss.
double RateUniformLossFromAuc(double auc, ClassWeights weights);
// w0 w1 (1 - 2 AUC) + 1/3, the rate-driven loss.
double RateDrivenLossFromAuc(double auc, ClassWeights weights);
// Exact rate-uniform loss over the n + 1 instance cutpoints. Under skew it
// reduces to (n / (n + 1)) (1 - 2 AUC) / 4 + 1/2.
double RateUniformFiniteSampleLoss(const EmpiricalModel& model,
                                   ConditionKind kind);

enum class CurveKind {
  kCostCurve,
  kBrierCurve,
  kOptimalEnvelope,
  kRefinementCurve,
};

absl::string_view CurveKindName(CurveKind kind);

struct CurveSeries {
  CurveKind kind = CurveKind::kCostCurve;
  std::vector<std::pair<double, double>> points;

  double TrapezoidArea() const;
  // CSV with header "x,y".
  std::string ToCsv() const;
};

// Loss against the operating condition on a uniform grid of "grid_size"
// points, merged with the method's breakpoints.
absl::StatusOr<CurveSeries> CostCurvePoints(const EmpiricalModel& model,
                                            const ThresholdChoiceMethod& method,
                                            ConditionKind kind, int grid_size);

// Test oracle: trapezoid rule on a uniform grid of "samples" conditions,
// selecting thresholds through ChooseThreshold at every node. Weights with
// unbounded density at an end point fall back to the midpoint rule.
absl::StatusOr<double> ExpectedLossOracle(const EmpiricalModel& model,
                                          const LossQuery& query,
                                          int samples);

}  // namespace costeval

#endif  // COSTEVAL_LOSS_ENGINE_H_
