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

// Threshold choice methods: policies mapping an operating condition (a cost
// proportion or a skew) to a threshold, or to a finite or uniform mixture of
// thresholds.

#ifndef COSTEVAL_THRESHOLD_METHODS_H_
#define COSTEVAL_THRESHOLD_METHODS_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "costeval/model.h"
#include "costeval/roc.h"

namespace costeval {

enum class MethodKind {
  kScoreFixed,
  kRateFixed,
  kScoreUniform,
  kScoreDriven,
  kRateUniform,
  kRateDriven,
  kOptimal,
};

// Support of the rate-uniform mixture.
enum class RateUniformSupport {
  // The n + 1 instance cutpoints i/n, each realized on the interpolated ROC
  // curve. This is the default.
  kCutpoints,
  // The n example scores, each used as a threshold.
  kExampleScores,
};

enum class RateDrivenInversion {
  // Mixture of the two achievable rates bracketing c. This is the default.
  kInterpolated,
  // Single threshold from EmpiricalModel::InverseRate.
  kStep,
};

struct ThresholdChoiceMethod {
  MethodKind kind = MethodKind::kScoreDriven;
  // Threshold for kScoreFixed, rate for kRateFixed.
  double parameter = 0.5;
  // Range of kScoreUniform.
  double lower = 0.0;
  double upper = 1.0;
  RateUniformSupport rate_uniform_support = RateUniformSupport::kCutpoints;
  RateDrivenInversion rate_driven_inversion =
      RateDrivenInversion::kInterpolated;

  static ThresholdChoiceMethod ScoreFixed(double threshold);
  static ThresholdChoiceMethod RateFixed(double rate);
  static ThresholdChoiceMethod ScoreUniform(double lower = 0.0,
                                            double upper = 1.0);
  static ThresholdChoiceMethod ScoreDriven();
  static ThresholdChoiceMethod RateUniform(
      RateUniformSupport support = RateUniformSupport::kCutpoints);
  static ThresholdChoiceMethod RateDriven(
      RateDrivenInversion inversion = RateDrivenInversion::kInterpolated);
  static ThresholdChoiceMethod Optimal();

  // Canonical spec string, e.g. "sf=0.5" or "opt".
  std::string Spec() const;
};

// Parses "sf=T", "rf=R", "su", "su=L,U", "sd", "ru", "rd" or "opt". Bare "sf"
// and "rf" take "default_threshold" and "default_rate".
absl::StatusOr<ThresholdChoiceMethod> ParseMethodSpec(
    absl::string_view spec, double default_threshold = 0.5,
    double default_rate = 0.5);

struct WeightedThreshold {
  double threshold;
  double weight;
};

struct UniformThresholdRange {
  double lower;
  double upper;
};

// Either a finite mixture of thresholds with weights summing to one, or a
// uniform distribution over a threshold range.
struct ThresholdSelection {
  std::vector<WeightedThreshold> mixture;
  std::optional<UniformThresholdRange> uniform;

  static ThresholdSelection Single(double threshold) {
    return {{{threshold, 1.0}}, std::nullopt};
  }
};

// Expected per-class CDFs of a (possibly random) threshold.
struct ClassCdfs {
  double f0;
  double f1;
};

ClassCdfs SelectionCdfs(const EmpiricalModel& model,
                        const ThresholdSelection& selection);

// A method bound to a model and condition kind, with per-model tables
// precomputed. Keeps a pointer to "model", which must outlive the policy.
class ThresholdPolicy {
 public:
  static absl::StatusOr<ThresholdPolicy> Create(
      const ThresholdChoiceMethod& method, const EmpiricalModel& model,
      ConditionKind kind);

  // "condition" must lie in [0,1].
  ThresholdSelection Select(double condition) const;
  // Equal to SelectionCdfs(model, Select(condition)) without building the
  // selection.
  ClassCdfs ExpectedCdfs(double condition) const;
  // Conditions in (0,1), sorted, between which the expected CDFs are affine
  // in the condition.
  std::vector<double> Breakpoints() const;

  ClassWeights weights() const { return weights_; }
  const ThresholdChoiceMethod& method() const { return method_; }

 private:
  ThresholdPolicy() = default;

  // Vertex holding the optimum at "condition".
  int OptimalHullVertex(double condition) const;
  // Vertex v with rate(v) <= condition <= rate(v + 1), plus the weight of
  // v + 1 in the interpolated mixture.
  std::pair<int, double> RateBracket(double condition) const;

  const EmpiricalModel* model_ = nullptr;
  ThresholdChoiceMethod method_;
  ClassWeights weights_{0.5, 0.5};
  // Constant selection for methods that ignore the condition.
  ThresholdSelection fixed_selection_;
  ClassCdfs fixed_cdfs_{0, 0};
  // Vertex rates under "weights_" (rate-driven).
  std::vector<double> vertex_rates_;
  // Hull and its implied costs (optimal).
  ConvexHull hull_;
  std::vector<double> implied_costs_;
};

absl::StatusOr<ThresholdSelection> ChooseThreshold(
    const ThresholdChoiceMethod& method, const EmpiricalModel& model,
    const OperatingCondition& condition);

// Hull vertex minimizing the loss at cost proportion "cost"; ties go to the
// lower threshold.
absl::StatusOr<ThresholdSelection> OptimalThreshold(const EmpiricalModel& model,
                                                    double cost);

}  // namespace costeval

#endif  // COSTEVAL_THRESHOLD_METHODS_H_
