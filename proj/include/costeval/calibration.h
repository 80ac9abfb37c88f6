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

// Monotonic score transformations (isotonic fit and evenly-spaced ranks) and
// calibration diagnostics.

#ifndef COSTEVAL_CALIBRATION_H_
#define COSTEVAL_CALIBRATION_H_

#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "costeval/model.h"

namespace costeval {

enum class CalibrationKind { kPav, kEst, kIdentity };

absl::string_view CalibrationKindName(CalibrationKind kind);

struct CalibratedModel {
  EmpiricalModel model;
  CalibrationKind provenance;
  // (original score, new score) for every distinct original score, in
  // increasing order.
  std::vector<std::pair<double, double>> score_map;

  // New score of an original score present in the source model.
  double Map(double original_score) const;
};

// Pool-adjacent-violators fit of the class-1 indicator against score order.
// Tied scores are pooled before fitting.
CalibratedModel Pav(const EmpiricalModel& model);

// Maps the i-th distinct score (0-based, ascending) to i / (d - 1) with d
// distinct scores. Fails with DegenerateSingleScore when d = 1.
absl::StatusOr<CalibratedModel> Est(const EmpiricalModel& model);

CalibratedModel Identity(const EmpiricalModel& model);

// pi0 mean0 - pi1 (1 - mean1); zero for perfectly calibrated models.
absl::StatusOr<double> PerfectCalibrationResidual(const EmpiricalModel& model);

// True iff every distinct-score bin has mean label within "tolerance" of its
// score.
bool IsPartitionwiseCalibrated(const EmpiricalModel& model, double tolerance);

}  // namespace costeval

#endif  // COSTEVAL_CALIBRATION_H_
