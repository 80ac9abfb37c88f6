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

#include "costeval/metrics.h"

#include "absl/strings/str_format.h"
#include "costeval/errors.h"

namespace costeval {

double ErrorRate(const EmpiricalModel& model, double t, ClassWeights weights) {
  const int vertex = model.VertexAt(t);
  return weights.class0 * (1.0 - model.VertexCdf(kClass0, vertex)) +
         weights.class1 * model.VertexCdf(kClass1, vertex);
}

double ErrorRate(const EmpiricalModel& model, double t) {
  return ErrorRate(model, t, model.priors());
}

double MacroErrorRate(const EmpiricalModel& model, double t) {
  return ErrorRate(model, t, kBalancedWeights);
}

absl::Status CheckUnitScores(const EmpiricalModel& model) {
  if (!model.ScoresWithin(0.0, 1.0)) {
    return MakeError(ErrorKind::kScoresOutOfUnitRange,
                     absl::StrFormat("scores span [%g, %g]", model.min_score(),
                                     model.max_score()));
  }
  return absl::OkStatus();
}

absl::StatusOr<double> MeanAbsoluteErrorClass(const EmpiricalModel& model,
                                              int k) {
  if (auto status = CheckUnitScores(model); !status.ok()) return status;
  return k == kClass0 ? model.ClassScoreMean(kClass0)
                      : 1.0 - model.ClassScoreMean(kClass1);
}

absl::StatusOr<double> MeanAbsoluteError(const EmpiricalModel& model) {
  if (auto status = CheckUnitScores(model); !status.ok()) return status;
  return model.prior(kClass0) * model.ClassScoreMean(kClass0) +
         model.prior(kClass1) * (1.0 - model.ClassScoreMean(kClass1));
}

absl::StatusOr<double> MacroMeanAbsoluteError(const EmpiricalModel& model) {
  if (auto status = CheckUnitScores(model); !status.ok()) return status;
  return 0.5 * model.ClassScoreMean(kClass0) +
         0.5 * (1.0 - model.ClassScoreMean(kClass1));
}

absl::StatusOr<double> BrierScoreClass(const EmpiricalModel& model, int k) {
  if (auto status = CheckUnitScores(model); !status.ok()) return status;
  double sum = 0;
  for (const ScoreGroup& group : model.groups()) {
    if (k == kClass0) {
      sum += static_cast<double>(group.count0) * group.score * group.score;
    } else {
      const double residual = 1.0 - group.score;
      sum += static_cast<double>(group.count1) * residual * residual;
    }
  }
  return sum / static_cast<double>(model.count(k));
}

absl::StatusOr<double> BrierScore(const EmpiricalModel& model) {
  auto bs0 = BrierScoreClass(model, kClass0);
  if (!bs0.ok()) return bs0.status();
  auto bs1 = BrierScoreClass(model, kClass1);
  if (!bs1.ok()) return bs1.status();
  return model.prior(kClass0) * *bs0 + model.prior(kClass1) * *bs1;
}

absl::StatusOr<double> MacroBrierScore(const EmpiricalModel& model) {
  auto bs0 = BrierScoreClass(model, kClass0);
  if (!bs0.ok()) return bs0.status();
  auto bs1 = BrierScoreClass(model, kClass1);
  if (!bs1.ok()) return bs1.status();
  return 0.5 * *bs0 + 0.5 * *bs1;
}

double Auc(const EmpiricalModel& model) {
  // Twice the number of winning pairs, kept integral.
  int64_t doubled = 0;
  const int64_t n1 = model.count(kClass1);
  for (int g = 0; g < model.num_groups(); ++g) {
    const ScoreGroup& group = model.groups()[g];
    const int64_t above = n1 - model.CumulativeCount(kClass1, g + 1);
    doubled += group.count0 * (2 * above + group.count1);
  }
  return static_cast<double>(doubled) /
         (2.0 * static_cast<double>(model.count(kClass0)) *
          static_cast<double>(n1));
}

MetricReport ComputeMetricReport(const EmpiricalModel& model,
                                 std::optional<double> threshold) {
  MetricReport report;
  report.auc = Auc(model);
  if (threshold.has_value()) {
    report.threshold = threshold;
    report.acc = 1.0 - ErrorRate(model, *threshold);
    report.macc = 1.0 - MacroErrorRate(model, *threshold);
  }
  if (CheckUnitScores(model).ok()) {
    report.mae = *MeanAbsoluteError(model);
    report.mmae = *MacroMeanAbsoluteError(model);
    report.mae0 = *MeanAbsoluteErrorClass(model, kClass0);
    report.mae1 = *MeanAbsoluteErrorClass(model, kClass1);
    report.bs = *BrierScore(model);
    report.mbs = *MacroBrierScore(model);
    report.bs0 = *BrierScoreClass(model, kClass0);
    report.bs1 = *BrierScoreClass(model, kClass1);
  }
  return report;
}

}  // namespace costeval
