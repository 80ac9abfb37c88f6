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

#include "costeval/calibration.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_format.h"
#include "costeval/errors.h"
#include "costeval/metrics.h"

namespace costeval {
namespace {

struct Block {
  int begin_group;
  int end_group;
  int64_t count1;
  int64_t size;
};

// Applies "new_scores" (one per group, non-decreasing) and merges groups that
// end up with equal scores.
CalibratedModel Remap(const EmpiricalModel& model,
                      const std::vector<double>& new_scores,
                      CalibrationKind provenance) {
  std::vector<ScoreGroup> groups;
  std::vector<std::pair<double, double>> score_map;
  for (int g = 0; g < model.num_groups(); ++g) {
    const ScoreGroup& old_group = model.groups()[g];
    score_map.emplace_back(old_group.score, new_scores[g]);
    if (!groups.empty() && groups.back().score == new_scores[g]) {
      groups.back().count0 += old_group.count0;
      groups.back().count1 += old_group.count1;
    } else {
      groups.push_back({new_scores[g], old_group.count0, old_group.count1});
    }
  }
  // Both classes and ordering are inherited from "model", so this succeeds.
  return {*EmpiricalModel::FromGroups(std::move(groups)), provenance,
          std::move(score_map)};
}

}  // namespace

absl::string_view CalibrationKindName(CalibrationKind kind) {
  switch (kind) {
    case CalibrationKind::kPav:
      return "pav";
    case CalibrationKind::kEst:
      return "est";
    case CalibrationKind::kIdentity:
      return "identity";
  }
  return "";
}

double CalibratedModel::Map(double original_score) const {
  const auto it = std::lower_bound(
      score_map.begin(), score_map.end(), original_score,
      [](const std::pair<double, double>& entry, double value) {
        return entry.first < value;
      });
  if (it == score_map.end()) return score_map.back().second;
  return it->second;
}

CalibratedModel Pav(const EmpiricalModel& model) {
  std::vector<Block> stack;
  for (int g = 0; g < model.num_groups(); ++g) {
    const ScoreGroup& group = model.groups()[g];
    Block block{g, g + 1, group.count1, group.size()};
    // Pool while the previous mean exceeds the current one, compared by
    // cross-multiplication to stay exact.
    while (!stack.empty() &&
           stack.back().count1 * block.size > block.count1 * stack.back().size) {
      const Block& previous = stack.back();
      block = {previous.begin_group, block.end_group,
               previous.count1 + block.count1, previous.size + block.size};
      stack.pop_back();
    }
    stack.push_back(block);
  }
  std::vector<double> new_scores(model.num_groups());
  for (const Block& block : stack) {
    const double mean =
        static_cast<double>(block.count1) / static_cast<double>(block.size);
    for (int g = block.begin_group; g < block.end_group; ++g) {
      new_scores[g] = mean;
    }
  }
  return Remap(model, new_scores, CalibrationKind::kPav);
}

absl::StatusOr<CalibratedModel> Est(const EmpiricalModel& model) {
  const int distinct = model.num_groups();
  if (distinct < 2) {
    return MakeError(ErrorKind::kDegenerateSingleScore,
                     "evenly-spaced transform needs two distinct scores");
  }
  std::vector<double> new_scores(distinct);
  for (int g = 0; g < distinct; ++g) {
    new_scores[g] = static_cast<double>(g) / static_cast<double>(distinct - 1);
  }
  return Remap(model, new_scores, CalibrationKind::kEst);
}

CalibratedModel Identity(const EmpiricalModel& model) {
  std::vector<double> scores;
  for (const ScoreGroup& group : model.groups()) scores.push_back(group.score);
  return Remap(model, scores, CalibrationKind::kIdentity);
}

absl::StatusOr<double> PerfectCalibrationResidual(
    const EmpiricalModel& model) {
  if (auto status = CheckUnitScores(model); !status.ok()) return status;
  return model.prior(kClass0) * model.ClassScoreMean(kClass0) -
         model.prior(kClass1) * (1.0 - model.ClassScoreMean(kClass1));
}

bool IsPartitionwiseCalibrated(const EmpiricalModel& model, double tolerance) {
  for (const ScoreGroup& group : model.groups()) {
    const double mean_label =
        static_cast<double>(group.count1) / static_cast<double>(group.size());
    if (std::abs(group.score - mean_label) > tolerance) return false;
  }
  return true;
}

}  // namespace costeval
