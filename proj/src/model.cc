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

#include "costeval/model.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/strings/str_format.h"
#include "costeval/errors.h"

namespace costeval {
namespace {

// Slack when deciding whether a requested rate is realized exactly.
constexpr double kRateTolerance = 1e-12;

}  // namespace

ScoredDataset ScoredDataset::FromVectors(const std::vector<double>& scores,
                                         const std::vector<int>& labels) {
  ScoredDataset dataset;
  const size_t n = std::min(scores.size(), labels.size());
  dataset.samples.reserve(n);
  for (size_t i = 0; i < n; ++i) dataset.samples.push_back({scores[i], labels[i]});
  return dataset;
}

absl::StatusOr<EmpiricalModel> EmpiricalModel::Build(
    const ScoredDataset& dataset) {
  if (dataset.samples.empty()) {
    return MakeError(ErrorKind::kEmptyDataset, "dataset has no samples");
  }
  std::vector<Sample> sorted = dataset.samples;
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (!std::isfinite(sorted[i].score)) {
      return MakeError(ErrorKind::kNonFiniteScore,
                       absl::StrFormat("sample %d has a non-finite score", i));
    }
    if (sorted[i].label != kClass0 && sorted[i].label != kClass1) {
      return MakeError(ErrorKind::kInvalidArgument,
                       absl::StrFormat("sample %d has label %d", i,
                                       sorted[i].label));
    }
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const Sample& a, const Sample& b) { return a.score < b.score; });
  std::vector<ScoreGroup> groups;
  for (const Sample& sample : sorted) {
    if (groups.empty() || groups.back().score != sample.score) {
      groups.push_back({sample.score, 0, 0});
    }
    if (sample.label == kClass0) {
      ++groups.back().count0;
    } else {
      ++groups.back().count1;
    }
  }
  return FromGroups(std::move(groups));
}

absl::StatusOr<EmpiricalModel> EmpiricalModel::FromGroups(
    std::vector<ScoreGroup> groups) {
  if (groups.empty()) {
    return MakeError(ErrorKind::kEmptyDataset, "dataset has no samples");
  }
  EmpiricalModel model;
  model.cum0_.assign(groups.size() + 1, 0);
  model.cum1_.assign(groups.size() + 1, 0);
  double sum0 = 0;
  double sum1 = 0;
  for (size_t i = 0; i < groups.size(); ++i) {
    const ScoreGroup& group = groups[i];
    if (!std::isfinite(group.score)) {
      return MakeError(ErrorKind::kNonFiniteScore, "non-finite group score");
    }
    if (i > 0 && !(groups[i - 1].score < group.score)) {
      return MakeError(ErrorKind::kInvalidArgument,
                       "group scores must be strictly increasing");
    }
    if (group.count0 < 0 || group.count1 < 0 || group.size() == 0) {
      return MakeError(ErrorKind::kInvalidArgument, "invalid group counts");
    }
    model.cum0_[i + 1] = model.cum0_[i] + group.count0;
    model.cum1_[i + 1] = model.cum1_[i] + group.count1;
    sum0 += group.score * static_cast<double>(group.count0);
    sum1 += group.score * static_cast<double>(group.count1);
  }
  model.count0_ = model.cum0_.back();
  model.count1_ = model.cum1_.back();
  if (model.count0_ == 0 || model.count1_ == 0) {
    return MakeError(ErrorKind::kSingleClassDataset,
                     absl::StrFormat("class %d has no samples",
                                     model.count0_ == 0 ? 0 : 1));
  }
  model.mean0_ = sum0 / static_cast<double>(model.count0_);
  model.mean1_ = sum1 / static_cast<double>(model.count1_);
  model.groups_ = std::move(groups);
  return model;
}

double EmpiricalModel::VertexThreshold(int vertex) const {
  if (vertex <= 0) return min_score() - kBelowMinOffset;
  if (vertex >= num_groups()) return max_score();
  return 0.5 * (groups_[vertex - 1].score + groups_[vertex].score);
}

int EmpiricalModel::VertexAt(double t) const {
  const auto it = std::upper_bound(
      groups_.begin(), groups_.end(), t,
      [](double value, const ScoreGroup& group) { return value < group.score; });
  return static_cast<int>(it - groups_.begin());
}

absl::StatusOr<RateInversion> EmpiricalModel::InverseRate(
    double rate, ClassWeights weights) const {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    return MakeError(ErrorKind::kInvalidRate,
                     absl::StrFormat("rate %g outside [0,1]", rate));
  }
  // Rates are non-decreasing in the vertex index.
  int lo = 0;
  int hi = num_groups();
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (VertexRate(mid, weights) >= rate - kRateTolerance) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const double achieved = VertexRate(lo, weights);
  if (std::abs(achieved - rate) <= kRateTolerance) {
    return RateInversion{VertexThreshold(lo), achieved, lo, true};
  }
  return RateInversion{groups_[lo - 1].score, achieved, lo, false};
}

}  // namespace costeval
