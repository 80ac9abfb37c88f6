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

// Scored test sets and their empirical score distributions.
//
// Class 0 is the positive class and scores grow with the estimated
// probability of class 1. A sample is assigned to class 1 when its score is
// strictly above the threshold, so the per-class CDFs count scores <= t.

#ifndef COSTEVAL_MODEL_H_
#define COSTEVAL_MODEL_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"

namespace costeval {

inline constexpr int kClass0 = 0;
inline constexpr int kClass1 = 1;

struct Sample {
  double score;
  int label;
};

struct ScoredDataset {
  std::vector<Sample> samples;

  // Zips "scores" and "labels". Extra entries of the longer vector are
  // dropped.
  static ScoredDataset FromVectors(const std::vector<double>& scores,
                                   const std::vector<int>& labels);
};

// Per-class multipliers used in place of the class priors. Cost mode uses the
// priors, skew mode uses 1/2 for both.
struct ClassWeights {
  double class0;
  double class1;

  double operator[](int k) const { return k == kClass0 ? class0 : class1; }
};

inline constexpr ClassWeights kBalancedWeights{0.5, 0.5};

enum class ConditionKind { kCost, kSkew };

struct OperatingCondition {
  ConditionKind kind = ConditionKind::kCost;
  double value = 0.5;
};

// One distinct score with its per-class multiplicities.
struct ScoreGroup {
  double score;
  int64_t count0;
  int64_t count1;

  int64_t size() const { return count0 + count1; }
};

// Result of inverting the rate function.
struct RateInversion {
  double threshold;
  // Rate actually realized by "threshold".
  double achieved_rate;
  // Number of score groups at or below "threshold".
  int vertex;
  // True when the requested rate is realized exactly.
  bool exact;
};

// Distinct-score compression of a dataset. Immutable once built.
//
// Vertices are indexed 0..num_groups(): vertex v is the cut leaving the first
// v score groups at or below the threshold.
class EmpiricalModel {
 public:
  // Threshold used for the empty cut, below every score.
  static constexpr double kBelowMinOffset = 1.0;

  static absl::StatusOr<EmpiricalModel> Build(const ScoredDataset& dataset);

  // "groups" must have strictly increasing scores.
  static absl::StatusOr<EmpiricalModel> FromGroups(
      std::vector<ScoreGroup> groups);

  int64_t size() const { return count0_ + count1_; }
  int64_t count(int k) const { return k == kClass0 ? count0_ : count1_; }
  double prior(int k) const {
    return static_cast<double>(count(k)) / static_cast<double>(size());
  }
  ClassWeights priors() const { return {prior(kClass0), prior(kClass1)}; }
  ClassWeights WeightsFor(ConditionKind kind) const {
    return kind == ConditionKind::kCost ? priors() : kBalancedWeights;
  }

  const std::vector<ScoreGroup>& groups() const { return groups_; }
  int num_groups() const { return static_cast<int>(groups_.size()); }
  double min_score() const { return groups_.front().score; }
  double max_score() const { return groups_.back().score; }
  bool ScoresWithin(double lower, double upper) const {
    return min_score() >= lower && max_score() <= upper;
  }

  int64_t CumulativeCount(int k, int vertex) const {
    return k == kClass0 ? cum0_[vertex] : cum1_[vertex];
  }
  double VertexCdf(int k, int vertex) const {
    return static_cast<double>(CumulativeCount(k, vertex)) /
           static_cast<double>(count(k));
  }
  double VertexRate(int vertex, ClassWeights weights) const {
    return weights.class0 * VertexCdf(kClass0, vertex) +
           weights.class1 * VertexCdf(kClass1, vertex);
  }
  // Representative threshold of a vertex: the midpoint between the adjacent
  // scores, min - 1 for vertex 0 and the max score for the last vertex.
  double VertexThreshold(int vertex) const;

  // Number of score groups with score <= t.
  int VertexAt(double t) const;

  double Cdf(int k, double t) const { return VertexCdf(k, VertexAt(t)); }
  double Rate(double t) const { return Rate(t, priors()); }
  double Rate(double t, ClassWeights weights) const {
    return VertexRate(VertexAt(t), weights);
  }

  // Threshold whose rate matches "rate" when achievable (plateau centroid),
  // otherwise the smallest score whose rate exceeds it.
  absl::StatusOr<RateInversion> InverseRate(double rate) const {
    return InverseRate(rate, priors());
  }
  absl::StatusOr<RateInversion> InverseRate(double rate,
                                            ClassWeights weights) const;

  double ClassScoreMean(int k) const {
    return k == kClass0 ? mean0_ : mean1_;
  }

 private:
  EmpiricalModel() = default;

  std::vector<ScoreGroup> groups_;
  std::vector<int64_t> cum0_;
  std::vector<int64_t> cum1_;
  int64_t count0_ = 0;
  int64_t count1_ = 0;
  double mean0_ = 0;
  double mean1_ = 0;
};

}  // namespace costeval

#endif  // COSTEVAL_MODEL_H_
