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

// ROC curves, their upper convex hulls, score partitions and the binned
// calibration/refinement decomposition of the Brier score.
//
// ROC space here plots F1(t) on the x axis (fpr) against F0(t) on the y axis
// (tpr), since class 0 is the positive class.

#ifndef COSTEVAL_ROC_H_
#define COSTEVAL_ROC_H_

#include <cstdint>
#include <string>
#include <vector>

#include "costeval/model.h"

namespace costeval {

struct RocVertex {
  double fpr;
  double tpr;
  double threshold;
  // Model vertex index, see EmpiricalModel.
  int vertex;
  int64_t cum0;
  int64_t cum1;
};

struct RocCurve {
  std::vector<RocVertex> vertices;
  int64_t count0 = 0;
  int64_t count1 = 0;

  // Trapezoidal area.
  double Area() const;
};

RocCurve BuildRocCurve(const EmpiricalModel& model);

// Upper convex envelope of a ROC curve. Collinear vertices are dropped, so
// consecutive segment slopes are strictly decreasing.
struct ConvexHull {
  std::vector<RocVertex> vertices;
  int64_t count0 = 0;
  int64_t count1 = 0;

  int num_segments() const { return static_cast<int>(vertices.size()) - 1; }
  // Delta tpr over delta fpr of segment j, +inf for vertical segments.
  double Slope(int segment) const;
  // Cost proportion at which both endpoints of segment j have equal loss,
  // given the class weights.
  double ImpliedCost(int segment, ClassWeights weights) const;
  double ImpliedCost(int segment) const;
  double Area() const;
};

ConvexHull BuildConvexHull(const RocCurve& curve);

// Contiguous run of score groups [begin_group, end_group).
struct Bin {
  int begin_group;
  int end_group;
  int64_t count0;
  int64_t count1;
  double score_sum;

  int64_t size() const { return count0 + count1; }
  double mean_score() const {
    return score_sum / static_cast<double>(size());
  }
  double mean_label() const {
    return static_cast<double>(count1) / static_cast<double>(size());
  }
};

struct Partition {
  std::vector<Bin> bins;
};

// Bins split at the given model vertices. "cuts" must be increasing, start at
// 0 and end at num_groups().
Partition PartitionAtVertices(const EmpiricalModel& model,
                              const std::vector<int>& cuts);

// One bin per distinct score.
Partition RocPartition(const EmpiricalModel& model);
// One bin per hull segment.
Partition HullPartition(const EmpiricalModel& model);

struct Decomposition {
  double calibration_loss;
  double refinement_loss;
};

Decomposition Decompose(const EmpiricalModel& model,
                        const Partition& partition);

// Refinement loss over hull bins.
double RefinementLossHull(const EmpiricalModel& model);
// Hull refinement with arbitrary class weights; skew mode passes 1/2 for both.
double RefinementLossHull(const EmpiricalModel& model, ClassWeights weights);

// CSV with header "fpr,tpr,threshold".
std::string RocCurveCsv(const RocCurve& curve);
// CSV with header "fpr,tpr,threshold,segment_slope,c_value". Each row's slope
// and implied cost describe the segment leaving that vertex; the last row
// leaves them empty.
std::string ConvexHullCsv(const ConvexHull& hull);

}  // namespace costeval

#endif  // COSTEVAL_ROC_H_
