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

#include "costeval/roc.h"

#include <limits>

#include "absl/strings/str_cat.h"
#include "costeval/csv_io.h"

namespace costeval {
namespace {

// Cross product of (a - o) and (b - o) in integer count coordinates, with x
// the class-1 count and y the class-0 count.
__int128 Cross(const RocVertex& o, const RocVertex& a, const RocVertex& b) {
  const __int128 ax = a.cum1 - o.cum1;
  const __int128 ay = a.cum0 - o.cum0;
  const __int128 bx = b.cum1 - o.cum1;
  const __int128 by = b.cum0 - o.cum0;
  return ax * by - ay * bx;
}

double TrapezoidArea(const std::vector<RocVertex>& vertices) {
  double area = 0;
  for (size_t i = 1; i < vertices.size(); ++i) {
    area += (vertices[i].fpr - vertices[i - 1].fpr) *
            (vertices[i].tpr + vertices[i - 1].tpr) * 0.5;
  }
  return area;
}

}  // namespace

double RocCurve::Area() const { return TrapezoidArea(vertices); }

RocCurve BuildRocCurve(const EmpiricalModel& model) {
  RocCurve curve;
  curve.count0 = model.count(kClass0);
  curve.count1 = model.count(kClass1);
  curve.vertices.reserve(model.num_groups() + 1);
  for (int v = 0; v <= model.num_groups(); ++v) {
    curve.vertices.push_back({model.VertexCdf(kClass1, v),
                              model.VertexCdf(kClass0, v),
                              model.VertexThreshold(v), v,
                              model.CumulativeCount(kClass0, v),
                              model.CumulativeCount(kClass1, v)});
  }
  return curve;
}

double ConvexHull::Slope(int segment) const {
  const RocVertex& a = vertices[segment];
  const RocVertex& b = vertices[segment + 1];
  if (b.cum1 == a.cum1) return std::numeric_limits<double>::infinity();
  return (b.tpr - a.tpr) / (b.fpr - a.fpr);
}

double ConvexHull::ImpliedCost(int segment, ClassWeights weights) const {
  const RocVertex& a = vertices[segment];
  const RocVertex& b = vertices[segment + 1];
  const double d0 = weights.class0 * static_cast<double>(b.cum0 - a.cum0) /
                    static_cast<double>(count0);
  const double d1 = weights.class1 * static_cast<double>(b.cum1 - a.cum1) /
                    static_cast<double>(count1);
  return d1 / (d0 + d1);
}

double ConvexHull::ImpliedCost(int segment) const {
  const double n = static_cast<double>(count0 + count1);
  return ImpliedCost(segment, {static_cast<double>(count0) / n,
                               static_cast<double>(count1) / n});
}

double ConvexHull::Area() const { return TrapezoidArea(vertices); }

ConvexHull BuildConvexHull(const RocCurve& curve) {
  ConvexHull hull;
  hull.count0 = curve.count0;
  hull.count1 = curve.count1;
  // Monotone chain; the curve is already sorted by (fpr, tpr).
  for (const RocVertex& vertex : curve.vertices) {
    while (hull.vertices.size() >= 2 &&
           Cross(hull.vertices[hull.vertices.size() - 2],
                 hull.vertices.back(), vertex) >= 0) {
      hull.vertices.pop_back();
    }
    hull.vertices.push_back(vertex);
  }
  return hull;
}

Partition PartitionAtVertices(const EmpiricalModel& model,
                              const std::vector<int>& cuts) {
  Partition partition;
  for (size_t i = 1; i < cuts.size(); ++i) {
    Bin bin{cuts[i - 1], cuts[i], 0, 0, 0.0};
    for (int g = bin.begin_group; g < bin.end_group; ++g) {
      const ScoreGroup& group = model.groups()[g];
      bin.count0 += group.count0;
      bin.count1 += group.count1;
      bin.score_sum += group.score * static_cast<double>(group.size());
    }
    partition.bins.push_back(bin);
  }
  return partition;
}

Partition RocPartition(const EmpiricalModel& model) {
  std::vector<int> cuts(model.num_groups() + 1);
  for (int v = 0; v <= model.num_groups(); ++v) cuts[v] = v;
  return PartitionAtVertices(model, cuts);
}

Partition HullPartition(const EmpiricalModel& model) {
  const ConvexHull hull = BuildConvexHull(BuildRocCurve(model));
  std::vector<int> cuts;
  cuts.reserve(hull.vertices.size());
  for (const RocVertex& vertex : hull.vertices) cuts.push_back(vertex.vertex);
  return PartitionAtVertices(model, cuts);
}

Decomposition Decompose(const EmpiricalModel& model,
                        const Partition& partition) {
  double calibration = 0;
  double refinement = 0;
  for (const Bin& bin : partition.bins) {
    const double size = static_cast<double>(bin.size());
    const double gap = bin.mean_score() - bin.mean_label();
    calibration += size * gap * gap;
    refinement += static_cast<double>(bin.count0) *
                  static_cast<double>(bin.count1) / size;
  }
  const double n = static_cast<double>(model.size());
  return {calibration / n, refinement / n};
}

double RefinementLossHull(const EmpiricalModel& model) {
  return Decompose(model, HullPartition(model)).refinement_loss;
}

double RefinementLossHull(const EmpiricalModel& model, ClassWeights weights) {
  const ConvexHull hull = BuildConvexHull(BuildRocCurve(model));
  double total = 0;
  for (int j = 0; j < hull.num_segments(); ++j) {
    const double d0 =
        weights.class0 *
        static_cast<double>(hull.vertices[j + 1].cum0 - hull.vertices[j].cum0) /
        static_cast<double>(hull.count0);
    const double d1 =
        weights.class1 *
        static_cast<double>(hull.vertices[j + 1].cum1 - hull.vertices[j].cum1) /
        static_cast<double>(hull.count1);
    total += d0 * d1 / (d0 + d1);
  }
  return total;
}

std::string RocCurveCsv(const RocCurve& curve) {
  std::string out = "fpr,tpr,threshold\n";
  for (const RocVertex& v : curve.vertices) {
    absl::StrAppend(&out, FormatCsvNumber(v.fpr), ",", FormatCsvNumber(v.tpr),
                    ",", FormatCsvNumber(v.threshold), "\n");
  }
  return out;
}

std::string ConvexHullCsv(const ConvexHull& hull) {
  std::string out = "fpr,tpr,threshold,segment_slope,c_value\n";
  for (size_t i = 0; i < hull.vertices.size(); ++i) {
    const RocVertex& v = hull.vertices[i];
    absl::StrAppend(&out, FormatCsvNumber(v.fpr), ",", FormatCsvNumber(v.tpr),
                    ",", FormatCsvNumber(v.threshold), ",");
    if (static_cast<int>(i) < hull.num_segments()) {
      absl::StrAppend(&out, FormatCsvNumber(hull.Slope(i)), ",",
                      FormatCsvNumber(hull.ImpliedCost(i)));
    } else {
      absl::StrAppend(&out, ",");
    }
    absl::StrAppend(&out, "\n");
  }
  return out;
}

}  // namespace costeval
