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

#include "costeval/threshold_methods.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/strings/numbers.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "costeval/errors.h"
#include "costeval/metrics.h"

namespace costeval {
namespace {

ClassCdfs UniformRangeCdfs(const EmpiricalModel& model,
                           const UniformThresholdRange& range) {
  double above0 = 0;
  double above1 = 0;
  for (const ScoreGroup& group : model.groups()) {
    const double gap =
        range.upper - std::clamp(group.score, range.lower, range.upper);
    above0 += static_cast<double>(group.count0) * gap;
    above1 += static_cast<double>(group.count1) * gap;
  }
  const double width = range.upper - range.lower;
  return {above0 / (width * static_cast<double>(model.count(kClass0))),
          above1 / (width * static_cast<double>(model.count(kClass1)))};
}

// Weights of the model vertices in the uniform mixture over the n + 1
// instance cutpoints. A cutpoint inside a tied group of size m splits its
// weight linearly between the two vertices around the group.
std::vector<double> CutpointVertexWeights(const EmpiricalModel& model) {
  const int num_groups = model.num_groups();
  std::vector<double> weights(num_groups + 1, 1.0);
  for (int g = 0; g < num_groups; ++g) {
    const double interior =
        0.5 * static_cast<double>(model.groups()[g].size() - 1);
    weights[g] += interior;
    weights[g + 1] += interior;
  }
  const double total = static_cast<double>(model.size() + 1);
  for (double& w : weights) w /= total;
  return weights;
}

absl::StatusOr<double> ParseNumber(absl::string_view text,
                                   absl::string_view spec) {
  double value;
  if (!absl::SimpleAtod(text, &value) || !std::isfinite(value)) {
    return MakeError(ErrorKind::kParseError,
                     absl::StrFormat("invalid number in method spec \"%s\"",
                                     spec));
  }
  return value;
}

}  // namespace

ThresholdChoiceMethod ThresholdChoiceMethod::ScoreFixed(double threshold) {
  ThresholdChoiceMethod method;
  method.kind = MethodKind::kScoreFixed;
  method.parameter = threshold;
  return method;
}

ThresholdChoiceMethod ThresholdChoiceMethod::RateFixed(double rate) {
  ThresholdChoiceMethod method;
  method.kind = MethodKind::kRateFixed;
  method.parameter = rate;
  return method;
}

ThresholdChoiceMethod ThresholdChoiceMethod::ScoreUniform(double lower,
                                                          double upper) {
  ThresholdChoiceMethod method;
  method.kind = MethodKind::kScoreUniform;
  method.lower = lower;
  method.upper = upper;
  return method;
}

ThresholdChoiceMethod ThresholdChoiceMethod::ScoreDriven() {
  ThresholdChoiceMethod method;
  method.kind = MethodKind::kScoreDriven;
  return method;
}

ThresholdChoiceMethod ThresholdChoiceMethod::RateUniform(
    RateUniformSupport support) {
  ThresholdChoiceMethod method;
  method.kind = MethodKind::kRateUniform;
  method.rate_uniform_support = support;
  return method;
}

ThresholdChoiceMethod ThresholdChoiceMethod::RateDriven(
    RateDrivenInversion inversion) {
  ThresholdChoiceMethod method;
  method.kind = MethodKind::kRateDriven;
  method.rate_driven_inversion = inversion;
  return method;
}

ThresholdChoiceMethod ThresholdChoiceMethod::Optimal() {
  ThresholdChoiceMethod method;
  method.kind = MethodKind::kOptimal;
  return method;
}

std::string ThresholdChoiceMethod::Spec() const {
  switch (kind) {
    case MethodKind::kScoreFixed:
      return absl::StrFormat("sf=%.12g", parameter);
    case MethodKind::kRateFixed:
      return absl::StrFormat("rf=%.12g", parameter);
    case MethodKind::kScoreUniform:
      if (lower == 0.0 && upper == 1.0) return "su";
      return absl::StrFormat("su=%.12g,%.12g", lower, upper);
    case MethodKind::kScoreDriven:
      return "sd";
    case MethodKind::kRateUniform:
      return rate_uniform_support == RateUniformSupport::kCutpoints
                 ? "ru"
                 : "ru:scores";
    case MethodKind::kRateDriven:
      return rate_driven_inversion == RateDrivenInversion::kInterpolated
                 ? "rd"
                 : "rd:step";
    case MethodKind::kOptimal:
      return "opt";
  }
  return "";
}

absl::StatusOr<ThresholdChoiceMethod> ParseMethodSpec(absl::string_view spec,
                                                      double default_threshold,
                                                      double default_rate) {
  const std::pair<absl::string_view, absl::string_view> parts =
      absl::StrSplit(spec, absl::MaxSplits('=', 1));
  const absl::string_view name = parts.first;
  const absl::string_view value = parts.second;
  const bool has_value = spec.find('=') != absl::string_view::npos;
  auto no_value = [&]() -> absl::Status {
    if (has_value) {
      return MakeError(ErrorKind::kParseError,
                       absl::StrFormat("method \"%s\" takes no value", name));
    }
    return absl::OkStatus();
  };

  if (name == "sf") {
    double threshold = default_threshold;
    if (has_value) {
      auto parsed = ParseNumber(value, spec);
      if (!parsed.ok()) return parsed.status();
      threshold = *parsed;
    }
    return ThresholdChoiceMethod::ScoreFixed(threshold);
  }
  if (name == "rf") {
    double rate = default_rate;
    if (has_value) {
      auto parsed = ParseNumber(value, spec);
      if (!parsed.ok()) return parsed.status();
      rate = *parsed;
    }
    if (!(rate >= 0.0 && rate <= 1.0)) {
      return MakeError(ErrorKind::kInvalidRate,
                       absl::StrFormat("rate %g outside [0,1]", rate));
    }
    return ThresholdChoiceMethod::RateFixed(rate);
  }
  if (name == "su") {
    if (!has_value) return ThresholdChoiceMethod::ScoreUniform();
    const std::vector<absl::string_view> bounds = absl::StrSplit(value, ',');
    if (bounds.size() != 2) {
      return MakeError(ErrorKind::kParseError,
                       "score-uniform range must be \"su=L,U\"");
    }
    auto lower = ParseNumber(bounds[0], spec);
    if (!lower.ok()) return lower.status();
    auto upper = ParseNumber(bounds[1], spec);
    if (!upper.ok()) return upper.status();
    if (!(*lower < *upper)) {
      return MakeError(ErrorKind::kInvalidArgument,
                       "score-uniform range needs L < U");
    }
    return ThresholdChoiceMethod::ScoreUniform(*lower, *upper);
  }
  if (name == "sd") {
    if (auto status = no_value(); !status.ok()) return status;
    return ThresholdChoiceMethod::ScoreDriven();
  }
  if (name == "ru" || name == "ru:scores") {
    if (auto status = no_value(); !status.ok()) return status;
    return ThresholdChoiceMethod::RateUniform(
        name == "ru" ? RateUniformSupport::kCutpoints
                     : RateUniformSupport::kExampleScores);
  }
  if (name == "rd" || name == "rd:step") {
    if (auto status = no_value(); !status.ok()) return status;
    return ThresholdChoiceMethod::RateDriven(
        name == "rd" ? RateDrivenInversion::kInterpolated
                     : RateDrivenInversion::kStep);
  }
  if (name == "opt") {
    if (auto status = no_value(); !status.ok()) return status;
    return ThresholdChoiceMethod::Optimal();
  }
  return MakeError(ErrorKind::kParseError,
                   absl::StrFormat("unknown method spec \"%s\"", spec));
}

ClassCdfs SelectionCdfs(const EmpiricalModel& model,
                        const ThresholdSelection& selection) {
  if (selection.uniform.has_value()) {
    return UniformRangeCdfs(model, *selection.uniform);
  }
  ClassCdfs cdfs{0, 0};
  for (const WeightedThreshold& atom : selection.mixture) {
    const int vertex = model.VertexAt(atom.threshold);
    cdfs.f0 += atom.weight * model.VertexCdf(kClass0, vertex);
    cdfs.f1 += atom.weight * model.VertexCdf(kClass1, vertex);
  }
  return cdfs;
}

absl::StatusOr<ThresholdPolicy> ThresholdPolicy::Create(
    const ThresholdChoiceMethod& method, const EmpiricalModel& model,
    ConditionKind kind) {
  ThresholdPolicy policy;
  policy.model_ = &model;
  policy.method_ = method;
  policy.weights_ = model.WeightsFor(kind);
  const int num_groups = model.num_groups();

  switch (method.kind) {
    case MethodKind::kScoreFixed:
      if (!std::isfinite(method.parameter)) {
        return MakeError(ErrorKind::kInvalidArgument,
                         "score-fixed threshold must be finite");
      }
      policy.fixed_selection_ = ThresholdSelection::Single(method.parameter);
      break;
    case MethodKind::kRateFixed: {
      auto inversion = model.InverseRate(method.parameter, policy.weights_);
      if (!inversion.ok()) return inversion.status();
      policy.fixed_selection_ = ThresholdSelection::Single(inversion->threshold);
      break;
    }
    case MethodKind::kScoreUniform:
      if (!(method.lower < method.upper)) {
        return MakeError(ErrorKind::kInvalidArgument,
                         "score-uniform range needs lower < upper");
      }
      if (!model.ScoresWithin(method.lower, method.upper)) {
        return MakeError(
            ErrorKind::kScoresOutOfUnitRange,
            absl::StrFormat("scores span [%g, %g], outside [%g, %g]",
                            model.min_score(), model.max_score(),
                            method.lower, method.upper));
      }
      policy.fixed_selection_.uniform =
          UniformThresholdRange{method.lower, method.upper};
      break;
    case MethodKind::kScoreDriven:
      if (auto status = CheckUnitScores(model); !status.ok()) return status;
      break;
    case MethodKind::kRateUniform:
      if (method.rate_uniform_support == RateUniformSupport::kCutpoints) {
        const std::vector<double> weights = CutpointVertexWeights(model);
        for (int v = 0; v <= num_groups; ++v) {
          policy.fixed_selection_.mixture.push_back(
              {model.VertexThreshold(v), weights[v]});
        }
      } else {
        const double n = static_cast<double>(model.size());
        for (const ScoreGroup& group : model.groups()) {
          policy.fixed_selection_.mixture.push_back(
              {group.score, static_cast<double>(group.size()) / n});
        }
      }
      break;
    case MethodKind::kRateDriven:
      policy.vertex_rates_.resize(num_groups + 1);
      for (int v = 0; v <= num_groups; ++v) {
        policy.vertex_rates_[v] = model.VertexRate(v, policy.weights_);
      }
      // Pin the ends so that every condition in [0,1] is bracketed.
      policy.vertex_rates_.front() = 0.0;
      policy.vertex_rates_.back() = 1.0;
      break;
    case MethodKind::kOptimal:
      policy.hull_ = BuildConvexHull(BuildRocCurve(model));
      for (int j = 0; j < policy.hull_.num_segments(); ++j) {
        policy.implied_costs_.push_back(
            policy.hull_.ImpliedCost(j, policy.weights_));
      }
      break;
  }
  if (method.kind == MethodKind::kScoreFixed ||
      method.kind == MethodKind::kRateFixed ||
      method.kind == MethodKind::kScoreUniform ||
      method.kind == MethodKind::kRateUniform) {
    policy.fixed_cdfs_ = SelectionCdfs(model, policy.fixed_selection_);
  }
  return policy;
}

int ThresholdPolicy::OptimalHullVertex(double condition) const {
  // Moving from hull vertex j to j + 1 lowers the loss iff the condition
  // exceeds the segment's implied cost.
  const auto it = std::lower_bound(implied_costs_.begin(),
                                   implied_costs_.end(), condition);
  return static_cast<int>(it - implied_costs_.begin());
}

std::pair<int, double> ThresholdPolicy::RateBracket(double condition) const {
  const auto it = std::upper_bound(vertex_rates_.begin(), vertex_rates_.end(),
                                   condition);
  int v = static_cast<int>(it - vertex_rates_.begin()) - 1;
  v = std::clamp(v, 0, static_cast<int>(vertex_rates_.size()) - 2);
  const double lo = vertex_rates_[v];
  const double hi = vertex_rates_[v + 1];
  const double upper_weight = std::clamp((condition - lo) / (hi - lo), 0.0, 1.0);
  return {v, upper_weight};
}

ThresholdSelection ThresholdPolicy::Select(double condition) const {
  const EmpiricalModel& model = *model_;
  switch (method_.kind) {
    case MethodKind::kScoreDriven:
      return ThresholdSelection::Single(condition);
    case MethodKind::kRateDriven: {
      if (method_.rate_driven_inversion == RateDrivenInversion::kStep) {
        return ThresholdSelection::Single(
            model.InverseRate(condition, weights_)->threshold);
      }
      const auto [v, upper_weight] = RateBracket(condition);
      if (upper_weight == 0.0) {
        return ThresholdSelection::Single(model.VertexThreshold(v));
      }
      if (upper_weight == 1.0) {
        return ThresholdSelection::Single(model.VertexThreshold(v + 1));
      }
      return {{{model.VertexThreshold(v), 1.0 - upper_weight},
               {model.VertexThreshold(v + 1), upper_weight}},
              std::nullopt};
    }
    case MethodKind::kOptimal: {
      const int j = OptimalHullVertex(condition);
      return ThresholdSelection::Single(hull_.vertices[j].threshold);
    }
    default:
      return fixed_selection_;
  }
}

ClassCdfs ThresholdPolicy::ExpectedCdfs(double condition) const {
  const EmpiricalModel& model = *model_;
  switch (method_.kind) {
    case MethodKind::kScoreDriven: {
      const int v = model.VertexAt(condition);
      return {model.VertexCdf(kClass0, v), model.VertexCdf(kClass1, v)};
    }
    case MethodKind::kRateDriven: {
      if (method_.rate_driven_inversion == RateDrivenInversion::kStep) {
        const int v = model.InverseRate(condition, weights_)->vertex;
        return {model.VertexCdf(kClass0, v), model.VertexCdf(kClass1, v)};
      }
      const auto [v, upper_weight] = RateBracket(condition);
      const double lower_weight = 1.0 - upper_weight;
      return {lower_weight * model.VertexCdf(kClass0, v) +
                  upper_weight * model.VertexCdf(kClass0, v + 1),
              lower_weight * model.VertexCdf(kClass1, v) +
                  upper_weight * model.VertexCdf(kClass1, v + 1)};
    }
    case MethodKind::kOptimal: {
      const RocVertex& vertex = hull_.vertices[OptimalHullVertex(condition)];
      return {vertex.tpr, vertex.fpr};
    }
    default:
      return fixed_cdfs_;
  }
}

std::vector<double> ThresholdPolicy::Breakpoints() const {
  std::vector<double> points;
  switch (method_.kind) {
    case MethodKind::kScoreDriven:
      for (const ScoreGroup& group : model_->groups()) {
        points.push_back(group.score);
      }
      break;
    case MethodKind::kRateDriven:
      points = vertex_rates_;
      break;
    case MethodKind::kOptimal:
      points = implied_costs_;
      break;
    default:
      break;
  }
  std::erase_if(points, [](double x) { return !(x > 0.0 && x < 1.0); });
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

absl::StatusOr<ThresholdSelection> ChooseThreshold(
    const ThresholdChoiceMethod& method, const EmpiricalModel& model,
    const OperatingCondition& condition) {
  if (!(condition.value >= 0.0 && condition.value <= 1.0)) {
    return MakeError(ErrorKind::kInvalidArgument,
                     absl::StrFormat("operating condition %g outside [0,1]",
                                     condition.value));
  }
  auto policy = ThresholdPolicy::Create(method, model, condition.kind);
  if (!policy.ok()) return policy.status();
  return policy->Select(condition.value);
}

absl::StatusOr<ThresholdSelection> OptimalThreshold(const EmpiricalModel& model,
                                                    double cost) {
  return ChooseThreshold(ThresholdChoiceMethod::Optimal(), model,
                         {ConditionKind::kCost, cost});
}

}  // namespace costeval
