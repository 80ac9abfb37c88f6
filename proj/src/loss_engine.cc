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

#include "costeval/loss_engine.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "costeval/csv_io.h"
#include "costeval/errors.h"
#include "costeval/metrics.h"
#include "costeval/roc.h"
#include "quadrature.h"

namespace costeval {
namespace {

constexpr double kBetaTolerance = 1e-10;
constexpr double kBetaTarget = 1e-13;

// Three-point Gauss-Legendre on [a,b]; exact for polynomials of degree 5.
double GaussLegendre3(const std::function<double(double)>& f, double a,
                      double b) {
  static const double kNode = std::sqrt(0.6);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  return half * (5.0 / 9.0 * f(mid - half * kNode) + 8.0 / 9.0 * f(mid) +
                 5.0 / 9.0 * f(mid + half * kNode));
}

std::vector<double> SegmentEnds(std::vector<double> breakpoints) {
  breakpoints.insert(breakpoints.begin(), 0.0);
  breakpoints.push_back(1.0);
  return breakpoints;
}

double LogBetaFunction(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Integral of f times the Beta density over [a,b]. A segment [0,b] with
// alpha < 1 is integrated in u after x = b u^(1/alpha), which cancels the
// singular power; [a,1] with beta < 1 uses the mirrored substitution.
absl::StatusOr<double> BetaSegmentIntegral(
    const std::function<double(double)>& f, const OperatingWeight& weight,
    double a, double b) {
  const double log_norm = LogBetaFunction(weight.alpha, weight.beta);
  if (a == 0.0 && weight.alpha < 1.0) {
    const double p = 1.0 / weight.alpha;
    auto integrand = [&](double u) {
      const double x = b * std::pow(u, p);
      return f(x) * std::exp((weight.beta - 1.0) * std::log1p(-x) - log_norm) *
             std::pow(b, weight.alpha) / weight.alpha;
    };
    return internal::IntegrateAdaptive(integrand, 0.0, 1.0, kBetaTarget,
                                       kBetaTolerance);
  }
  if (b == 1.0 && weight.beta < 1.0) {
    const double p = 1.0 / weight.beta;
    const double width = 1.0 - a;
    auto integrand = [&](double u) {
      const double x = 1.0 - width * std::pow(u, p);
      return f(x) * std::exp((weight.alpha - 1.0) * std::log(x) - log_norm) *
             std::pow(width, weight.beta) / weight.beta;
    };
    return internal::IntegrateAdaptive(integrand, 0.0, 1.0, kBetaTarget,
                                       kBetaTolerance);
  }
  auto integrand = [&](double x) { return f(x) * weight.Density(x); };
  return internal::IntegrateAdaptive(integrand, a, b, kBetaTarget,
                                     kBetaTolerance);
}

}  // namespace

OperatingWeight OperatingWeight::Uniform(ConditionKind kind) {
  OperatingWeight weight;
  weight.kind = kind;
  return weight;
}

OperatingWeight OperatingWeight::Beta(double alpha, double beta,
                                      ConditionKind kind) {
  OperatingWeight weight;
  weight.family = Family::kBeta;
  weight.alpha = alpha;
  weight.beta = beta;
  weight.kind = kind;
  return weight;
}

double OperatingWeight::Density(double x) const {
  if (x < 0.0 || x > 1.0) return 0.0;
  if (family == Family::kUniform) return 1.0;
  if ((x == 0.0 && alpha < 1.0) || (x == 1.0 && beta < 1.0)) {
    return std::numeric_limits<double>::infinity();
  }
  if (x == 0.0) return alpha == 1.0 ? beta : 0.0;
  if (x == 1.0) return beta == 1.0 ? alpha : 0.0;
  return std::exp((alpha - 1.0) * std::log(x) + (beta - 1.0) * std::log1p(-x) -
                  LogBetaFunction(alpha, beta));
}

std::string OperatingWeight::Spec() const {
  if (family == Family::kUniform) return "uniform";
  return absl::StrFormat("beta:%.12g,%.12g", alpha, beta);
}

absl::StatusOr<OperatingWeight> ParseWeightSpec(absl::string_view spec,
                                                ConditionKind kind) {
  if (spec == "uniform") return OperatingWeight::Uniform(kind);
  if (spec.substr(0, 5) == "beta:") {
    const std::vector<absl::string_view> parts =
        absl::StrSplit(spec.substr(5), ',');
    double alpha;
    double beta;
    if (parts.size() == 2 && absl::SimpleAtod(parts[0], &alpha) &&
        absl::SimpleAtod(parts[1], &beta) && std::isfinite(alpha) &&
        std::isfinite(beta) && alpha > 0 && beta > 0) {
      return OperatingWeight::Beta(alpha, beta, kind);
    }
  }
  return MakeError(ErrorKind::kParseError,
                   absl::StrFormat("invalid weight spec \"%s\", expected "
                                   "uniform or beta:A,B",
                                   spec));
}

double PointwiseLoss(const ClassCdfs& cdfs, double condition,
                     ClassWeights weights) {
  return 2.0 * (condition * weights.class0 * (1.0 - cdfs.f0) +
                (1.0 - condition) * weights.class1 * cdfs.f1);
}

double PointwiseLossCost(const EmpiricalModel& model, double t, double cost) {
  return PointwiseLoss({model.Cdf(kClass0, t), model.Cdf(kClass1, t)}, cost,
                       model.priors());
}

double PointwiseLossSkew(const EmpiricalModel& model, double t, double skew) {
  return PointwiseLoss({model.Cdf(kClass0, t), model.Cdf(kClass1, t)}, skew,
                       kBalancedWeights);
}

absl::StatusOr<double> ExpectedLoss(const EmpiricalModel& model,
                                    const LossQuery& query) {
  auto policy = ThresholdPolicy::Create(query.method, model, query.weight.kind);
  if (!policy.ok()) return policy.status();
  const ClassWeights weights = policy->weights();
  auto integrand = [&](double c) {
    return PointwiseLoss(policy->ExpectedCdfs(c), c, weights);
  };
  std::vector<double> breakpoints = policy->Breakpoints();
  double total = 0;
  if (query.weight.family == OperatingWeight::Family::kUniform) {
    const std::vector<double> ends = SegmentEnds(std::move(breakpoints));
    for (size_t i = 1; i < ends.size(); ++i) {
      total += GaussLegendre3(integrand, ends[i - 1], ends[i]);
    }
    return total;
  }
  breakpoints.push_back(0.5);
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()),
                    breakpoints.end());
  const std::vector<double> ends = SegmentEnds(std::move(breakpoints));
  for (size_t i = 1; i < ends.size(); ++i) {
    auto part = BetaSegmentIntegral(integrand, query.weight, ends[i - 1],
                                    ends[i]);
    if (!part.ok()) return part.status();
    total += *part;
  }
  return total;
}

double RateUniformLossFromAuc(double auc, ClassWeights weights) {
  return weights.class0 * weights.class1 * (1.0 - 2.0 * auc) + 0.5;
}

double RateDrivenLossFromAuc(double auc, ClassWeights weights) {
  return weights.class0 * weights.class1 * (1.0 - 2.0 * auc) + 1.0 / 3.0;
}

double RateUniformFiniteSampleLoss(const EmpiricalModel& model,
                                   ConditionKind kind) {
  // Averages of F0 and F1 over the cutpoints follow from the rank sums of
  // each class, which the AUC determines.
  const ClassWeights w = model.WeightsFor(kind);
  const double auc = Auc(model);
  const double n = static_cast<double>(model.size());
  const double n0 = static_cast<double>(model.count(kClass0));
  const double n1 = static_cast<double>(model.count(kClass1));
  const double miss0 = ((n0 + 1.0) / 2.0 + n1 * (1.0 - auc)) / (n + 1.0);
  const double mean_f1 = 1.0 - ((n1 + 1.0) / 2.0 + n0 * auc) / (n + 1.0);
  return w.class0 * miss0 + w.class1 * mean_f1;
}

absl::StatusOr<double> ClosedFormLoss(const EmpiricalModel& model,
                                      const ThresholdChoiceMethod& method,
                                      ConditionKind kind) {
  const ClassWeights w = model.WeightsFor(kind);
  switch (method.kind) {
    case MethodKind::kScoreFixed:
      return ErrorRate(model, method.parameter, w);
    case MethodKind::kRateFixed: {
      auto inversion = model.InverseRate(method.parameter, w);
      if (!inversion.ok()) return inversion.status();
      return ErrorRate(model, inversion->threshold, w);
    }
    case MethodKind::kScoreUniform:
      if (!model.ScoresWithin(method.lower, method.upper)) {
        return MakeError(ErrorKind::kScoresOutOfUnitRange,
                         "scores outside the score-uniform range");
      }
      return (w.class0 * (model.ClassScoreMean(kClass0) - method.lower) +
              w.class1 * (method.upper - model.ClassScoreMean(kClass1))) /
             (method.upper - method.lower);
    case MethodKind::kScoreDriven: {
      auto bs0 = BrierScoreClass(model, kClass0);
      if (!bs0.ok()) return bs0.status();
      auto bs1 = BrierScoreClass(model, kClass1);
      if (!bs1.ok()) return bs1.status();
      return w.class0 * *bs0 + w.class1 * *bs1;
    }
    case MethodKind::kRateUniform:
      return RateUniformLossFromAuc(Auc(model), w);
    case MethodKind::kRateDriven:
      return RateDrivenLossFromAuc(Auc(model), w);
    case MethodKind::kOptimal:
      return RefinementLossHull(model, w);
  }
  return MakeError(ErrorKind::kInvalidArgument, "unknown method");
}

absl::string_view CurveKindName(CurveKind kind) {
  switch (kind) {
    case CurveKind::kCostCurve:
      return "cost-curve";
    case CurveKind::kBrierCurve:
      return "brier-curve";
    case CurveKind::kOptimalEnvelope:
      return "optimal-envelope";
    case CurveKind::kRefinementCurve:
      return "refinement-curve";
  }
  return "";
}

double CurveSeries::TrapezoidArea() const {
  double area = 0;
  for (size_t i = 1; i < points.size(); ++i) {
    area += (points[i].first - points[i - 1].first) *
            (points[i].second + points[i - 1].second) * 0.5;
  }
  return area;
}

std::string CurveSeries::ToCsv() const {
  std::string out = "x,y\n";
  for (const auto& [x, y] : points) {
    absl::StrAppend(&out, FormatCsvNumber(x), ",", FormatCsvNumber(y), "\n");
  }
  return out;
}

absl::StatusOr<CurveSeries> CostCurvePoints(const EmpiricalModel& model,
                                            const ThresholdChoiceMethod& method,
                                            ConditionKind kind,
                                            int grid_size) {
  if (grid_size < 2) {
    return MakeError(ErrorKind::kInvalidArgument, "grid size must be >= 2");
  }
  auto policy = ThresholdPolicy::Create(method, model, kind);
  if (!policy.ok()) return policy.status();
  std::vector<double> xs = policy->Breakpoints();
  for (int i = 0; i < grid_size; ++i) {
    xs.push_back(static_cast<double>(i) / static_cast<double>(grid_size - 1));
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  CurveSeries series;
  if (method.kind == MethodKind::kScoreDriven) {
    series.kind = CurveKind::kBrierCurve;
  } else if (method.kind == MethodKind::kOptimal) {
    series.kind = CurveKind::kOptimalEnvelope;
  }
  series.points.reserve(xs.size());
  for (double x : xs) {
    series.points.emplace_back(
        x, PointwiseLoss(policy->ExpectedCdfs(x), x, policy->weights()));
  }
  return series;
}

absl::StatusOr<double> ExpectedLossOracle(const EmpiricalModel& model,
                                          const LossQuery& query,
                                          int samples) {
  if (samples < 2) {
    return MakeError(ErrorKind::kInvalidArgument, "need at least 2 samples");
  }
  const ClassWeights weights = model.WeightsFor(query.weight.kind);
  auto value_at = [&](double c) -> absl::StatusOr<double> {
    auto selection =
        ChooseThreshold(query.method, model, {query.weight.kind, c});
    if (!selection.ok()) return selection.status();
    return PointwiseLoss(SelectionCdfs(model, *selection), c, weights) *
           query.weight.Density(c);
  };
  const bool bounded = query.weight.family == OperatingWeight::Family::kUniform ||
                       (query.weight.alpha >= 1.0 && query.weight.beta >= 1.0);
  double total = 0;
  if (bounded) {
    const double h = 1.0 / static_cast<double>(samples - 1);
    for (int i = 0; i < samples; ++i) {
      auto value = value_at(static_cast<double>(i) * h);
      if (!value.ok()) return value.status();
      total += (i == 0 || i == samples - 1 ? 0.5 : 1.0) * *value;
    }
    return total * h;
  }
  const double h = 1.0 / static_cast<double>(samples);
  for (int i = 0; i < samples; ++i) {
    auto value = value_at((static_cast<double>(i) + 0.5) * h);
    if (!value.ok()) return value.status();
    total += *value;
  }
  return total * h;
}

}  // namespace costeval
