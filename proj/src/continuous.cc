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

#include "costeval/continuous.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include "absl/strings/str_format.h"
#include "boost/math/tools/minima.hpp"
#include "costeval/errors.h"
#include "quadrature.h"

namespace costeval {
namespace {

constexpr double kMassTolerance = 1e-8;
// Samples per piece when scanning polynomials for signs and minima.
constexpr int kScanPoints = 256;
// Grid points per piece when tracing the ROC curve for convexification.
constexpr int kHullGridPoints = 400;
// Minimal distance below the hull chord that marks a non-hull interval.
constexpr double kHullDeviation = 1e-9;
constexpr double kQuadratureTolerance = 1e-9;
constexpr double kQuadratureTarget = 1e-13;

using RealFunction = std::function<double(double)>;

absl::StatusOr<double> Integrate(const RealFunction& f, double a, double b) {
  return internal::IntegrateAdaptive(f, a, b, kQuadratureTarget,
                                     kQuadratureTolerance);
}

// Integrates over [a,b] after splitting at every breakpoint of "model".
absl::StatusOr<double> IntegrateSplit(const ContinuousModel& model,
                                      const RealFunction& f, double a,
                                      double b) {
  std::vector<double> ends = {a, b};
  for (double x : model.breakpoints()) {
    if (x > a && x < b) ends.push_back(x);
  }
  std::sort(ends.begin(), ends.end());
  double total = 0;
  for (size_t i = 1; i < ends.size(); ++i) {
    auto part = Integrate(f, ends[i - 1], ends[i]);
    if (!part.ok()) return part.status();
    total += *part;
  }
  return total;
}

// Loss at threshold t and cost proportion c.
double LossAt(const ContinuousModel& model, double t, double cost) {
  const ClassWeights w = model.priors();
  return 2.0 * (cost * w.class0 * (1.0 - model.Cdf(kClass0, t)) +
                (1.0 - cost) * w.class1 * model.Cdf(kClass1, t));
}

Polynomial PieceCostNumeratorDerivative(const ContinuousModel& model,
                                        int piece) {
  // p1' p0 - p1 p0'; c' has its sign.
  const Polynomial& p0 = model.density(kClass0).pieces()[piece];
  const Polynomial& p1 = model.density(kClass1).pieces()[piece];
  return p1.Derivative() * p0 - p1 * p0.Derivative();
}

// dc/dT at an interior point of a piece.
double PieceCostDerivative(const ContinuousModel& model, int piece, double t) {
  const ClassWeights w = model.priors();
  const double d0 = model.density(kClass0).pieces()[piece](t);
  const double d1 = model.density(kClass1).pieces()[piece](t);
  const double total = w.class0 * d0 + w.class1 * d1;
  if (total <= 0) return 0.0;
  return w.class0 * w.class1 * PieceCostNumeratorDerivative(model, piece)(t) /
         (total * total);
}

// Pieces of "model" meeting [lo, hi] with positive length, skipping gaps.
std::vector<int> ActivePieces(const ContinuousModel& model, double lo,
                              double hi) {
  std::vector<int> pieces;
  const std::vector<double>& bp = model.breakpoints();
  for (int i = 0; i < model.num_pieces(); ++i) {
    if (model.IsGap(i)) continue;
    if (bp[i + 1] <= lo || bp[i] >= hi) continue;
    pieces.push_back(i);
  }
  return pieces;
}

double Bisect(const RealFunction& f, double lo, double hi) {
  double f_lo = f(lo);
  for (int iter = 0; iter < 200 && hi - lo > 0; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if ((f_mid > 0) == (f_lo > 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

absl::StatusOr<ContinuousModel> ContinuousModel::Create(
    std::string name, std::vector<double> breakpoints,
    std::vector<Polynomial> pieces0, std::vector<Polynomial> pieces1,
    ClassWeights priors) {
  if (breakpoints.size() < 2 || pieces0.size() + 1 != breakpoints.size() ||
      pieces1.size() + 1 != breakpoints.size()) {
    return MakeError(ErrorKind::kInvalidArgument,
                     "densities need one piece per breakpoint interval");
  }
  for (size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i - 1] < breakpoints[i]) ||
        !std::isfinite(breakpoints[i])) {
      return MakeError(ErrorKind::kInvalidArgument,
                       "breakpoints must be finite and increasing");
    }
  }
  if (!(priors.class0 > 0 && priors.class1 > 0 &&
        std::abs(priors.class0 + priors.class1 - 1.0) <= 1e-12)) {
    return MakeError(ErrorKind::kInvalidArgument,
                     "priors must be positive and sum to one");
  }
  ContinuousModel model;
  model.name_ = std::move(name);
  model.density0_ = PiecewisePolynomial(breakpoints, std::move(pieces0));
  model.density1_ = PiecewisePolynomial(std::move(breakpoints),
                                        std::move(pieces1));
  model.priors_ = priors;
  for (int k : {kClass0, kClass1}) {
    const PiecewisePolynomial& f = model.density(k);
    if (std::abs(f.Total() - 1.0) > kMassTolerance) {
      return MakeError(ErrorKind::kInvalidArgument,
                       absl::StrFormat("density %d integrates to %.12g", k,
                                       f.Total()));
    }
    for (int i = 0; i < f.num_pieces(); ++i) {
      const double a = f.breakpoints()[i];
      const double b = f.breakpoints()[i + 1];
      for (int j = 0; j <= kScanPoints; ++j) {
        const double x = a + (b - a) * j / kScanPoints;
        if (f.pieces()[i](x) < -1e-12) {
          return MakeError(ErrorKind::kInvalidArgument,
                           absl::StrFormat("density %d is negative at %g", k,
                                           x));
        }
      }
    }
  }
  return model;
}

bool ContinuousModel::IsGap(int piece) const {
  return density0_.pieces()[piece].IsZero() &&
         density1_.pieces()[piece].IsZero();
}

double ContinuousModel::PieceCostLimit(int piece, double x) const {
  // Lowest-order Taylor terms of both densities at x decide the limit.
  const Polynomial p0 = density0_.pieces()[piece].Shifted(x);
  const Polynomial p1 = density1_.pieces()[piece].Shifted(x);
  const std::vector<double>& c0 = p0.coefficients();
  const std::vector<double>& c1 = p1.coefficients();
  double scale = 0;
  for (double v : c0) scale = std::max(scale, std::abs(v));
  for (double v : c1) scale = std::max(scale, std::abs(v));
  const size_t order = std::max(c0.size(), c1.size());
  for (size_t i = 0; i < order; ++i) {
    const double v0 = i < c0.size() ? c0[i] : 0.0;
    const double v1 = i < c1.size() ? c1[i] : 0.0;
    const double total = priors_.class0 * v0 + priors_.class1 * v1;
    if (std::abs(total) > 1e-13 * scale) return priors_.class1 * v1 / total;
  }
  return 0.5;
}

double ContinuousModel::PieceCost(int piece, double x) const {
  const double d0 = density0_.pieces()[piece](x);
  const double d1 = density1_.pieces()[piece](x);
  const double total = priors_.class0 * d0 + priors_.class1 * d1;
  if (total <= 0) return PieceCostLimit(piece, x);
  return priors_.class1 * d1 / total;
}

absl::StatusOr<double> CostOfScore(const ContinuousModel& model, double t) {
  const double d0 = model.Density(kClass0, t);
  const double d1 = model.Density(kClass1, t);
  const ClassWeights w = model.priors();
  const double total = w.class0 * d0 + w.class1 * d1;
  if (!(total > 0)) {
    return MakeError(ErrorKind::kZeroDensityPoint,
                     absl::StrFormat("both densities vanish at %g", t));
  }
  return w.class1 * d1 / total;
}

absl::StatusOr<double> SlopeOfScore(const ContinuousModel& model, double t) {
  const double d0 = model.Density(kClass0, t);
  const double d1 = model.Density(kClass1, t);
  if (!(d0 > 0) && !(d1 > 0)) {
    return MakeError(ErrorKind::kZeroDensityPoint,
                     absl::StrFormat("both densities vanish at %g", t));
  }
  if (!(d1 > 0)) return std::numeric_limits<double>::infinity();
  return d0 / d1;
}

absl::string_view IntervalKindName(IntervalKind kind) {
  switch (kind) {
    case IntervalKind::kBijective:
      return "bijective";
    case IntervalKind::kConstant:
      return "constant";
    case IntervalKind::kSingular:
      return "singular";
  }
  return "";
}

absl::StatusOr<IntervalMap> ClassifyIntervals(const ContinuousModel& model,
                                              double tolerance) {
  IntervalMap map;
  std::vector<ScoreInterval>& out = map.intervals;
  auto push = [&](const ScoreInterval& interval) {
    if (!out.empty()) {
      ScoreInterval& last = out.back();
      const bool mergeable =
          last.kind == interval.kind &&
          (interval.kind == IntervalKind::kBijective ||
           (interval.kind == IntervalKind::kConstant &&
            std::abs(last.sigma_hi - interval.sigma_lo) <= tolerance));
      if (mergeable) {
        last.tau_hi = interval.tau_hi;
        last.sigma_hi = interval.sigma_hi;
        return;
      }
    }
    out.push_back(interval);
  };

  const std::vector<double>& bp = model.breakpoints();
  double previous_sigma = 0.0;
  double previous_tau = model.lower();
  for (int i = 0; i < model.num_pieces(); ++i) {
    if (model.IsGap(i)) continue;
    const double a = bp[i];
    const double b = bp[i + 1];
    const double start = model.PieceCostLimit(i, a);
    const double end = model.PieceCostLimit(i, b);
    double tau_lo = previous_tau;
    if (start > previous_sigma + tolerance) {
      push({IntervalKind::kSingular, previous_tau, a, previous_sigma, start});
      tau_lo = a;
    } else if (start < previous_sigma - tolerance) {
      return MakeError(ErrorKind::kNonConvexModel,
                       absl::StrFormat("c(T) drops from %.6g to %.6g at %g",
                                       previous_sigma, start, a));
    }
    const Polynomial slope_sign = PieceCostNumeratorDerivative(model, i);
    const PiecewisePolynomial& f0 = model.density(kClass0);
    const PiecewisePolynomial& f1 = model.density(kClass1);
    double scale = 1.0;
    double min_sign = std::numeric_limits<double>::infinity();
    double max_abs = 0;
    for (int j = 0; j <= kScanPoints; ++j) {
      const double x = a + (b - a) * j / kScanPoints;
      const double d0 = f0.pieces()[i](x);
      const double d1 = f1.pieces()[i](x);
      scale = std::max(scale, d0 * d0 + d1 * d1);
      const double value = slope_sign(x);
      min_sign = std::min(min_sign, value);
      max_abs = std::max(max_abs, std::abs(value));
    }
    if (max_abs <= tolerance * scale) {
      const double level = model.PieceCost(i, 0.5 * (a + b));
      push({IntervalKind::kConstant, tau_lo, b, level, level});
      previous_sigma = level;
    } else if (min_sign >= -tolerance * scale) {
      push({IntervalKind::kBijective, tau_lo, b, start, end});
      previous_sigma = end;
    } else {
      return MakeError(ErrorKind::kNonConvexModel,
                       absl::StrFormat("c(T) decreases inside [%g, %g]", a,
                                       b));
    }
    previous_tau = b;
  }
  if (previous_sigma < 1.0 - tolerance) {
    push({IntervalKind::kSingular, previous_tau, model.upper(), previous_sigma,
          1.0});
  } else if (!out.empty()) {
    out.back().tau_hi = model.upper();
  }
  return map;
}

namespace {

struct LossMinimizer {
  double loss;
  double threshold;
};

LossMinimizer MinimizeLoss(const ContinuousModel& model, double cost) {
  const ClassWeights w = model.priors();
  // Both CDFs vanish at the lower end and saturate at the upper end, so the
  // two ends stand in for "predict everything class 1" and its opposite.
  LossMinimizer best{LossAt(model, model.lower(), cost), model.lower()};
  auto consider = [&](double t) {
    const double loss = LossAt(model, t, cost);
    if (loss < best.loss) best = {loss, t};
  };
  consider(model.upper());
  const std::vector<double>& bp = model.breakpoints();
  for (int i = 0; i < model.num_pieces(); ++i) {
    if (model.IsGap(i)) continue;
    const double a = bp[i];
    const double b = bp[i + 1];
    consider(a);
    consider(b);
    // Stationary points: (1 - c) pi1 f1 = c pi0 f0.
    const Polynomial& p0 = model.density(kClass0).pieces()[i];
    const Polynomial& p1 = model.density(kClass1).pieces()[i];
    auto gradient = [&](double x) {
      return (1.0 - cost) * w.class1 * p1(x) - cost * w.class0 * p0(x);
    };
    constexpr int kRootScan = 16;
    double x_prev = a;
    double g_prev = gradient(a);
    for (int j = 1; j <= kRootScan; ++j) {
      const double x = a + (b - a) * j / kRootScan;
      const double g = gradient(x);
      if ((g_prev < 0) != (g < 0)) consider(Bisect(gradient, x_prev, x));
      x_prev = x;
      g_prev = g;
    }
  }
  return best;
}

// Costs inside (a, b) where the minimizing threshold jumps from one local
// minimum to another. The minimal loss has a kink there, which adaptive
// quadrature only resolves when the kink is an endpoint.
void AddMinimizerJumps(const ContinuousModel& model, double a, double b,
                       std::vector<double>* ends) {
  constexpr int kJumpScan = 256;
  const double jump = 0.02 * (model.upper() - model.lower());
  double c_prev = a;
  double t_prev = MinimizeLoss(model, a).threshold;
  for (int j = 1; j <= kJumpScan; ++j) {
    const double c = a + (b - a) * j / kJumpScan;
    const double t = MinimizeLoss(model, c).threshold;
    if (std::abs(t - t_prev) > jump) {
      double lo = c_prev, hi = c, t_lo = t_prev, t_hi = t;
      for (int iter = 0; iter < 100; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double t_mid = MinimizeLoss(model, mid).threshold;
        if (std::abs(t_mid - t_lo) <= std::abs(t_mid - t_hi)) {
          lo = mid;
          t_lo = t_mid;
        } else {
          hi = mid;
          t_hi = t_mid;
        }
      }
      ends->push_back(0.5 * (lo + hi));
    }
    c_prev = c;
    t_prev = t;
  }
}

}  // namespace

double MinimalLossAt(const ContinuousModel& model, double cost) {
  return MinimizeLoss(model, cost).loss;
}

absl::StatusOr<double> OptimalLoss(const ContinuousModel& model) {
  // Kinks sit where c(T) reaches a breakpoint value or where the minimizer
  // switches between local minima.
  std::vector<double> ends = {0.0, 1.0};
  const std::vector<double>& bp = model.breakpoints();
  for (int i = 0; i < model.num_pieces(); ++i) {
    if (model.IsGap(i)) continue;
    for (double x : {bp[i], bp[i + 1]}) {
      const double c = model.PieceCostLimit(i, x);
      if (c > 0.0 && c < 1.0) ends.push_back(c);
    }
  }
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
  const std::vector<double> coarse = ends;
  for (size_t i = 1; i < coarse.size(); ++i) {
    AddMinimizerJumps(model, coarse[i - 1], coarse[i], &ends);
  }
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
  auto f = [&](double c) { return MinimalLossAt(model, c); };
  double total = 0;
  for (size_t i = 1; i < ends.size(); ++i) {
    auto part = Integrate(f, ends[i - 1], ends[i]);
    if (!part.ok()) return part.status();
    total += *part;
  }
  return total;
}

absl::StatusOr<LambdaComponents> ComputeLambdaComponents(
    const ContinuousModel& model, double tolerance) {
  auto map = ClassifyIntervals(model, tolerance);
  if (!map.ok()) return map.status();
  const ClassWeights w = model.priors();
  LambdaComponents result{0.0, 0.0};
  for (const ScoreInterval& interval : map->intervals) {
    if (interval.kind == IntervalKind::kSingular) {
      const double s0 = interval.sigma_lo;
      const double s1 = interval.sigma_hi;
      const double f0 = model.Cdf(kClass0, interval.tau_lo);
      const double f1 = model.Cdf(kClass1, interval.tau_lo);
      result.singular +=
          w.class0 * (1.0 - f0) * (s1 * s1 - s0 * s0) +
          w.class1 * f1 * (2.0 * s1 - s1 * s1 - 2.0 * s0 + s0 * s0);
    } else if (interval.kind == IntervalKind::kBijective) {
      for (int piece : ActivePieces(model, interval.tau_lo, interval.tau_hi)) {
        const double a = std::max(interval.tau_lo, model.breakpoints()[piece]);
        const double b =
            std::min(interval.tau_hi, model.breakpoints()[piece + 1]);
        auto integrand = [&](double t) {
          return LossAt(model, t, model.PieceCost(piece, t)) *
                 PieceCostDerivative(model, piece, t);
        };
        auto part = Integrate(integrand, a, b);
        if (!part.ok()) return part.status();
        result.bijective += *part;
      }
    }
  }
  return result;
}

absl::StatusOr<ContinuousDecomposition> DecomposeBrier(
    const ContinuousModel& model) {
  if (model.lower() < 0.0 || model.upper() > 1.0) {
    return MakeError(ErrorKind::kScoresOutOfUnitRange,
                     "support must lie in [0,1]");
  }
  const ClassWeights w = model.priors();
  ContinuousDecomposition result{0.0, 0.0, ContinuousBrierScore(model)};
  for (int piece = 0; piece < model.num_pieces(); ++piece) {
    if (model.IsGap(piece)) continue;
    const Polynomial& p0 = model.density(kClass0).pieces()[piece];
    const Polynomial& p1 = model.density(kClass1).pieces()[piece];
    auto refinement = [&](double s) {
      const double a = w.class0 * p0(s);
      const double b = w.class1 * p1(s);
      return a + b > 0 ? a * b / (a + b) : 0.0;
    };
    auto calibration = [&](double s) {
      const double a = w.class0 * p0(s);
      const double b = w.class1 * p1(s);
      const double gap = s * (a + b) - b;
      return a + b > 0 ? gap * gap / (a + b) : 0.0;
    };
    const double lo = model.breakpoints()[piece];
    const double hi = model.breakpoints()[piece + 1];
    auto rl = Integrate(refinement, lo, hi);
    if (!rl.ok()) return rl.status();
    auto cl = Integrate(calibration, lo, hi);
    if (!cl.ok()) return cl.status();
    result.refinement_loss += *rl;
    result.calibration_loss += *cl;
  }
  return result;
}

absl::StatusOr<CalibratedContinuousModel> CalibratedContinuousModel::Create(
    const ContinuousModel& model, double tolerance) {
  auto map = ClassifyIntervals(model, tolerance);
  if (!map.ok()) return map.status();
  CalibratedContinuousModel result(model);
  result.intervals_ = *std::move(map);
  for (const ScoreInterval& interval : result.intervals_.intervals) {
    if (interval.kind != IntervalKind::kConstant) continue;
    result.atoms_.push_back(
        {interval.sigma_lo,
         model.Cdf(kClass0, interval.tau_hi) -
             model.Cdf(kClass0, interval.tau_lo),
         model.Cdf(kClass1, interval.tau_hi) -
             model.Cdf(kClass1, interval.tau_lo)});
  }
  return result;
}

double CalibratedContinuousModel::InverseCost(const ScoreInterval& interval,
                                              double s) const {
  const ContinuousModel& model = source_;
  const std::vector<int> pieces =
      ActivePieces(model, interval.tau_lo, interval.tau_hi);
  for (int piece : pieces) {
    const double a = std::max(interval.tau_lo, model.breakpoints()[piece]);
    const double b = std::min(interval.tau_hi, model.breakpoints()[piece + 1]);
    if (s > model.PieceCostLimit(piece, b) && piece != pieces.back()) continue;
    return Bisect(
        [&](double t) {
          if (t <= a) return model.PieceCostLimit(piece, a) - s;
          if (t >= b) return model.PieceCostLimit(piece, b) - s;
          return model.PieceCost(piece, t) - s;
        },
        a, b);
  }
  return interval.tau_hi;
}

double CalibratedContinuousModel::Cdf(int k, double s) const {
  for (const ScoreInterval& interval : intervals_.intervals) {
    if (s < interval.sigma_lo) return source_.Cdf(k, interval.tau_lo);
    if (interval.kind == IntervalKind::kBijective && s < interval.sigma_hi) {
      return source_.Cdf(k, InverseCost(interval, s));
    }
  }
  return 1.0;
}

double CalibratedContinuousModel::Density(int k, double s) const {
  for (const ScoreInterval& interval : intervals_.intervals) {
    if (interval.kind != IntervalKind::kBijective) continue;
    if (!(s > interval.sigma_lo && s < interval.sigma_hi)) continue;
    const double t = InverseCost(interval, s);
    const int piece = source_.density(k).PieceAt(t);
    const double slope = PieceCostDerivative(source_, piece, t);
    if (!(slope > 0)) return std::numeric_limits<double>::infinity();
    return source_.Density(k, t) / slope;
  }
  return 0.0;
}

ContinuousModel Convexify(const ContinuousModel& model) {
  // Trace the ROC curve on a fine grid.
  const std::vector<double>& bp = model.breakpoints();
  std::vector<double> ts;
  for (int i = 0; i < model.num_pieces(); ++i) {
    const int steps = model.IsGap(i) ? 1 : kHullGridPoints;
    for (int j = 0; j < steps; ++j) {
      ts.push_back(bp[i] + (bp[i + 1] - bp[i]) * j / steps);
    }
  }
  ts.push_back(model.upper());
  const int n = static_cast<int>(ts.size());
  std::vector<double> xs(n);
  std::vector<double> ys(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = model.Cdf(kClass1, ts[i]);
    ys[i] = model.Cdf(kClass0, ts[i]);
  }
  auto cross = [&](int o, int a, int b) {
    return (xs[a] - xs[o]) * (ys[b] - ys[o]) - (ys[a] - ys[o]) * (xs[b] - xs[o]);
  };
  std::vector<int> hull;
  for (int i = 0; i < n; ++i) {
    while (hull.size() >= 2 &&
           cross(hull[hull.size() - 2], hull.back(), i) >= 0) {
      hull.pop_back();
    }
    hull.push_back(i);
  }

  auto slope = [&](double a, double b) {
    const double dx = model.Cdf(kClass1, b) - model.Cdf(kClass1, a);
    const double dy = model.Cdf(kClass0, b) - model.Cdf(kClass0, a);
    if (!(dx > 0)) return std::numeric_limits<double>::infinity();
    return dy / dx;
  };
  // Brent stops within its tolerance of a kink or support end; a tangent
  // point that close to a breakpoint is the breakpoint.
  const double snap_width = 1e-6 * (model.upper() - model.lower());
  auto Snap = [&](double x) {
    for (double point : bp) {
      if (std::abs(x - point) <= snap_width) return point;
    }
    return x;
  };
  std::vector<std::pair<double, double>> flattened;
  for (size_t h = 1; h < hull.size(); ++h) {
    const int i = hull[h - 1];
    const int j = hull[h];
    if (j <= i + 1) continue;
    const double length = std::hypot(xs[j] - xs[i], ys[j] - ys[i]);
    double deviation = 0;
    for (int k = i + 1; k < j; ++k) {
      deviation = std::max(deviation, -cross(i, j, k) / length);
    }
    if (deviation <= kHullDeviation) continue;
    // Tangent points: the left end minimizes the chord slope for a fixed
    // right end and the right end maximizes it for a fixed left end.
    const double a_lo = ts[std::max(i - 1, 0)];
    const double a_hi = ts[std::min(i + 1, j - 1)];
    const double b_lo = ts[std::max(j - 1, i + 1)];
    const double b_hi = ts[std::min(j + 1, n - 1)];
    double a = ts[i];
    double b = ts[j];
    for (int round = 0; round < 4; ++round) {
      a = boost::math::tools::brent_find_minima(
              [&](double x) { return slope(x, b); }, a_lo, a_hi, 52)
              .first;
      b = boost::math::tools::brent_find_minima(
              [&](double x) { return -slope(a, x); }, b_lo, b_hi, 52)
              .first;
    }
    flattened.emplace_back(Snap(a), Snap(b));
  }
  if (flattened.empty()) return model;

  std::vector<double> cuts;
  for (const auto& [a, b] : flattened) {
    cuts.push_back(a);
    cuts.push_back(b);
  }
  const PiecewisePolynomial f0 = model.density(kClass0).Refined(cuts);
  const PiecewisePolynomial f1 = model.density(kClass1).Refined(cuts);
  std::vector<Polynomial> pieces0 = f0.pieces();
  std::vector<Polynomial> pieces1 = f1.pieces();
  const std::vector<double>& grid = f0.breakpoints();
  for (size_t p = 0; p < pieces0.size(); ++p) {
    const double mid = 0.5 * (grid[p] + grid[p + 1]);
    for (const auto& [a, b] : flattened) {
      if (mid > a && mid < b) {
        pieces0[p] = Polynomial{(model.Cdf(kClass0, b) - model.Cdf(kClass0, a)) /
                                (b - a)};
        pieces1[p] = Polynomial{(model.Cdf(kClass1, b) - model.Cdf(kClass1, a)) /
                                (b - a)};
      }
    }
  }
  auto result =
      ContinuousModel::Create(absl::StrFormat("conv(%s)", model.name()), grid,
                              std::move(pieces0), std::move(pieces1),
                              model.priors());
  // Interval averages preserve the total mass, so validation passes.
  return *std::move(result);
}

double ContinuousClassMean(const ContinuousModel& model, int k) {
  const PiecewisePolynomial& f = model.density(k);
  double total = 0;
  for (int i = 0; i < f.num_pieces(); ++i) {
    total += (Polynomial{0.0, 1.0} * f.pieces()[i])
                 .Integral(f.breakpoints()[i], f.breakpoints()[i + 1]);
  }
  return total;
}

double ContinuousAuc(const ContinuousModel& model) {
  // Integral of F0 f1.
  const PiecewisePolynomial& f0 = model.density(kClass0);
  const PiecewisePolynomial& f1 = model.density(kClass1);
  double total = 0;
  for (int i = 0; i < f0.num_pieces(); ++i) {
    const double a = f0.breakpoints()[i];
    const double b = f0.breakpoints()[i + 1];
    const Polynomial primitive = f0.pieces()[i].Antiderivative();
    const Polynomial cdf =
        primitive + Polynomial{f0.Cumulative(a) - primitive(a)};
    total += (cdf * f1.pieces()[i]).Integral(a, b);
  }
  return total;
}

double ContinuousMeanAbsoluteError(const ContinuousModel& model) {
  const ClassWeights w = model.priors();
  return w.class0 * ContinuousClassMean(model, kClass0) +
         w.class1 * (1.0 - ContinuousClassMean(model, kClass1));
}

double ContinuousBrierScore(const ContinuousModel& model) {
  const ClassWeights w = model.priors();
  const PiecewisePolynomial& f0 = model.density(kClass0);
  const PiecewisePolynomial& f1 = model.density(kClass1);
  const Polynomial square{0.0, 0.0, 1.0};
  const Polynomial residual_square{1.0, -2.0, 1.0};
  double total = 0;
  for (int i = 0; i < f0.num_pieces(); ++i) {
    const double a = f0.breakpoints()[i];
    const double b = f0.breakpoints()[i + 1];
    total += w.class0 * (square * f0.pieces()[i]).Integral(a, b) +
             w.class1 * (residual_square * f1.pieces()[i]).Integral(a, b);
  }
  return total;
}

absl::StatusOr<double> PopulationExpectedLoss(const ContinuousModel& model,
                                              MethodKind method) {
  const ClassWeights w = model.priors();
  const bool unit_support = model.lower() >= 0.0 && model.upper() <= 1.0;
  auto average_loss = [&](double t) {
    // Loss at t averaged over uniform cost proportions.
    return w.class0 * (1.0 - model.Cdf(kClass0, t)) +
           w.class1 * model.Cdf(kClass1, t);
  };
  auto rate_density = [&](double t) {
    return w.class0 * model.Density(kClass0, t) +
           w.class1 * model.Density(kClass1, t);
  };
  switch (method) {
    case MethodKind::kScoreUniform:
      if (!unit_support) break;
      return IntegrateSplit(model, average_loss, 0.0, 1.0);
    case MethodKind::kScoreDriven:
      if (!unit_support) break;
      return IntegrateSplit(
          model, [&](double c) { return LossAt(model, c, c); }, 0.0, 1.0);
    case MethodKind::kRateUniform:
      return IntegrateSplit(
          model, [&](double t) { return average_loss(t) * rate_density(t); },
          model.lower(), model.upper());
    case MethodKind::kRateDriven:
      return IntegrateSplit(
          model,
          [&](double t) {
            return LossAt(model, t, model.Rate(t)) * rate_density(t);
          },
          model.lower(), model.upper());
    case MethodKind::kOptimal:
      return OptimalLoss(model);
    default:
      return MakeError(ErrorKind::kInvalidArgument,
                       "population loss supports su, sd, ru, rd and opt");
  }
  return MakeError(ErrorKind::kScoresOutOfUnitRange,
                   "score-based methods need support inside [0,1]");
}

CurveSeries OptimalLossCurve(const ContinuousModel& model, int grid_size) {
  CurveSeries series;
  series.kind = CurveKind::kOptimalEnvelope;
  for (int i = 0; i < grid_size; ++i) {
    const double c = static_cast<double>(i) / (grid_size - 1);
    series.points.emplace_back(c, MinimalLossAt(model, c));
  }
  return series;
}

absl::StatusOr<CurveSeries> LambdaCurve(const ContinuousModel& model,
                                        int grid_size) {
  auto map = ClassifyIntervals(model);
  if (!map.ok()) return map.status();
  CurveSeries series;
  series.kind = CurveKind::kCostCurve;
  for (int i = 0; i < grid_size; ++i) {
    const double t = model.lower() + (model.upper() - model.lower()) * i /
                                         (grid_size - 1);
    double value = 0;
    for (const ScoreInterval& interval : map->intervals) {
      if (interval.kind != IntervalKind::kBijective) continue;
      if (t < interval.tau_lo || t > interval.tau_hi) continue;
      const int piece = model.density(kClass0).PieceAt(t);
      if (piece < 0 || model.IsGap(piece)) continue;
      value = LossAt(model, t, model.PieceCost(piece, t)) *
              PieceCostDerivative(model, piece, t);
    }
    series.points.emplace_back(t, value);
  }
  return series;
}

CurveSeries RefinementCurve(const ContinuousModel& model, int grid_size) {
  const ClassWeights w = model.priors();
  CurveSeries series;
  series.kind = CurveKind::kRefinementCurve;
  for (int i = 0; i < grid_size; ++i) {
    const double t = model.lower() + (model.upper() - model.lower()) * i /
                                         (grid_size - 1);
    const double a = w.class0 * model.Density(kClass0, t);
    const double b = w.class1 * model.Density(kClass1, t);
    series.points.emplace_back(t, a + b > 0 ? a * b / (a + b) : 0.0);
  }
  return series;
}

}  // namespace costeval
