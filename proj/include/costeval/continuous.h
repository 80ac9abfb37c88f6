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

// Continuous score models: a pair of piecewise-polynomial class densities
// with priors. Provides the cost-of-score function c(T), interval
// classification, convexification, the continuous Brier decomposition,
// optimal loss and the calibration transform s = c(T).

#ifndef COSTEVAL_CONTINUOUS_H_
#define COSTEVAL_CONTINUOUS_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "costeval/loss_engine.h"
#include "costeval/model.h"
#include "costeval/polynomial.h"
#include "costeval/threshold_methods.h"

namespace costeval {

class ContinuousModel {
 public:
  // Both densities share "breakpoints". Each must be non-negative and
  // integrate to one within 1e-8.
  static absl::StatusOr<ContinuousModel> Create(
      std::string name, std::vector<double> breakpoints,
      std::vector<Polynomial> pieces0, std::vector<Polynomial> pieces1,
      ClassWeights priors = kBalancedWeights);

  const std::string& name() const { return name_; }
  const PiecewisePolynomial& density(int k) const {
    return k == kClass0 ? density0_ : density1_;
  }
  ClassWeights priors() const { return priors_; }
  const std::vector<double>& breakpoints() const {
    return density0_.breakpoints();
  }
  int num_pieces() const { return density0_.num_pieces(); }
  double lower() const { return density0_.lower(); }
  double upper() const { return density0_.upper(); }

  double Density(int k, double t) const { return density(k)(t); }
  double Cdf(int k, double t) const { return density(k).Cumulative(t); }
  double Rate(double t) const {
    return priors_.class0 * Cdf(kClass0, t) + priors_.class1 * Cdf(kClass1, t);
  }
  // True when neither density has mass on piece "i".
  bool IsGap(int piece) const;
  // Limit of c(T) as T approaches "x" from inside piece "piece".
  double PieceCostLimit(int piece, double x) const;
  // c(T) at an interior point of piece "piece".
  double PieceCost(int piece, double x) const;

 private:
  ContinuousModel() = default;

  std::string name_;
  PiecewisePolynomial density0_;
  PiecewisePolynomial density1_;
  ClassWeights priors_{0.5, 0.5};
};

// pi1 f1 / (pi0 f0 + pi1 f1). Fails with ZeroDensityPoint when both densities
// vanish at T.
absl::StatusOr<double> CostOfScore(const ContinuousModel& model, double t);
// f0 / f1, +inf when only f1 vanishes.
absl::StatusOr<double> SlopeOfScore(const ContinuousModel& model, double t);

enum class IntervalKind { kBijective, kConstant, kSingular };

absl::string_view IntervalKindName(IntervalKind kind);

// A domain interval [tau_lo, tau_hi] with its image [sigma_lo, sigma_hi]
// under c. Singular intervals skip the codomain range at a point of the
// domain, or across a zero-density gap.
struct ScoreInterval {
  IntervalKind kind;
  double tau_lo;
  double tau_hi;
  double sigma_lo;
  double sigma_hi;
};

struct IntervalMap {
  std::vector<ScoreInterval> intervals;
};

inline constexpr double kMonotonicityTolerance = 1e-10;

// Fails with NonConvexModel when c decreases anywhere beyond "tolerance".
absl::StatusOr<IntervalMap> ClassifyIntervals(
    const ContinuousModel& model, double tolerance = kMonotonicityTolerance);

// Replaces both densities by their averages on each interval where the ROC
// curve lies strictly below its convex hull.
ContinuousModel Convexify(const ContinuousModel& model);

struct ContinuousDecomposition {
  double calibration_loss;
  double refinement_loss;
  // Computed directly from the densities, independently of the two terms.
  double brier_score;
};

absl::StatusOr<ContinuousDecomposition> DecomposeBrier(
    const ContinuousModel& model);

// Integral over cost proportions of the minimal loss over thresholds.
absl::StatusOr<double> OptimalLoss(const ContinuousModel& model);

// Minimal loss over thresholds at cost proportion "cost".
double MinimalLossAt(const ContinuousModel& model, double cost);

struct LambdaComponents {
  // Contribution of the bijective intervals.
  double bijective;
  // Contribution of the singular intervals.
  double singular;
};

absl::StatusOr<LambdaComponents> ComputeLambdaComponents(
    const ContinuousModel& model, double tolerance = kMonotonicityTolerance);

// Point mass of the transformed model at score "location".
struct ScoreAtom {
  double location;
  double mass0;
  double mass1;
};

// The model obtained by replacing every score T by c(T).
class CalibratedContinuousModel {
 public:
  static absl::StatusOr<CalibratedContinuousModel> Create(
      const ContinuousModel& model, double tolerance = kMonotonicityTolerance);

  // Right-continuous CDF of class k on transformed scores.
  double Cdf(int k, double s) const;
  // Density of the continuous part; zero on singular ranges and at atoms.
  double Density(int k, double s) const;
  const std::vector<ScoreAtom>& atoms() const { return atoms_; }
  const IntervalMap& intervals() const { return intervals_; }
  const ContinuousModel& source() const { return source_; }

 private:
  explicit CalibratedContinuousModel(ContinuousModel source)
      : source_(std::move(source)) {}

  // Score T in the bijective interval with c(T) = s.
  double InverseCost(const ScoreInterval& interval, double s) const;

  ContinuousModel source_;
  IntervalMap intervals_;
  std::vector<ScoreAtom> atoms_;
};

// Population counterparts of the empirical metrics, computed exactly from the
// polynomial pieces.
double ContinuousClassMean(const ContinuousModel& model, int k);
double ContinuousAuc(const ContinuousModel& model);
double ContinuousMeanAbsoluteError(const ContinuousModel& model);
double ContinuousBrierScore(const ContinuousModel& model);

// Expected loss of a method under uniform cost proportions, by quadrature of
// its population integral. Supports su, sd, ru, rd and opt.
absl::StatusOr<double> PopulationExpectedLoss(const ContinuousModel& model,
                                              MethodKind method);

// Curves of the demo command.
CurveSeries OptimalLossCurve(const ContinuousModel& model, int grid_size);
absl::StatusOr<CurveSeries> LambdaCurve(const ContinuousModel& model,
                                        int grid_size);
CurveSeries RefinementCurve(const ContinuousModel& model, int grid_size);

struct BuiltinModelEntry {
  std::string name;
  std::vector<std::string> aliases;
  std::string description;
};

std::vector<BuiltinModelEntry> BuiltinModelCatalog();
std::vector<ContinuousModel> BuiltinModels();
// Accepts names and aliases; fails with UnknownModelName.
absl::StatusOr<ContinuousModel> BuiltinModel(absl::string_view name);

}  // namespace costeval

#endif  // COSTEVAL_CONTINUOUS_H_
