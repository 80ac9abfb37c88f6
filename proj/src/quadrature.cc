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

#include "quadrature.h"

#include <cmath>
#include <queue>
#include <vector>

#include "absl/strings/str_format.h"
#include "boost/math/quadrature/gauss_kronrod.hpp"
#include "costeval/errors.h"

namespace costeval::internal {
namespace {

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel Evaluate(const std::function<double(double)>& f, double a, double b) {
  double error = 0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
          f, a, b, 0, 0.0, &error);
  return {a, b, value, error};
}

}  // namespace

absl::StatusOr<double> IntegrateAdaptive(const std::function<double(double)>& f,
                                         double a, double b, double target,
                                         double tolerance, int max_panels) {
  if (!(b > a)) return 0.0;
  std::priority_queue<Panel> panels;
  panels.push(Evaluate(f, a, b));
  double value = panels.top().value;
  double error = panels.top().error;
  while (error > target && static_cast<int>(panels.size()) < max_panels) {
    const Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    panels.pop();
    const Panel left = Evaluate(f, worst.a, mid);
    const Panel right = Evaluate(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  value = 0;
  error = 0;
  while (!panels.empty()) {
    value += panels.top().value;
    error += panels.top().error;
    panels.pop();
  }
  if (!std::isfinite(value) || error > tolerance) {
    return MakeError(ErrorKind::kQuadratureFailure,
                     absl::StrFormat("integral over [%g, %g] has error "
                                     "estimate %g",
                                     a, b, error));
  }
  return value;
}

}  // namespace costeval::internal
