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

// Adaptive quadrature with an absolute error target, built on Boost's
// 15-point Gauss-Kronrod panels.

#ifndef COSTEVAL_SRC_QUADRATURE_H_
#define COSTEVAL_SRC_QUADRATURE_H_

#include <functional>

#include "absl/status/statusor.h"

namespace costeval::internal {

// Integrates f over [a,b], bisecting the panel with the largest error
// estimate until the summed estimate drops below target or max_panels is
// reached. Fails with QuadratureFailure if the final estimate exceeds
// tolerance or the value is not finite.
absl::StatusOr<double> IntegrateAdaptive(const std::function<double(double)>& f,
                                         double a, double b, double target,
                                         double tolerance,
                                         int max_panels = 4096);

}  // namespace costeval::internal

#endif  // COSTEVAL_SRC_QUADRATURE_H_
