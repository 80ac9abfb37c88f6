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

// Catalog of continuous models used by the demos and tests.

#include <string>
#include <utility>
#include <vector>

#include "absl/strings/str_format.h"
#include "costeval/continuous.h"
#include "costeval/errors.h"

namespace costeval {
namespace {

struct ModelSpec {
  BuiltinModelEntry entry;
  std::vector<double> breakpoints;
  std::vector<Polynomial> pieces0;
  std::vector<Polynomial> pieces1;
};

// Line through (x0, y0) and (x1, y1).
Polynomial Line(double x0, double y0, double x1, double y1) {
  const double slope = (y1 - y0) / (x1 - x0);
  return Polynomial{y0 - slope * x0, slope};
}

std::vector<ModelSpec> Specs() {
  std::vector<ModelSpec> specs;
  specs.push_back({{"triangular_calibrated",
                    {"fig4"},
                    "f0 = 2(1-x), f1 = 2x; c(T) = T"},
                   {0.0, 1.0},
                   {Polynomial{2.0, -2.0}},
                   {Polynomial{0.0, 2.0}}});
  // Same ranking as the calibrated triangles with scores squared or cubed.
  specs.push_back({{"triangular_squared_scores",
                    {"fig5", "noncalibrated"},
                    "f0 = 4x - 4x^3, f1 = 4x^3; c(T) = T^2"},
                   {0.0, 1.0},
                   {Polynomial{0.0, 4.0, 0.0, -4.0}},
                   {Polynomial{0.0, 0.0, 0.0, 4.0}}});
  specs.push_back({{"triangular_cubed_scores",
                    {"noncalibrated2"},
                    "f0 = 6x^2 - 6x^5, f1 = 6x^5; c(T) = T^3"},
                   {0.0, 1.0},
                   {Polynomial{0.0, 0.0, 6.0, 0.0, 0.0, -6.0}},
                   {Polynomial{0.0, 0.0, 0.0, 0.0, 0.0, 6.0}}});
  specs.push_back({{"linear_vs_cubic",
                    {"fig9", "strictly_convex"},
                    "f0 = 2(1-x), f1 = 4x^3"},
                   {0.0, 1.0},
                   {Polynomial{2.0, -2.0}},
                   {Polynomial{0.0, 0.0, 0.0, 4.0}}});
  const double flat0 = 8.0 / 7.0;
  const double tail0 = 32.0 / 7.0;
  specs.push_back(
      {{"piecewise_straight_segment",
        {"fig10", "non_strictly_convex"},
        "f0 = 8/7 on [0,3/4] then (32/7)(1-x); f1 = (18/5)x on [0,1/3] "
        "then 6/5"},
       {0.0, 1.0 / 3.0, 0.75, 1.0},
       {Polynomial{flat0}, Polynomial{flat0}, Polynomial{tail0, -tail0}},
       {Polynomial{0.0, 18.0 / 5.0}, Polynomial{6.0 / 5.0},
        Polynomial{6.0 / 5.0}}});
  // Bimodal class-1 density against a parabola.
  const double bump_mass = 0.94;
  specs.push_back(
      {{"two_bump_nonconvex",
        {"fig11", "nonconvex"},
        "f0 = 6x(1-x); f1 piecewise linear with peaks at 0.3 and 0.8"},
       {0.0, 0.3, 0.55, 0.8, 1.0},
       {Polynomial{0.0, 6.0, -6.0}, Polynomial{0.0, 6.0, -6.0},
        Polynomial{0.0, 6.0, -6.0}, Polynomial{0.0, 6.0, -6.0}},
       {Line(0.0, 0.0, 0.3, 1.6 / bump_mass),
        Line(0.3, 1.6 / bump_mass, 0.55, 0.4 / bump_mass),
        Line(0.55, 0.4 / bump_mass, 0.8, 1.6 / bump_mass),
        Line(0.8, 1.6 / bump_mass, 1.0, 0.4 / bump_mass)}});
  specs.push_back({{"diagonal_uniform",
                    {"fig12", "diagonal", "uniform_random"},
                    "f0 = f1 = 1 on [0,1]"},
                   {0.0, 1.0},
                   {Polynomial{1.0}},
                   {Polynomial{1.0}}});
  specs.push_back({{"diagonal_concentrated",
                    {"diagonal2"},
                    "f0 = f1 = 100 on [0.495,0.505]"},
                   {0.0, 0.495, 0.505, 1.0},
                   {Polynomial(), Polynomial{100.0}, Polynomial()},
                   {Polynomial(), Polynomial{100.0}, Polynomial()}});
  specs.push_back({{"uniform_vs_offset_linear",
                    {"fig13", "offset_linear"},
                    "f0 = 1, f1 = 1/2 + x"},
                   {0.0, 1.0},
                   {Polynomial{1.0}},
                   {Polynomial{0.5, 1.0}}});
  const double plateau1 = 54.0 / 49.0;
  specs.push_back(
      {{"offset_piecewise",
        {"fig14"},
        "f0 as piecewise_straight_segment; f1 linear from 24/49 to 54/49 on "
        "[0,1/3] then 54/49"},
       {0.0, 1.0 / 3.0, 0.75, 1.0},
       {Polynomial{flat0}, Polynomial{flat0}, Polynomial{tail0, -tail0}},
       {Line(0.0, 24.0 / 49.0, 1.0 / 3.0, plateau1), Polynomial{plateau1},
        Polynomial{plateau1}}});
  specs.push_back({{"discontinuous_steps",
                    {"fig16", "discontinuous"},
                    "f0 = 5/3 on [0,0.6], f1 = 2 on [0.5,1]"},
                   {0.0, 0.5, 0.6, 1.0},
                   {Polynomial{5.0 / 3.0}, Polynomial{5.0 / 3.0}, Polynomial()},
                   {Polynomial(), Polynomial{2.0}, Polynomial{2.0}}});
  return specs;
}

}  // namespace

std::vector<BuiltinModelEntry> BuiltinModelCatalog() {
  std::vector<BuiltinModelEntry> entries;
  for (ModelSpec& spec : Specs()) entries.push_back(std::move(spec.entry));
  return entries;
}

std::vector<ContinuousModel> BuiltinModels() {
  std::vector<ContinuousModel> models;
  for (ModelSpec& spec : Specs()) {
    models.push_back(*ContinuousModel::Create(
        spec.entry.name, std::move(spec.breakpoints), std::move(spec.pieces0),
        std::move(spec.pieces1)));
  }
  return models;
}

absl::StatusOr<ContinuousModel> BuiltinModel(absl::string_view name) {
  for (ModelSpec& spec : Specs()) {
    bool match = spec.entry.name == name;
    for (const std::string& alias : spec.entry.aliases) match |= alias == name;
    if (match) {
      return ContinuousModel::Create(spec.entry.name,
                                     std::move(spec.breakpoints),
                                     std::move(spec.pieces0),
                                     std::move(spec.pieces1));
    }
  }
  return MakeError(ErrorKind::kUnknownModelName,
                   absl::StrFormat("no built-in model named \"%s\"", name));
}

}  // namespace costeval
