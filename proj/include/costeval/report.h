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

// JSON serialization of metric and loss reports.

#ifndef COSTEVAL_REPORT_H_
#define COSTEVAL_REPORT_H_

#include <optional>
#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "costeval/loss_engine.h"
#include "costeval/metrics.h"
#include "json.hpp"

namespace costeval {

using Json = nlohmann::ordered_json;

// Rounds to "digits" significant decimal digits.
double RoundSignificant(double value, int digits);

// Number rounded to 12 significant digits; null when absent or non-finite.
Json JsonNumber(std::optional<double> value);

Json MetricReportToJson(const MetricReport& report);

struct LossReport {
  std::string method;
  std::string weight;
  std::string kind;
  double loss = 0;
  // Only reported for uniform weights.
  std::optional<double> closed_form;
  std::optional<double> abs_gap;
};

absl::StatusOr<LossReport> ComputeLossReport(const EmpiricalModel& model,
                                             const LossQuery& query);

Json LossReportToJson(const LossReport& report);

absl::string_view ConditionKindName(ConditionKind kind);

// Pretty-printed JSON followed by a newline.
std::string DumpJson(const Json& json);

}  // namespace costeval

#endif  // COSTEVAL_REPORT_H_
