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

#include "costeval/report.h"

#include <cmath>
#include <cstdlib>

#include "absl/strings/str_format.h"

namespace costeval {

double RoundSignificant(double value, int digits) {
  if (!std::isfinite(value) || value == 0.0) return value;
  const std::string text = absl::StrFormat("%.*e", digits - 1, value);
  const double rounded = std::strtod(text.c_str(), nullptr);
  return rounded == 0.0 ? 0.0 : rounded;
}

Json JsonNumber(std::optional<double> value) {
  if (!value.has_value() || !std::isfinite(*value)) return nullptr;
  return RoundSignificant(*value, 12);
}

Json MetricReportToJson(const MetricReport& report) {
  Json json;
  if (report.threshold.has_value()) {
    json["threshold"] = JsonNumber(report.threshold);
    json["acc"] = JsonNumber(report.acc);
    json["macc"] = JsonNumber(report.macc);
  }
  json["mae"] = JsonNumber(report.mae);
  json["mmae"] = JsonNumber(report.mmae);
  json["mae0"] = JsonNumber(report.mae0);
  json["mae1"] = JsonNumber(report.mae1);
  json["bs"] = JsonNumber(report.bs);
  json["mbs"] = JsonNumber(report.mbs);
  json["bs0"] = JsonNumber(report.bs0);
  json["bs1"] = JsonNumber(report.bs1);
  json["auc"] = JsonNumber(report.auc);
  return json;
}

absl::string_view ConditionKindName(ConditionKind kind) {
  return kind == ConditionKind::kCost ? "cost" : "skew";
}

absl::StatusOr<LossReport> ComputeLossReport(const EmpiricalModel& model,
                                             const LossQuery& query) {
  auto loss = ExpectedLoss(model, query);
  if (!loss.ok()) return loss.status();
  LossReport report;
  report.method = query.method.Spec();
  report.weight = query.weight.Spec();
  report.kind = std::string(ConditionKindName(query.weight.kind));
  report.loss = *loss;
  if (query.weight.family == OperatingWeight::Family::kUniform) {
    auto closed = ClosedFormLoss(model, query.method, query.weight.kind);
    if (!closed.ok()) return closed.status();
    report.closed_form = *closed;
    report.abs_gap = std::abs(*loss - *closed);
  }
  return report;
}

Json LossReportToJson(const LossReport& report) {
  Json json;
  json["method"] = report.method;
  json["weight"] = report.weight;
  json["kind"] = report.kind;
  json["loss"] = JsonNumber(report.loss);
  json["closed_form"] = JsonNumber(report.closed_form);
  json["abs_gap"] = JsonNumber(report.abs_gap);
  return json;
}

std::string DumpJson(const Json& json) { return json.dump(2) + "\n"; }

}  // namespace costeval
