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

#include "costeval/cli.h"

#include <algorithm>
#include <optional>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "costeval/calibration.h"
#include "costeval/continuous.h"
#include "costeval/csv_io.h"
#include "costeval/errors.h"
#include "costeval/loss_engine.h"
#include "costeval/metrics.h"
#include "costeval/report.h"
#include "costeval/roc.h"
#include "costeval/threshold_methods.h"

namespace costeval {
namespace {

const std::vector<std::string> kDefaultMethods = {"sf", "rf", "su", "sd",
                                                  "ru", "rd", "opt"};

struct Options {
  std::vector<std::string> inputs;
  std::vector<std::string> methods;
  std::string weight = "uniform";
  std::string condition = "cost";
  std::string output;
  std::string curve_type = "opt";
  std::string calibration = "pav";
  std::string format = "table";
  std::string model_name;
  int grid = 101;
  double fixed_threshold = 0.5;
  double fixed_rate = 0.5;
};

absl::StatusOr<ConditionKind> ParseCondition(const std::string& text) {
  if (text == "cost") return ConditionKind::kCost;
  if (text == "skew") return ConditionKind::kSkew;
  return MakeError(ErrorKind::kParseError,
                   absl::StrFormat("condition must be cost or skew, got "
                                   "\"%s\"",
                                   text));
}

absl::StatusOr<EmpiricalModel> LoadModel(const std::string& path) {
  auto csv = ReadScoredCsv(path);
  if (!csv.ok()) return csv.status();
  return EmpiricalModel::Build(csv->dataset);
}

absl::Status Emit(const Options& options, const std::string& content,
                  std::ostream& out) {
  if (options.output.empty()) {
    out << content;
    return absl::OkStatus();
  }
  return WriteFile(options.output, content);
}

absl::StatusOr<std::vector<ThresholdChoiceMethod>> ParseMethods(
    const Options& options) {
  const std::vector<std::string>& specs =
      options.methods.empty() ? kDefaultMethods : options.methods;
  std::vector<ThresholdChoiceMethod> methods;
  for (const std::string& spec : specs) {
    auto method =
        ParseMethodSpec(spec, options.fixed_threshold, options.fixed_rate);
    if (!method.ok()) return method.status();
    methods.push_back(*method);
  }
  return methods;
}

absl::Status RunMetrics(const Options& options, std::ostream& out) {
  auto model = LoadModel(options.inputs.front());
  if (!model.ok()) return model.status();
  const MetricReport report =
      ComputeMetricReport(*model, options.fixed_threshold);
  return Emit(options, DumpJson(MetricReportToJson(report)), out);
}

absl::Status RunLoss(const Options& options, std::ostream& out) {
  auto kind = ParseCondition(options.condition);
  if (!kind.ok()) return kind.status();
  auto weight = ParseWeightSpec(options.weight, *kind);
  if (!weight.ok()) return weight.status();
  auto methods = ParseMethods(options);
  if (!methods.ok()) return methods.status();
  auto model = LoadModel(options.inputs.front());
  if (!model.ok()) return model.status();
  Json reports = Json::array();
  for (const ThresholdChoiceMethod& method : *methods) {
    auto report = ComputeLossReport(*model, {method, *weight});
    if (!report.ok()) return report.status();
    reports.push_back(LossReportToJson(*report));
  }
  return Emit(options, DumpJson(reports), out);
}

absl::Status RunCurves(const Options& options, std::ostream& out) {
  auto kind = ParseCondition(options.condition);
  if (!kind.ok()) return kind.status();
  if (options.grid < 2) {
    return MakeError(ErrorKind::kInvalidArgument, "grid must be >= 2");
  }
  auto model = LoadModel(options.inputs.front());
  if (!model.ok()) return model.status();
  if (options.curve_type == "roc") {
    return Emit(options, RocCurveCsv(BuildRocCurve(*model)), out);
  }
  if (options.curve_type == "hull") {
    return Emit(options, ConvexHullCsv(BuildConvexHull(BuildRocCurve(*model))),
                out);
  }
  std::string spec = options.curve_type;
  if (spec == "optimal") spec = "opt";
  if (spec == "brier") spec = "sd";
  auto method =
      ParseMethodSpec(spec, options.fixed_threshold, options.fixed_rate);
  if (!method.ok()) return method.status();
  auto series = CostCurvePoints(*model, *method, *kind, options.grid);
  if (!series.ok()) return series.status();
  return Emit(options, series->ToCsv(), out);
}

absl::Status RunCalibrate(const Options& options, std::ostream& out) {
  auto csv = ReadScoredCsv(options.inputs.front());
  if (!csv.ok()) return csv.status();
  auto model = EmpiricalModel::Build(csv->dataset);
  if (!model.ok()) return model.status();
  std::optional<CalibratedModel> calibrated;
  if (options.calibration == "pav") {
    calibrated = Pav(*model);
  } else if (options.calibration == "est") {
    auto est = Est(*model);
    if (!est.ok()) return est.status();
    calibrated = *std::move(est);
  } else {
    return MakeError(ErrorKind::kParseError,
                     absl::StrFormat("calibration method must be pav or est, "
                                     "got \"%s\"",
                                     options.calibration));
  }
  std::string content = "score,label,calibrated_score\n";
  for (size_t i = 0; i < csv->dataset.samples.size(); ++i) {
    const Sample& sample = csv->dataset.samples[i];
    absl::StrAppend(&content, csv->raw_scores[i], ",", sample.label, ",",
                    FormatRoundTripNumber(calibrated->Map(sample.score)), "\n");
  }
  return Emit(options, content, out);
}

absl::Status RunCompare(const Options& options, std::ostream& out) {
  if (options.inputs.size() < 2) {
    return MakeError(ErrorKind::kInvalidArgument,
                     "compare needs at least two CSV files");
  }
  auto kind = ParseCondition(options.condition);
  if (!kind.ok()) return kind.status();
  auto weight = ParseWeightSpec(options.weight, *kind);
  if (!weight.ok()) return weight.status();
  auto methods = ParseMethods(options);
  if (!methods.ok()) return methods.status();
  std::vector<EmpiricalModel> models;
  for (const std::string& path : options.inputs) {
    auto model = LoadModel(path);
    if (!model.ok()) return model.status();
    models.push_back(*std::move(model));
  }

  Json rows = Json::array();
  std::string table = "method";
  for (const std::string& path : options.inputs) absl::StrAppend(&table, "\t", path);
  absl::StrAppend(&table, "\n");
  for (const ThresholdChoiceMethod& method : *methods) {
    std::vector<double> losses;
    for (const EmpiricalModel& model : models) {
      auto loss = ExpectedLoss(model, {method, *weight});
      if (!loss.ok()) return loss.status();
      losses.push_back(*loss);
    }
    const double best = *std::min_element(losses.begin(), losses.end());
    Json row;
    row["method"] = method.Spec();
    row["losses"] = Json::array();
    row["best"] = Json::array();
    absl::StrAppend(&table, method.Spec());
    for (size_t i = 0; i < losses.size(); ++i) {
      row["losses"].push_back(JsonNumber(losses[i]));
      const bool is_best = RoundSignificant(losses[i], 12) ==
                           RoundSignificant(best, 12);
      if (is_best) row["best"].push_back(i);
      absl::StrAppend(&table, "\t", absl::StrFormat("%.6f", losses[i]),
                      is_best ? "*" : "");
    }
    absl::StrAppend(&table, "\n");
    rows.push_back(row);
  }
  if (options.format == "json") {
    Json json;
    json["models"] = options.inputs;
    json["weight"] = weight->Spec();
    json["kind"] = std::string(ConditionKindName(*kind));
    json["rows"] = rows;
    return Emit(options, DumpJson(json), out);
  }
  if (options.format != "table") {
    return MakeError(ErrorKind::kParseError, "format must be table or json");
  }
  return Emit(options, table, out);
}

Json IntervalsToJson(const IntervalMap& map) {
  Json list = Json::array();
  for (const ScoreInterval& interval : map.intervals) {
    Json item;
    item["kind"] = std::string(IntervalKindName(interval.kind));
    item["tau"] = {JsonNumber(interval.tau_lo), JsonNumber(interval.tau_hi)};
    item["sigma"] = {JsonNumber(interval.sigma_lo),
                     JsonNumber(interval.sigma_hi)};
    list.push_back(item);
  }
  return list;
}

absl::Status RunContinuousDemo(const Options& options, std::ostream& out) {
  if (options.grid < 2) {
    return MakeError(ErrorKind::kInvalidArgument, "grid must be >= 2");
  }
  auto model = BuiltinModel(options.model_name);
  if (!model.ok()) return model.status();
  auto optimal = OptimalLoss(*model);
  if (!optimal.ok()) return optimal.status();
  auto decomposition = DecomposeBrier(*model);
  if (!decomposition.ok()) return decomposition.status();

  Json json;
  json["model"] = model->name();
  json["L_opt"] = JsonNumber(*optimal);
  json["RL"] = JsonNumber(decomposition->refinement_loss);
  json["CL"] = JsonNumber(decomposition->calibration_loss);
  json["BS"] = JsonNumber(decomposition->brier_score);
  auto intervals = ClassifyIntervals(*model);
  json["convex"] = intervals.ok();
  if (intervals.ok()) {
    auto lambda = ComputeLambdaComponents(*model);
    if (!lambda.ok()) return lambda.status();
    json["lambda_bij"] = JsonNumber(lambda->bijective);
    json["lambda_sing"] = JsonNumber(lambda->singular);
    json["intervals"] = IntervalsToJson(*intervals);
  } else if (GetErrorKind(intervals.status()) == ErrorKind::kNonConvexModel) {
    json["lambda_bij"] = nullptr;
    json["lambda_sing"] = nullptr;
    json["intervals"] = nullptr;
  } else {
    return intervals.status();
  }

  if (!options.output.empty()) {
    const std::string& prefix = options.output;
    absl::Status status = WriteFile(
        prefix + "_loss.csv", OptimalLossCurve(*model, options.grid).ToCsv());
    if (!status.ok()) return status;
    status = WriteFile(prefix + "_refinement.csv",
                       RefinementCurve(*model, options.grid).ToCsv());
    if (!status.ok()) return status;
    if (intervals.ok()) {
      auto lambda_curve = LambdaCurve(*model, options.grid);
      if (!lambda_curve.ok()) return lambda_curve.status();
      status = WriteFile(prefix + "_lambda.csv", lambda_curve->ToCsv());
      if (!status.ok()) return status;
    }
  }
  out << DumpJson(json);
  return absl::OkStatus();
}

void AddInput(CLI::App* command, Options* options, bool many) {
  auto* input = command->add_option("input", options->inputs, "score,label CSV");
  input->required();
  if (!many) input->expected(1);
}

void AddOutput(CLI::App* command, Options* options) {
  command->add_option("--out", options->output, "Output path");
}

void AddEvaluationFlags(CLI::App* command, Options* options) {
  command->add_option("--method", options->methods,
                      "Method spec: sf=T | rf=R | su | sd | ru | rd | opt");
  command->add_option("--weight", options->weight, "uniform | beta:A,B");
  command->add_option("--condition", options->condition, "cost | skew");
  command->add_option("--fixed-threshold", options->fixed_threshold,
                      "Threshold for bare sf");
  command->add_option("--fixed-rate", options->fixed_rate, "Rate for bare rf");
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Cost-sensitive evaluation of scoring classifiers"};
  app.require_subcommand(1);
  Options options;

  CLI::App* metrics = app.add_subcommand("metrics", "Metric report as JSON");
  AddInput(metrics, &options, false);
  AddOutput(metrics, &options);
  metrics->add_option("--fixed-threshold", options.fixed_threshold,
                      "Threshold for acc and macc");

  CLI::App* loss = app.add_subcommand("loss", "Expected loss per method");
  AddInput(loss, &options, false);
  AddOutput(loss, &options);
  AddEvaluationFlags(loss, &options);

  CLI::App* curves = app.add_subcommand("curves", "Cost-space or ROC curves");
  AddInput(curves, &options, false);
  AddOutput(curves, &options);
  curves->add_option("--type", options.curve_type,
                     "Method spec, optimal, brier, roc or hull");
  curves->add_option("--condition", options.condition, "cost | skew");
  curves->add_option("--grid", options.grid, "Grid size");
  curves->add_option("--fixed-threshold", options.fixed_threshold,
                     "Threshold for bare sf");
  curves->add_option("--fixed-rate", options.fixed_rate, "Rate for bare rf");

  CLI::App* calibrate =
      app.add_subcommand("calibrate", "Append a calibrated_score column");
  AddInput(calibrate, &options, false);
  AddOutput(calibrate, &options);
  calibrate->add_option("--method", options.calibration, "pav | est");

  CLI::App* compare = app.add_subcommand("compare", "Loss table of models");
  AddInput(compare, &options, true);
  AddOutput(compare, &options);
  AddEvaluationFlags(compare, &options);
  compare->add_option("--format", options.format, "table | json");

  auto add_demo_flags = [&](CLI::App* command) {
    command->add_option("--model", options.model_name, "Built-in model name")
        ->required();
    command->add_option("--grid", options.grid, "Curve grid size");
    command->add_option("--out", options.output,
                        "Prefix for the curve CSV files");
  };
  CLI::App* demo = app.add_subcommand("continuous-demo",
                                      "Continuous model summary");
  add_demo_flags(demo);
  CLI::App* continuous =
      app.add_subcommand("continuous", "Continuous model commands");
  continuous->require_subcommand(1);
  CLI::App* nested_demo =
      continuous->add_subcommand("demo", "Continuous model summary");
  add_demo_flags(nested_demo);

  std::vector<std::string> argv_storage = {"costeval"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& arg : argv_storage) argv.push_back(arg.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    // Prints help for the addressed subcommand, or the parse error.
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInputError;
  }

  absl::Status status;
  if (metrics->parsed()) {
    status = RunMetrics(options, out);
  } else if (loss->parsed()) {
    status = RunLoss(options, out);
  } else if (curves->parsed()) {
    status = RunCurves(options, out);
  } else if (calibrate->parsed()) {
    status = RunCalibrate(options, out);
  } else if (compare->parsed()) {
    status = RunCompare(options, out);
  } else {
    status = RunContinuousDemo(options, out);
  }
  if (status.ok()) return kExitOk;
  err << "error: " << status.message() << "\n";
  return IsInputError(status) ? kExitInputError : kExitComputationError;
}

}  // namespace costeval
