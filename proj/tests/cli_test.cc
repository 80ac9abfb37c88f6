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

#include <filesystem>
#include <random>
#include <sstream>

#include "costeval/csv_io.h"
#include "costeval/metrics.h"
#include "costeval/report.h"
#include "gtest/gtest.h"
#include "testing/random_datasets.h"

namespace costeval {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult Invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string DatasetCsv(const ScoredDataset& dataset) {
  std::string csv = "score,label\n";
  for (const Sample& s : dataset.samples) {
    csv += FormatRoundTripNumber(s.score) + "," + std::to_string(s.label) +
           "\n";
  }
  return csv;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("costeval_cli_test_" +
            std::string(::testing::UnitTest::GetInstance()
                            ->current_test_info()
                            ->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& content) {
    const std::string path = (dir_ / name).string();
    EXPECT_TRUE(WriteFile(path, content).ok());
    return path;
  }
  std::string Path(const std::string& name) { return (dir_ / name).string(); }

  fs::path dir_;
};

constexpr char kFourPoint[] = "score,label\n0.2,0\n0.4,0\n0.6,1\n0.8,1\n";

TEST_F(CliTest, MetricsOnFourPoint) {
  const CliResult result = Invoke({"metrics", Write("d.csv", kFourPoint)});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  const Json json = Json::parse(result.out);
  EXPECT_DOUBLE_EQ(json["mae"].get<double>(), 0.3);
  EXPECT_DOUBLE_EQ(json["bs"].get<double>(), 0.1);
  EXPECT_DOUBLE_EQ(json["auc"].get<double>(), 1.0);
}

TEST_F(CliTest, MetricsOnPerfectCrisp) {
  const CliResult result =
      Invoke({"metrics", Write("d.csv", "score,label\n0,0\n1,1\n")});
  ASSERT_EQ(result.code, kExitOk);
  const Json json = Json::parse(result.out);
  EXPECT_EQ(json["mae"].get<double>(), 0.0);
  EXPECT_EQ(json["bs"].get<double>(), 0.0);
  EXPECT_EQ(json["auc"].get<double>(), 1.0);
}

TEST_F(CliTest, SingleClassIsInputError) {
  const CliResult result =
      Invoke({"metrics", Write("d.csv", "score,label\n0.1,1\n0.2,1\n")});
  EXPECT_EQ(result.code, kExitInputError);
  EXPECT_NE(result.err.find("SingleClassDataset"), std::string::npos);
}

TEST_F(CliTest, MissingFileAndBadFlagsAreInputErrors) {
  EXPECT_EQ(Invoke({"metrics", Path("missing.csv")}).code, kExitInputError);
  const std::string csv = Write("d.csv", kFourPoint);
  EXPECT_EQ(Invoke({"loss", csv, "--method", "zz"}).code, kExitInputError);
  EXPECT_EQ(Invoke({"loss", csv, "--weight", "beta:-1,2"}).code,
            kExitInputError);
  EXPECT_EQ(Invoke({"loss", csv, "--condition", "cheap"}).code, kExitInputError);
  EXPECT_EQ(Invoke({"curves", csv, "--grid", "1"}).code, kExitInputError);
  EXPECT_EQ(Invoke({"bogus"}).code, kExitInputError);
  EXPECT_EQ(Invoke({}).code, kExitInputError);
  EXPECT_EQ(Invoke({"continuous-demo", "--model", "nope"}).code,
            kExitInputError);
}

TEST_F(CliTest, HelpExitsCleanly) {
  const CliResult result = Invoke({"loss", "--help"});
  EXPECT_EQ(result.code, kExitOk);
  EXPECT_NE(result.out.find("--method"), std::string::npos);
}

TEST_F(CliTest, ScoreDrivenLossIsBrierScore) {
  std::mt19937_64 rng(71);
  const ScoredDataset dataset = testing::RandomDataset(rng);
  const CliResult result =
      Invoke({"loss", Write("d.csv", DatasetCsv(dataset)), "--method", "sd",
           "--weight", "uniform", "--condition", "cost"});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  const Json json = Json::parse(result.out);
  ASSERT_EQ(json.size(), 1u);
  EXPECT_EQ(json[0]["method"], "sd");
  EXPECT_EQ(json[0]["weight"], "uniform");
  EXPECT_EQ(json[0]["kind"], "cost");
  const double bs = *BrierScore(*EmpiricalModel::Build(dataset));
  EXPECT_NEAR(json[0]["loss"].get<double>(), bs, 1e-12);
  EXPECT_NEAR(json[0]["closed_form"].get<double>(), bs, 1e-12);
  EXPECT_LE(json[0]["abs_gap"].get<double>(), 1e-12);
}

TEST_F(CliTest, DefaultMethodsAndSeparableOptimal) {
  const CliResult result = Invoke({"loss", Write("d.csv", kFourPoint)});
  ASSERT_EQ(result.code, kExitOk);
  const Json json = Json::parse(result.out);
  ASSERT_EQ(json.size(), 7u);
  for (const Json& row : json) {
    if (row["method"] == "opt") EXPECT_EQ(row["loss"].get<double>(), 0.0);
  }
}

TEST_F(CliTest, RateDrivenOnSyntheticAuc079) {
  std::mt19937_64 rng(72);
  // Binormal separation with AUC near 0.79.
  const ScoredDataset dataset = testing::BinormalDataset(rng, 10000, 1.14);
  const CliResult result = Invoke(
      {"loss", Write("d.csv", DatasetCsv(dataset)), "--method", "rd"});
  ASSERT_EQ(result.code, kExitOk);
  EXPECT_NEAR(Json::parse(result.out)[0]["loss"].get<double>(), 0.188, 0.01);
}

TEST_F(CliTest, BetaWeightHasNoClosedForm) {
  const CliResult result = Invoke({"loss", Write("d.csv", kFourPoint), "--method",
                                "sd", "--weight", "beta:2,2"});
  ASSERT_EQ(result.code, kExitOk);
  const Json json = Json::parse(result.out);
  EXPECT_TRUE(json[0]["closed_form"].is_null());
  EXPECT_EQ(json[0]["weight"], "beta:2,2");
}

TEST_F(CliTest, CompareFavorsRankingForRdAndCalibrationForSd) {
  std::mt19937_64 rng(73);
  std::normal_distribution<double> normal(0.0, 1.0);
  // A ranks well but squeezes every score near 0.5; B ranks worse with
  // calibrated probabilities from a logistic link.
  ScoredDataset a, b;
  for (int i = 0; i < 4000; ++i) {
    const int label = i % 2;
    const double za = normal(rng) + (label ? 2.0 : 0.0);
    a.samples.push_back({0.5 + 0.02 * std::tanh(za - 1.0), label});
    const double zb = normal(rng) + (label ? 0.8 : 0.0);
    b.samples.push_back({1.0 / (1.0 + std::exp(-(0.8 * zb - 0.32))), label});
  }
  const CliResult result =
      Invoke({"compare", Write("a.csv", DatasetCsv(a)),
           Write("b.csv", DatasetCsv(b)), "--method", "rd", "--method", "sd",
           "--format", "json"});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  const Json json = Json::parse(result.out);
  ASSERT_EQ(json["rows"].size(), 2u);
  EXPECT_EQ(json["rows"][0]["method"], "rd");
  EXPECT_EQ(json["rows"][0]["best"], Json::array({0}));
  EXPECT_EQ(json["rows"][1]["method"], "sd");
  EXPECT_EQ(json["rows"][1]["best"], Json::array({1}));
}

TEST_F(CliTest, CompareIdenticalFilesGivesIdenticalColumns) {
  const std::string first = Write("a.csv", kFourPoint);
  const std::string second = Write("b.csv", kFourPoint);
  const CliResult result = Invoke({"compare", first, second, "--format", "json"});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  for (const Json& row : Json::parse(result.out)["rows"]) {
    EXPECT_EQ(row["losses"][0], row["losses"][1]);
    EXPECT_EQ(row["best"], Json::array({0, 1}));
  }
  const CliResult table = Invoke({"compare", first, second});
  ASSERT_EQ(table.code, kExitOk);
  EXPECT_EQ(table.out.rfind("method\t", 0), 0u);
  EXPECT_NE(table.out.find("*"), std::string::npos);
}

TEST_F(CliTest, PavCalibratedScoreDrivenMatchesOriginalOptimal) {
  std::mt19937_64 rng(74);
  const ScoredDataset dataset = testing::RandomDataset(rng, {.min_size = 150});
  const std::string original = Write("orig.csv", DatasetCsv(dataset));
  const CliResult calibrated =
      Invoke({"calibrate", original, "--method", "pav"});
  ASSERT_EQ(calibrated.code, kExitOk) << calibrated.err;
  // Keep the calibrated column as the new score.
  std::istringstream lines(calibrated.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "score,label,calibrated_score");
  std::string rewritten = "score,label\n";
  while (std::getline(lines, line)) {
    const size_t first = line.find(',');
    const size_t second = line.find(',', first + 1);
    rewritten += line.substr(second + 1) + "," +
                 line.substr(first + 1, second - first - 1) + "\n";
  }
  const std::string pav = Write("pav.csv", rewritten);
  const CliResult opt = Invoke({"loss", original, "--method", "opt"});
  const CliResult sd = Invoke({"loss", pav, "--method", "sd"});
  ASSERT_EQ(opt.code, kExitOk);
  ASSERT_EQ(sd.code, kExitOk);
  EXPECT_NEAR(Json::parse(sd.out)[0]["loss"].get<double>(),
              Json::parse(opt.out)[0]["loss"].get<double>(), 1e-12);
}

TEST_F(CliTest, CalibrateEst) {
  const CliResult result =
      Invoke({"calibrate", Write("d.csv", "score,label\n0.3,0\n0.5,1\n0.9,1\n"),
           "--method", "est"});
  ASSERT_EQ(result.code, kExitOk);
  EXPECT_EQ(result.out,
            "score,label,calibrated_score\n0.3,0,0\n0.5,1,0.5\n0.9,1,1\n");
  EXPECT_EQ(Invoke({"calibrate", Path("d.csv"), "--method", "platt"}).code,
            kExitInputError);
}

TEST_F(CliTest, OptimalCurveOnDiagonal) {
  const CliResult result =
      Invoke({"curves", Write("d.csv", "score,label\n0.5,0\n0.5,1\n"), "--type",
           "optimal"});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  std::istringstream lines(result.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "x,y");
  std::vector<std::pair<double, double>> points;
  while (std::getline(lines, line)) {
    const size_t comma = line.find(',');
    points.emplace_back(std::stod(line.substr(0, comma)),
                        std::stod(line.substr(comma + 1)));
  }
  EXPECT_EQ(points.size(), 101u);
  double area = 0;
  for (size_t i = 1; i < points.size(); ++i) {
    area += 0.5 * (points[i].first - points[i - 1].first) *
            (points[i].second + points[i - 1].second);
  }
  EXPECT_NEAR(area, 0.25, 1e-6);
}

TEST_F(CliTest, CurveTypes) {
  const std::string csv = Write("d.csv", kFourPoint);
  for (const char* type : {"sd", "brier", "roc", "hull", "rd", "sf=0.3"}) {
    const CliResult result = Invoke({"curves", csv, "--type", type});
    EXPECT_EQ(result.code, kExitOk) << type << ": " << result.err;
  }
  const std::string out = Path("roc.csv");
  ASSERT_EQ(Invoke({"curves", csv, "--type", "roc", "--out", out}).code, kExitOk);
  EXPECT_EQ(ReadFile(out)->rfind("fpr,tpr,threshold\n", 0), 0u);
}

TEST_F(CliTest, ContinuousDemo) {
  const std::string prefix = Path("fig9");
  const CliResult result =
      Invoke({"continuous-demo", "--model", "fig9", "--out", prefix});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  const Json json = Json::parse(result.out);
  EXPECT_NEAR(json["L_opt"].get<double>(), 0.10245, 1e-3);
  EXPECT_TRUE(json["convex"].get<bool>());
  for (const char* suffix : {"_loss.csv", "_refinement.csv", "_lambda.csv"}) {
    EXPECT_TRUE(fs::exists(prefix + suffix)) << suffix;
  }
  const CliResult nested = Invoke({"continuous", "demo", "--model", "fig9"});
  EXPECT_EQ(nested.out, result.out);
}

TEST_F(CliTest, ContinuousDemoNonConvex) {
  const CliResult result =
      Invoke({"continuous-demo", "--model", "two_bump_nonconvex"});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  const Json json = Json::parse(result.out);
  EXPECT_FALSE(json["convex"].get<bool>());
  EXPECT_TRUE(json["lambda_bij"].is_null());
}

TEST_F(CliTest, OutputsAreDeterministic) {
  std::mt19937_64 rng(75);
  const std::string csv =
      Write("d.csv", DatasetCsv(testing::RandomDataset(rng)));
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"metrics", csv},
        {"loss", csv, "--weight", "beta:0.5,2"},
        {"curves", csv, "--type", "rd"},
        {"calibrate", csv},
        {"compare", csv, csv}}) {
    const CliResult first = Invoke(args);
    const CliResult second = Invoke(args);
    ASSERT_EQ(first.code, kExitOk) << args[0] << ": " << first.err;
    EXPECT_EQ(first.out, second.out) << args[0];
  }
}

TEST_F(CliTest, OutFlagWritesFile) {
  const std::string out = Path("metrics.json");
  const CliResult result =
      Invoke({"metrics", Write("d.csv", kFourPoint), "--out", out});
  ASSERT_EQ(result.code, kExitOk);
  EXPECT_TRUE(result.out.empty());
  EXPECT_EQ(Json::parse(*ReadFile(out))["auc"].get<double>(), 1.0);
}

}  // namespace
}  // namespace costeval
