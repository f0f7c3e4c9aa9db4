// Copyright 2026 The FIMA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cli.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "fima/chisq.h"
#include "fima/fima_core.h"
#include "fima/inference.h"
#include "fima/json_io.h"
#include "fima/mechanisms.h"
#include "fima/rng.h"
#include "gtest/gtest.h"
#include "json.hpp"

namespace fima::cli {
namespace {

using nlohmann::json;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

json CliJson(std::vector<std::string> args) {
  CliRun r = Cli(std::move(args));
  EXPECT_EQ(r.code, kExitOk) << r.err;
  return json::parse(r.out);
}

std::string TempFile(const std::string& name, const std::string& body) {
  const std::filesystem::path p =
      std::filesystem::temp_directory_path() / absl::StrCat("fima_cli_", name);
  std::ofstream(p) << body;
  return p.string();
}

TEST(CliTest, CiMatchesLibraryOnInferenceStream) {
  json j = CliJson({"ci", "--pi-hat", "0.62", "--n", "374", "--epsilon", "1",
                    "--H", "10000", "--level", "0.95", "--seed", "5"});
  PrivacyParams p =
      *PrivacyParams::ForProportion(1.0, 374, NoiseFamily::kLaplace);
  FimaConfig config;
  config.draws = 10000;
  Rng rng = Rng::ForStream(5, {kInferenceStream});
  FimaDraws d = *FimaSampleProportion(0.62, 374, p, config, rng);
  ConfidenceInterval ci = *PercentileCi(d.draws, 0.95, Sidedness::kTwoSided);
  EXPECT_EQ(j.get<ConfidenceInterval>(), ci);
  EXPECT_EQ(j["seed"], 5);
  EXPECT_NEAR(ci.lower, 0.565, 0.02);
  EXPECT_NEAR(ci.upper, 0.664, 0.02);
}

TEST(CliTest, NearZeroNoiseCiIsBinomialWidth) {
  json j = CliJson({"ci", "--pi-hat", "0.5", "--n", "100", "--epsilon", "1e9",
                    "--H", "20000"});
  // Clopper-Pearson for 50/100 is [0.3983, 0.6017].
  EXPECT_NEAR(j["lower"].get<double>(), 0.3983, 0.01);
  EXPECT_NEAR(j["upper"].get<double>(), 0.6017, 0.01);
}

TEST(CliTest, CuratorPrivatizesOnPrivatizeStream) {
  json j = CliJson({"test-one", "--role", "curator", "--x", "232", "--n",
                    "374", "--gamma", "0.7", "--H", "2000", "--seed", "9"});
  PrivacyParams p =
      *PrivacyParams::ForProportion(1.0, 374, NoiseFamily::kLaplace);
  Rng prng = Rng::ForStream(9, {kPrivatizeStream});
  const double prop = 232.0 / 374.0;
  DpRelease release =
      *PrivatizeProportions(std::span<const double>(&prop, 1), 374, p, prng);
  EXPECT_EQ(j["pi_hat"].get<double>(), release.values[0]);
  FimaConfig config;
  config.draws = 2000;
  Rng rng = Rng::ForStream(9, {kInferenceStream});
  FimaDraws d = *FimaSampleProportion(release.values[0], 374, p, config, rng);
  TestResult expected = *OneSampleTest(d.draws, 0.7, Direction::kLess, 0.05);
  EXPECT_EQ(j.get<TestResult>(), expected);
}

TEST(CliTest, OutputIsPureFunctionOfFlags) {
  const std::vector<std::string> args = {"test-two", "--pi-hat1", "0.3",
                                         "--n1",     "50",       "--pi-hat2",
                                         "0.5",      "--n2",     "60",
                                         "--H",      "3000"};
  EXPECT_EQ(Cli(args).out, Cli(args).out);
}

TEST(CliTest, TwoSampleJsonRoundTrip) {
  CliRun r = Cli({"test-two", "--pi-hat1", "0.2", "--n1", "40", "--pi-hat2",
               "0.7", "--n2", "40", "--H", "1000", "--split-epsilon"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["epsilon_per_release"], 0.5);
  TestResult t = j.get<TestResult>();
  EXPECT_EQ(json(t).get<TestResult>(), t);
  EXPECT_TRUE(t.reject);
}

TEST(CliTest, CountReleaseAccepted) {
  json j = CliJson({"ci", "--x-hat", "12.4", "--n", "20", "--H", "500"});
  EXPECT_EQ(j["x_hat"], 12.4);
  EXPECT_LT(j["lower"].get<double>(), 0.62);
}

TEST(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(Cli({"ci", "--pi-hat", "0.5", "--n", "30", "--H", "0"}).code,
            kExitUsage);
  EXPECT_EQ(Cli({"ci", "--n", "30"}).code, kExitUsage);
  EXPECT_EQ(Cli({"ci", "--pi-hat", "0.5", "--x-hat", "3", "--n", "30"}).code,
            kExitUsage);
  EXPECT_EQ(Cli({"ci", "--x", "3", "--n", "30"}).code, kExitUsage);
  EXPECT_EQ(Cli({"ci", "--pi-hat", "0.5", "--n", "30", "--family", "cauchy"})
                .code,
            kExitUsage);
  EXPECT_EQ(Cli({"ci", "--pi-hat", "0.5", "--n", "30", "--level", "1.2"}).code,
            kExitUsage);
  EXPECT_EQ(Cli({"privatize", "--counts", "3"}).code, kExitUsage);
  EXPECT_EQ(Cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Cli({}).code, kExitUsage);
}

TEST(CliTest, HelpExitsZero) {
  CliRun r = Cli({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("bench"), std::string::npos);
}

TEST(CliTest, PrivatizeCounts) {
  json j = CliJson({"privatize", "--role", "curator", "--counts", "10", "20",
                    "--kind", "count",
                    "--epsilon", "1e12", "--seed", "3"});
  ASSERT_EQ(j["values"].size(), 2u);
  EXPECT_NEAR(j["values"][0].get<double>(), 10.0, 1e-6);
  EXPECT_NEAR(j["values"][1].get<double>(), 20.0, 1e-6);
  EXPECT_EQ(j["seed"], 3);
}

TEST(ParseTableCsvTest, HeaderAndValues) {
  absl::StatusOr<ContingencyTable> t =
      ParseTableCsv("a,b\n10,20\n30, 40\n", true);
  ASSERT_TRUE(t.ok()) << t.status();
  EXPECT_EQ(t->rows(), 2);
  EXPECT_EQ(t->cols(), 2);
  EXPECT_EQ(t->n(), 100);
  EXPECT_EQ(t->at(1, 1), 40);
  absl::StatusOr<ContingencyTable> real = ParseTableCsv("1.5,-2\n3,4.25\n", false);
  ASSERT_TRUE(real.ok());
  EXPECT_EQ(real->at(0, 1), -2.0);
  EXPECT_EQ(real->n(), 7);
}

TEST(ParseTableCsvTest, DiagnosticsNameRowAndColumn) {
  absl::StatusOr<ContingencyTable> bad = ParseTableCsv("1,2\n3,x\n", true);
  ASSERT_FALSE(bad.ok());
  EXPECT_NE(bad.status().message().find("row 2, column 2"), std::string::npos)
      << bad.status();
  absl::StatusOr<ContingencyTable> ragged = ParseTableCsv("1,2\n3\n", true);
  ASSERT_FALSE(ragged.ok());
  EXPECT_NE(ragged.status().message().find("row 2"), std::string::npos)
      << ragged.status();
  EXPECT_FALSE(ParseTableCsv("1,2\n3,1.5\n", true).ok());
  EXPECT_FALSE(ParseTableCsv("", true).ok());
}

TEST(CliTest, MalformedCsvExitsTwoWithDiagnostics) {
  const std::string path = TempFile("bad.csv", "1,2\n3,oops\n");
  CliRun r = Cli({"chisq", "--input", path, "--n", "6", "--H", "50"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("row 2, column 2"), std::string::npos) << r.err;
}

TEST(CliTest, ChisqCuratorMatchesLibrary) {
  const std::string path = TempFile("t.csv", "x,y\n90,10\n15,85\n");
  json j = CliJson({"chisq", "--role", "curator", "--input", path, "--epsilon",
                    "10", "--H", "500", "--seed", "4"});
  const std::vector<int64_t> counts = {90, 10, 15, 85};
  ContingencyTable raw = *ContingencyTable::FromCounts(2, 2, counts);
  Rng prng = Rng::ForStream(4, {kPrivatizeStream});
  ContingencyTable dp = *PrivatizeTable(raw, 10.0, NoiseFamily::kLaplace, prng);
  FimaConfig config;
  config.draws = 500;
  Rng rng = Rng::ForStream(4, {kInferenceStream});
  ChisqTestOutput out = *FimaChisqTest(dp, ChisqOptions{10.0}, config, rng);
  EXPECT_EQ(j.get<TestResult>(), out.result);
  EXPECT_EQ(j["p_value"], 0.0);
}

TEST(CliTest, LogitReportsEveryCoefficient) {
  json j = CliJson({"logit", "--design", "two", "--pi-hats", "0.3", "0.1",
                    "0.2", "0.05", "--ns", "250", "--H", "1000"});
  ASSERT_EQ(j["coefficients"].size(), 3u);
  EXPECT_EQ(j["coefficients"][2]["name"], "beta2");
  ConfidenceInterval b0 = j["coefficients"][0].get<ConfidenceInterval>();
  EXPECT_LT(b0.lower, std::log(0.3 / 0.7));
  EXPECT_GT(b0.upper, std::log(0.3 / 0.7));
}

TEST(CliTest, BenchDeskOneSampleCi) {
  CliRun r = Cli({"bench", "--task", "one-sample-ci", "--preset", "desk", "--B",
               "100", "--H", "200", "--seed", "11"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::vector<std::string> lines =
      absl::StrSplit(r.out, '\n', absl::SkipEmpty());
  ASSERT_EQ(lines.size(), 1u + 12u);  // 3 theta x 2 methods x 2 metrics
  EXPECT_EQ(lines[0], "method,task,n,epsilon,theta,gamma,metric,value,stderr,ms");
  EXPECT_NE(r.err.find("seed: 11"), std::string::npos);
}

TEST(CliTest, BenchJsonRoundTrip) {
  CliRun r = Cli({"bench", "--task", "two-sample-power", "--B", "50", "--H",
               "100", "--out", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["seed"], 1);
  ExperimentResult result = j.get<ExperimentResult>();
  EXPECT_EQ(result.rows.size(), 3u * 2u);
  EXPECT_EQ(json(result)["rows"], j["rows"]);
}

TEST(CliTest, AppsHivOne) {
  json j = CliJson({"apps", "--which", "hiv-one"});
  EXPECT_EQ(j["seed"], 1);
  EXPECT_LT(j["hiv_one"]["test"]["p_value"].get<double>(), 0.01);
  EXPECT_NEAR(j["hiv_one"]["np_ci"]["lower"].get<double>(), 0.5711, 1e-4);
  EXPECT_NEAR(j["hiv_one"]["np_ci"]["upper"].get<double>(), 0.6695, 1e-4);
}

// The installed binary: exit status and stdout.
CliRun Spawn(const std::string& args) {
  const std::string cmd = absl::StrCat(FIMA_BINARY, " ", args, " 2>/dev/null");
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  CliRun r{-1, "", ""};
  if (!pipe) return r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe.get())) > 0) r.out.append(buf, got);
  const int status = pclose(pipe.release());
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

TEST(CliBinaryTest, ExitCodes) {
  EXPECT_EQ(Spawn("ci --pi-hat 0.62 --n 374 --H 1000").code, kExitOk);
  EXPECT_EQ(Spawn("ci --pi-hat 0.62 --n 374 --H 0").code, kExitUsage);
  EXPECT_EQ(Spawn("logit --design saturated --k 1 --pi-hats 0.2 --ns 10").code,
            kExitUsage);
}

TEST(CliBinaryTest, StdoutMatchesInProcess) {
  CliRun spawned = Spawn("test-one --pi-hat 0.62 --n 374 --gamma 0.7 --H 500");
  CliRun inproc = Cli({"test-one", "--pi-hat", "0.62", "--n", "374", "--gamma",
                    "0.7", "--H", "500"});
  EXPECT_EQ(spawned.out, inproc.out);
}

}  // namespace
}  // namespace fima::cli
