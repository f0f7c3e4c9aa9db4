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


#include "fima/harness.h"

#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_split.h"
#include "fima/json_io.h"
#include "gtest/gtest.h"

namespace fima {
namespace {

bool SameOrBothNan(double a, double b) {
  return a == b || (std::isnan(a) && std::isnan(b));
}

// Every column except wall time.
bool SameRowIgnoringTime(const ExperimentRow& a, const ExperimentRow& b) {
  return a.method == b.method && a.task == b.task && a.n == b.n &&
         a.epsilon == b.epsilon && SameOrBothNan(a.theta, b.theta) &&
         SameOrBothNan(a.gamma, b.gamma) && a.metric == b.metric &&
         SameOrBothNan(a.value, b.value) &&
         SameOrBothNan(a.mc_stderr, b.mc_stderr) && a.valid == b.valid;
}

void ExpectSameRows(const ExperimentResult& a, const ExperimentResult& b) {
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_TRUE(SameRowIgnoringTime(a.rows[i], b.rows[i])) << "row " << i;
  }
}

ExperimentSpec SmallCiSpec() {
  ExperimentSpec s;
  s.task = Task::kOneSampleCi;
  s.theta_values = {0.2, 0.5};
  s.n_values = {20, 40};
  s.replications = 60;
  s.fima.draws = 200;
  s.baselines = {Baseline::kNpz, Baseline::kExactBinomial};
  s.seed = 7;
  return s;
}

TEST(HarnessTest, SameSeedSameRows) {
  ExperimentSpec s = SmallCiSpec();
  ExpectSameRows(*RunExperiment(s), *RunExperiment(s));
}

TEST(HarnessTest, DifferentSeedDifferentRows) {
  ExperimentSpec s = SmallCiSpec();
  ExperimentResult a = *RunExperiment(s);
  s.seed = 8;
  ExperimentResult b = *RunExperiment(s);
  const ExperimentRow* x = a.Find("FIMA", "length", 0.5, NAN, 40);
  const ExperimentRow* y = b.Find("FIMA", "length", 0.5, NAN, 40);
  ASSERT_NE(x, nullptr);
  ASSERT_NE(y, nullptr);
  EXPECT_NE(x->value, y->value);
}

TEST(HarnessTest, WorkerCountDoesNotChangeRows) {
  ExperimentSpec s = SmallCiSpec();
  ExperimentResult one = *RunExperiment(s);
  s.workers = 3;
  ExpectSameRows(one, *RunExperiment(s));
}

TEST(HarnessTest, GridCompleteness) {
  ExperimentSpec s = SmallCiSpec();
  s.epsilon_values = {0.5, 1.0};
  ExperimentResult r = *RunExperiment(s);
  // 2 theta x 2 n x 2 eps grid points, 3 methods, 2 metrics each.
  EXPECT_EQ(r.rows.size(), 8u * 3u * 2u);
  std::set<std::tuple<std::string, std::string, int64_t, double, double>> seen;
  for (const ExperimentRow& row : r.rows) {
    seen.insert({row.method, row.metric, row.n, row.epsilon, row.theta});
  }
  EXPECT_EQ(seen.size(), r.rows.size());
}

TEST(HarnessTest, TestTaskGridAndLabels) {
  ExperimentSpec s;
  s.task = Task::kOneSampleTest;
  s.theta_values = {0.3, 0.6};
  s.gamma_values = {0.4, 0.5};
  s.replications = 40;
  s.fima.draws = 200;
  s.baselines = {Baseline::kExactBinomial};
  ExperimentResult r = *RunExperiment(s);
  EXPECT_EQ(r.rows.size(), 4u * 2u);
  EXPECT_EQ(r.Find("FIMA", "power", 0.3, 0.4, 30)->metric, "power");
  EXPECT_NE(r.Find("FIMA", "level", 0.6, 0.5, 30), nullptr);
  EXPECT_EQ(r.Find("FIMA", "level", 0.3, 0.4, 30), nullptr);
}

TEST(HarnessTest, EqualThetaModePairsGammaWithTheta) {
  ExperimentSpec s;
  s.task = Task::kTwoSampleTest;
  s.theta_values = {0.3, 0.5};
  s.gamma_mode = GammaMode::kEqualTheta;
  s.replications = 30;
  s.fima.draws = 100;
  ExperimentResult r = *RunExperiment(s);
  ASSERT_EQ(r.rows.size(), 2u);
  for (const ExperimentRow& row : r.rows) {
    EXPECT_EQ(row.theta, row.gamma);
    EXPECT_EQ(row.metric, "level");
  }
}

TEST(HarnessTest, RateStderrIsBinomial) {
  ExperimentResult r = *RunExperiment(SmallCiSpec());
  int rates = 0;
  for (const ExperimentRow& row : r.rows) {
    EXPECT_EQ(row.valid, 60);
    if (row.metric != "coverage") continue;
    ++rates;
    EXPECT_GE(row.value, 0.0);
    EXPECT_LE(row.value, 1.0);
    EXPECT_DOUBLE_EQ(row.mc_stderr,
                     std::sqrt(row.value * (1.0 - row.value) / 60.0));
  }
  EXPECT_EQ(rates, 12);
}

TEST(HarnessTest, FailingMethodBecomesNaWithoutAbortingGrid) {
  // With n = 1 every raw table has an empty row and column, so the classical
  // test cannot run.
  ExperimentSpec s;
  s.task = Task::kChisqTest;
  s.theta_values = {0.0};
  s.n_values = {1, 200};
  s.replications = 10;
  s.fima.draws = 50;
  s.baselines = {Baseline::kNpChisq};
  ExperimentResult r = *RunExperiment(s);
  const ExperimentRow* np = r.Find("NPChisq", "level", 0.0, NAN, 1);
  ASSERT_NE(np, nullptr);
  EXPECT_EQ(np->valid, 0);
  EXPECT_TRUE(std::isnan(np->value));
  EXPECT_TRUE(std::isnan(np->mc_stderr));
  const ExperimentRow* fima = r.Find("FIMA", "level", 0.0, NAN, 200);
  ASSERT_NE(fima, nullptr);
  EXPECT_EQ(fima->valid, 10);

  std::ostringstream csv;
  WriteCsv(r, csv);
  EXPECT_NE(csv.str().find("NPChisq,chisq-test,1,1,0,NA,level,NA,NA,NA"),
            std::string::npos)
      << csv.str();
}

TEST(HarnessTest, Validation) {
  ExperimentSpec s = SmallCiSpec();
  s.replications = 0;
  EXPECT_EQ(RunExperiment(s).status().code(),
            absl::StatusCode::kInvalidArgument);
  s = SmallCiSpec();
  s.fima.draws = 0;
  EXPECT_FALSE(s.Validate().ok());
  s = SmallCiSpec();
  s.theta_values.clear();
  EXPECT_FALSE(s.Validate().ok());
  s = SmallCiSpec();
  s.n_values = {0};
  EXPECT_FALSE(s.Validate().ok());
  s = SmallCiSpec();
  s.epsilon_values = {-1.0};
  EXPECT_FALSE(s.Validate().ok());
  s = SmallCiSpec();
  s.task = Task::kOneSampleTest;
  EXPECT_FALSE(s.Validate().ok());  // no gamma grid
}

TEST(HarnessTest, CsvHeaderAndShape) {
  ExperimentResult r = *RunExperiment(SmallCiSpec());
  std::ostringstream out;
  WriteCsv(r, out);
  std::vector<std::string> lines =
      absl::StrSplit(out.str(), '\n', absl::SkipEmpty());
  ASSERT_EQ(lines.size(), r.rows.size() + 1);
  EXPECT_EQ(lines[0], "method,task,n,epsilon,theta,gamma,metric,value,stderr,ms");
  for (size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> cells = absl::StrSplit(lines[i], ',');
    EXPECT_EQ(cells.size(), 10u) << lines[i];
  }
}

TEST(HarnessTest, JsonRoundTrip) {
  ExperimentResult r = *RunExperiment(SmallCiSpec());
  ExperimentResult back = nlohmann::json::parse(ToJson(r).dump())
                              .get<ExperimentResult>();
  ASSERT_EQ(back.rows.size(), r.rows.size());
  for (size_t i = 0; i < r.rows.size(); ++i) {
    EXPECT_TRUE(SameRowIgnoringTime(r.rows[i], back.rows[i]));
    EXPECT_EQ(r.rows[i].ms, back.rows[i].ms);
  }
}

TEST(HarnessTest, PresetsResolve) {
  for (const std::string& name : PresetNames()) {
    for (bool full : {false, true}) {
      absl::StatusOr<ExperimentSpec> s = PresetSpec(name, full);
      ASSERT_TRUE(s.ok()) << name;
      EXPECT_TRUE(s->Validate().ok()) << name;
    }
  }
  EXPECT_EQ(PresetSpec("nope", false).status().code(),
            absl::StatusCode::kNotFound);
  ExperimentSpec full = *PresetSpec("one-sample-ci", true);
  EXPECT_EQ(full.theta_values.front(), 0.10);
  EXPECT_EQ(full.theta_values[2], 0.12);
  EXPECT_NEAR(full.theta_values.back(), 0.985, 1e-12);
  EXPECT_EQ(full.replications, 10000);
}

TEST(HarnessTest, PowerCurveIsMonotoneAndBelowNonPrivate) {
  ExperimentSpec s = *PresetSpec("one-sample-power", false);
  s.replications = 1000;
  ExperimentResult r = *RunExperiment(s);
  double prev = -1.0;
  for (double gamma : s.gamma_values) {
    const ExperimentRow* fima = r.Find("FIMA", "power", 0.2, gamma, 30);
    const ExperimentRow* npz = r.Find("NPZ", "power", 0.2, gamma, 30);
    ASSERT_NE(fima, nullptr);
    ASSERT_NE(npz, nullptr);
    EXPECT_GE(fima->value, prev - 0.02) << gamma;
    EXPECT_LE(fima->value, npz->value + 0.02) << gamma;
    prev = fima->value;
  }
}

TEST(HarnessTest, RunningTimeRowsCarryMilliseconds) {
  ExperimentSpec s = *PresetSpec("running-time", false);
  s.replications = 20;
  s.n_values = {8, 64};
  ExperimentResult r = *RunExperiment(s);
  EXPECT_EQ(r.rows.size(), 2u * 3u);
  for (const ExperimentRow& row : r.rows) {
    EXPECT_EQ(row.metric, "ms");
    EXPECT_GT(row.value, 0.0);
  }
}

}  // namespace
}  // namespace fima
