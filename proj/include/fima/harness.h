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

// Monte Carlo experiment driver.
//
// Every replication simulates raw data from the true model, privatizes it,
// and runs FIMA alongside the requested non-private baselines (which see the
// raw data). Replication b at grid point g draws all of its randomness from
// the substream (seed, g, b), so results are identical for any worker count.
//
// Grid columns by task:
//   task            theta                gamma
//   one-sample-*    true proportion      null value (H_0: theta >= gamma)
//   two-sample-*    theta1               theta2 (H_0: theta1 >= theta2)
//   chisq           shift s, cells 0.25 + s*[1,-1,-1,1]   unused
//   logistic        reference-cell prob  unused
//   running-time    true proportion      null value

#ifndef FIMA_HARNESS_H_
#define FIMA_HARNESS_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "fima/fima_core.h"
#include "fima/inference.h"
#include "fima/mechanisms.h"
#include "json.hpp"

namespace fima {

enum class Task {
  kOneSampleCi,
  kOneSampleTest,
  kTwoSampleTest,
  kChisqTest,
  kLogisticCi,
  kRunningTime,
};

enum class Baseline { kNpz, kExactBinomial, kNpChisq };

// kEqualTheta pairs each theta with gamma = theta (level studies).
enum class GammaMode { kGrid, kEqualTheta };

std::string_view TaskName(Task task);

struct ExperimentSpec {
  Task task = Task::kOneSampleCi;
  std::vector<int64_t> n_values = {30};
  std::vector<double> theta_values = {0.5};
  std::vector<double> gamma_values;
  GammaMode gamma_mode = GammaMode::kGrid;
  std::vector<double> epsilon_values = {1.0};
  int64_t replications = 2000;  // B
  double level = 0.95;
  Sidedness sided = Sidedness::kTwoSided;  // interval tasks
  double alpha = 0.05;
  uint64_t seed = 1;
  std::vector<Baseline> baselines;
  NoiseFamily family = NoiseFamily::kLaplace;
  FimaConfig fima;  // fima.draws is H
  // Each sample of a two-sample test is released at epsilon/2 when set.
  bool split_epsilon = false;
  // Logistic: two binary predictors instead of one; `logistic_cells` holds
  // the true success probability of every design cell except the reference,
  // whose value comes from the theta grid.
  bool logistic_two_predictors = false;
  std::vector<double> logistic_cells = {0.075};
  int workers = 1;

  absl::Status Validate() const;
};

struct ExperimentRow {
  std::string method;
  std::string task;
  int64_t n = 0;
  double epsilon = 0.0;
  double theta = 0.0;
  double gamma = 0.0;  // NaN when unused
  std::string metric;
  double value = 0.0;  // NaN when every replication failed
  double mc_stderr = 0.0;  // Monte Carlo standard error of `value`
  double ms = 0.0;
  int64_t valid = 0;  // replications that produced a value

  bool operator==(const ExperimentRow&) const = default;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;

  // First row matching (method, metric) at the given theta/gamma/n, or null.
  const ExperimentRow* Find(std::string_view method, std::string_view metric,
                            double theta, double gamma, int64_t n) const;
};

absl::StatusOr<ExperimentResult> RunExperiment(const ExperimentSpec& spec);

// CSV with header method,task,n,epsilon,theta,gamma,metric,value,stderr,ms.
// NaN cells are written as NA.
void WriteCsv(const ExperimentResult& result, std::ostream& out);
nlohmann::json ToJson(const ExperimentResult& result);

// Named presets. `full` switches to the replication counts and grids used
// for large-scale runs (B = 10^4); otherwise the desk-scale defaults apply.
absl::StatusOr<ExperimentSpec> PresetSpec(std::string_view name, bool full);
std::vector<std::string> PresetNames();

}  // namespace fima

#endif  // FIMA_HARNESS_H_
