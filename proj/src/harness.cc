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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <random>
#include <thread>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "fima/baselines.h"
#include "fima/chisq.h"
#include "fima/json_io.h"
#include "fima/logistic.h"
#include "fima/rng.h"

namespace fima {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct GridPoint {
  int64_t n;
  double epsilon;
  double theta;
  double gamma;
};

enum class MetricKind { kRate, kMean, kTime };

struct MetricSpec {
  std::string name;
  MetricKind kind;
};

struct MethodPlan {
  std::string name;
  std::vector<MetricSpec> metrics;
};

struct Outcome {
  bool ok = false;
  std::vector<double> metrics;
  double ms = 0.0;
};

using Metrics = absl::StatusOr<std::vector<double>>;
using MethodFn = std::function<Metrics()>;

Outcome Timed(const MethodFn& fn) {
  const auto start = std::chrono::steady_clock::now();
  Metrics m = fn();
  const auto stop = std::chrono::steady_clock::now();
  Outcome o;
  o.ms = std::chrono::duration<double, std::milli>(stop - start).count();
  if (m.ok()) {
    o.ok = true;
    o.metrics = *std::move(m);
  }
  return o;
}

bool Has(const ExperimentSpec& spec, Baseline b) {
  return std::find(spec.baselines.begin(), spec.baselines.end(), b) !=
         spec.baselines.end();
}

// Whether the null hypothesis holds at this grid point.
bool NullHolds(const ExperimentSpec& spec, const GridPoint& g) {
  switch (spec.task) {
    case Task::kOneSampleTest:
    case Task::kTwoSampleTest:
      return g.theta >= g.gamma;
    case Task::kChisqTest:
      return g.theta == 0.0;
    default:
      return false;
  }
}

LogisticDesign DesignFor(const ExperimentSpec& spec) {
  return spec.logistic_two_predictors ? LogisticDesign::TwoBinaryPredictors()
                                      : LogisticDesign::OneBinaryPredictor();
}

std::vector<double> CellThetas(const ExperimentSpec& spec, double theta_ref) {
  std::vector<double> cells = {theta_ref};
  cells.insert(cells.end(), spec.logistic_cells.begin(),
               spec.logistic_cells.end());
  return cells;
}

std::vector<MethodPlan> PlanMethods(const ExperimentSpec& spec,
                                    const GridPoint& g) {
  const std::string rate = NullHolds(spec, g) ? "level" : "power";
  std::vector<MethodPlan> plans;
  switch (spec.task) {
    case Task::kOneSampleCi: {
      const std::vector<MetricSpec> m = {{"coverage", MetricKind::kRate},
                                         {"length", MetricKind::kMean}};
      plans.push_back({"FIMA", m});
      if (Has(spec, Baseline::kNpz)) plans.push_back({"NPZ", m});
      if (Has(spec, Baseline::kExactBinomial)) plans.push_back({"Exact", m});
      break;
    }
    case Task::kOneSampleTest: {
      const std::vector<MetricSpec> m = {{rate, MetricKind::kRate}};
      plans.push_back({"FIMA", m});
      if (Has(spec, Baseline::kNpz)) plans.push_back({"NPZ", m});
      if (Has(spec, Baseline::kExactBinomial)) plans.push_back({"Exact", m});
      break;
    }
    case Task::kTwoSampleTest: {
      const std::vector<MetricSpec> m = {{rate, MetricKind::kRate}};
      plans.push_back({"FIMA", m});
      if (Has(spec, Baseline::kNpz)) plans.push_back({"NPZ", m});
      break;
    }
    case Task::kChisqTest: {
      const std::vector<MetricSpec> m = {{rate, MetricKind::kRate}};
      plans.push_back({"FIMA", m});
      if (Has(spec, Baseline::kNpChisq)) plans.push_back({"NPChisq", m});
      break;
    }
    case Task::kLogisticCi: {
      std::vector<MetricSpec> m;
      const LogisticDesign design = DesignFor(spec);
      for (const Coefficient& c : design.coefficients()) {
        m.push_back({absl::StrCat("coverage_", c.name), MetricKind::kRate});
        m.push_back({absl::StrCat("length_", c.name), MetricKind::kMean});
      }
      plans.push_back({"FIMA", m});
      break;
    }
    case Task::kRunningTime: {
      const std::vector<MetricSpec> m = {{"ms", MetricKind::kTime}};
      plans.push_back({"FIMA", m});
      if (Has(spec, Baseline::kNpz)) plans.push_back({"NPZ", m});
      if (Has(spec, Baseline::kExactBinomial)) plans.push_back({"Exact", m});
      break;
    }
  }
  return plans;
}

int64_t DrawBinomial(int64_t n, double p, Rng& rng) {
  return std::binomial_distribution<int64_t>(n, p)(rng);
}

absl::StatusOr<DpRelease> ReleaseProportion(int64_t x, int64_t n,
                                            double epsilon, NoiseFamily family,
                                            Rng& rng) {
  absl::StatusOr<PrivacyParams> params =
      PrivacyParams::ForProportion(epsilon, n, family);
  if (!params.ok()) return params.status();
  const double p = static_cast<double>(x) / static_cast<double>(n);
  return PrivatizeProportions(std::span<const double>(&p, 1), n, *params, rng);
}

absl::StatusOr<std::vector<double>> FimaDrawsFor(const DpRelease& release,
                                                 const FimaConfig& config,
                                                 Rng& rng) {
  absl::StatusOr<std::vector<FimaDraws>> d = FimaSample(release, config, rng);
  if (!d.ok()) return d.status();
  return std::move(d->front().draws);
}

std::vector<double> IntervalMetrics(const ConfidenceInterval& ci,
                                    double truth) {
  const bool covered = ci.lower <= truth && truth <= ci.upper;
  return {covered ? 1.0 : 0.0, ci.upper - ci.lower};
}

Metrics RejectMetric(const absl::StatusOr<TestResult>& r) {
  if (!r.ok()) return r.status();
  return std::vector<double>{r->reject ? 1.0 : 0.0};
}

// Methods of one replication, in the same order as PlanMethods. The data
// simulation and release happen here; only the releases reach FIMA.
std::vector<MethodFn> ReplicationMethods(const ExperimentSpec& spec,
                                         const GridPoint& g, Rng& rng,
                                         absl::Status& sim_status) {
  std::vector<MethodFn> fns;
  FimaConfig config = spec.fima;
  config.workers = 1;
  switch (spec.task) {
    case Task::kOneSampleCi:
    case Task::kOneSampleTest:
    case Task::kRunningTime: {
      const int64_t x = DrawBinomial(g.n, g.theta, rng);
      absl::StatusOr<DpRelease> release =
          ReleaseProportion(x, g.n, g.epsilon, spec.family, rng);
      if (!release.ok()) {
        sim_status = release.status();
        return fns;
      }
      const bool ci_task = spec.task == Task::kOneSampleCi;
      fns.push_back([&spec, &rng, g, config, ci_task,
                     release = *std::move(release)]() -> Metrics {
        absl::StatusOr<std::vector<double>> draws =
            FimaDrawsFor(release, config, rng);
        if (!draws.ok()) return draws.status();
        if (ci_task) {
          absl::StatusOr<ConfidenceInterval> ci =
              PercentileCi(*draws, spec.level, spec.sided);
          if (!ci.ok()) return ci.status();
          return IntervalMetrics(*ci, g.theta);
        }
        return RejectMetric(
            OneSampleTest(*draws, g.gamma, Direction::kLess, spec.alpha));
      });
      auto add_baseline = [&](Baseline b, auto ci_fn, auto test_fn) {
        if (!Has(spec, b)) return;
        fns.push_back([&spec, g, x, ci_task, ci_fn, test_fn]() -> Metrics {
          if (ci_task) {
            absl::StatusOr<ConfidenceInterval> ci = ci_fn(x, g.n, spec.level);
            if (!ci.ok()) return ci.status();
            return IntervalMetrics(*ci, g.theta);
          }
          return RejectMetric(
              test_fn(x, g.n, g.gamma, Direction::kLess, spec.alpha));
        });
      };
      add_baseline(Baseline::kNpz, NpZCi, NpZTestOne);
      add_baseline(Baseline::kExactBinomial, ExactBinomialCi,
                   ExactBinomialTestOne);
      break;
    }
    case Task::kTwoSampleTest: {
      const int64_t x1 = DrawBinomial(g.n, g.theta, rng);
      const int64_t x2 = DrawBinomial(g.n, g.gamma, rng);
      const double eps = spec.split_epsilon ? g.epsilon / 2.0 : g.epsilon;
      absl::StatusOr<DpRelease> r1 =
          ReleaseProportion(x1, g.n, eps, spec.family, rng);
      absl::StatusOr<DpRelease> r2 =
          ReleaseProportion(x2, g.n, eps, spec.family, rng);
      if (!r1.ok() || !r2.ok()) {
        sim_status = r1.ok() ? r2.status() : r1.status();
        return fns;
      }
      fns.push_back([&spec, &rng, config, r1 = *std::move(r1),
                     r2 = *std::move(r2)]() -> Metrics {
        absl::StatusOr<std::vector<double>> d1 = FimaDrawsFor(r1, config, rng);
        if (!d1.ok()) return d1.status();
        absl::StatusOr<std::vector<double>> d2 = FimaDrawsFor(r2, config, rng);
        if (!d2.ok()) return d2.status();
        return RejectMetric(TwoSampleTest(*d1, *d2, Direction::kLess,
                                          spec.alpha));
      });
      if (Has(spec, Baseline::kNpz)) {
        fns.push_back([&spec, g, x1, x2]() -> Metrics {
          return RejectMetric(
              NpTwoSampleZ(x1, g.n, x2, g.n, Direction::kLess, spec.alpha));
        });
      }
      break;
    }
    case Task::kChisqTest: {
      const double s = g.theta;
      const std::vector<double> probs = {0.25 + s, 0.25 - s, 0.25 - s,
                                         0.25 + s};
      const std::vector<int64_t> counts = SampleMultinomial(g.n, probs, rng);
      absl::StatusOr<ContingencyTable> raw =
          ContingencyTable::FromCounts(2, 2, counts);
      if (!raw.ok()) {
        sim_status = raw.status();
        return fns;
      }
      absl::StatusOr<ContingencyTable> dp =
          PrivatizeTable(*raw, g.epsilon, spec.family, rng);
      if (!dp.ok()) {
        sim_status = dp.status();
        return fns;
      }
      fns.push_back(
          [&spec, &rng, g, config, dp = *std::move(dp)]() -> Metrics {
            ChisqOptions options{g.epsilon, spec.family, spec.alpha};
            absl::StatusOr<ChisqTestOutput> out =
                FimaChisqTest(dp, options, config, rng);
            if (!out.ok()) return out.status();
            return std::vector<double>{out->result.reject ? 1.0 : 0.0};
          });
      if (Has(spec, Baseline::kNpChisq)) {
        fns.push_back([&spec, raw = *std::move(raw)]() -> Metrics {
          return RejectMetric(NpChisqTest(raw, spec.alpha));
        });
      }
      break;
    }
    case Task::kLogisticCi: {
      const LogisticDesign design = DesignFor(spec);
      const std::vector<double> thetas = CellThetas(spec, g.theta);
      const int64_t cells = design.num_cells();
      std::vector<DpRelease> releases;
      for (int64_t c = 0; c < cells; ++c) {
        const int64_t n_c = g.n / cells + (c < g.n % cells ? 1 : 0);
        const int64_t x =
            DrawBinomial(n_c, thetas[static_cast<size_t>(c)], rng);
        absl::StatusOr<DpRelease> r =
            ReleaseProportion(x, n_c, g.epsilon, spec.family, rng);
        if (!r.ok()) {
          sim_status = r.status();
          return fns;
        }
        releases.push_back(*std::move(r));
      }
      std::vector<double> truth;
      const size_t ref = static_cast<size_t>(design.reference_cell());
      for (const Coefficient& coef : design.coefficients()) {
        const double base = std::log(thetas[ref] / (1.0 - thetas[ref]));
        const double t = thetas[static_cast<size_t>(coef.cell)];
        truth.push_back(static_cast<size_t>(coef.cell) == ref
                            ? base
                            : std::log(t / (1.0 - t)) - base);
      }
      fns.push_back([&spec, &rng, config, design, truth,
                     releases = std::move(releases)]() -> Metrics {
        absl::StatusOr<LogisticFit> fit =
            LogisticInference(releases, design, config, spec.level, rng);
        if (!fit.ok()) return fit.status();
        std::vector<double> m;
        for (size_t k = 0; k < fit->coefficients.size(); ++k) {
          const std::vector<double> im =
              IntervalMetrics(fit->coefficients[k].ci, truth[k]);
          m.insert(m.end(), im.begin(), im.end());
        }
        return m;
      });
      break;
    }
  }
  return fns;
}

std::vector<Outcome> RunReplication(const ExperimentSpec& spec,
                                    const GridPoint& g, size_t num_methods,
                                    uint64_t grid_index, int64_t b) {
  Rng rng = Rng::ForStream(spec.seed, {grid_index, static_cast<uint64_t>(b)});
  absl::Status sim_status;
  std::vector<MethodFn> fns = ReplicationMethods(spec, g, rng, sim_status);
  std::vector<Outcome> out(num_methods);
  if (!sim_status.ok()) return out;
  for (size_t m = 0; m < fns.size() && m < num_methods; ++m) {
    out[m] = Timed(fns[m]);
  }
  if (spec.task == Task::kRunningTime) {
    for (Outcome& o : out) {
      if (o.ok) o.metrics = {o.ms};
    }
  }
  return out;
}

std::vector<GridPoint> ExpandGrid(const ExperimentSpec& spec) {
  std::vector<GridPoint> grid;
  const bool uses_gamma = spec.task == Task::kOneSampleTest ||
                          spec.task == Task::kTwoSampleTest ||
                          spec.task == Task::kRunningTime;
  for (int64_t n : spec.n_values) {
    for (double eps : spec.epsilon_values) {
      for (double theta : spec.theta_values) {
        if (!uses_gamma) {
          grid.push_back({n, eps, theta, kNaN});
        } else if (spec.gamma_mode == GammaMode::kEqualTheta) {
          grid.push_back({n, eps, theta, theta});
        } else {
          for (double gamma : spec.gamma_values) {
            grid.push_back({n, eps, theta, gamma});
          }
        }
      }
    }
  }
  return grid;
}

bool InUnit(double v) { return v >= 0.0 && v <= 1.0; }

std::string FormatCell(double v) {
  if (std::isnan(v)) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}


}  // namespace

std::string_view TaskName(Task task) {
  switch (task) {
    case Task::kOneSampleCi:
      return "one-sample-ci";
    case Task::kOneSampleTest:
      return "one-sample-test";
    case Task::kTwoSampleTest:
      return "two-sample-test";
    case Task::kChisqTest:
      return "chisq-test";
    case Task::kLogisticCi:
      return "logistic-ci";
    case Task::kRunningTime:
      return "running-time";
  }
  return "unknown";
}

absl::Status ExperimentSpec::Validate() const {
  if (replications < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("Replications B must be >= 1, got ", replications));
  }
  if (absl::Status s = fima.Validate(); !s.ok()) return s;
  if (n_values.empty() || theta_values.empty() || epsilon_values.empty()) {
    return absl::InvalidArgumentError("n, theta and epsilon grids must be "
                                      "nonempty");
  }
  const bool needs_gamma = (task == Task::kOneSampleTest ||
                            task == Task::kTwoSampleTest ||
                            task == Task::kRunningTime) &&
                           gamma_mode == GammaMode::kGrid;
  if (needs_gamma && gamma_values.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat(std::string(TaskName(task)), " needs a nonempty gamma grid"));
  }
  for (int64_t n : n_values) {
    if (n < 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("Sample sizes must be >= 1, got ", n));
    }
  }
  for (double eps : epsilon_values) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
      return absl::InvalidArgumentError(
          absl::StrCat("Epsilon must be positive and finite, got ", eps));
    }
  }
  for (double theta : theta_values) {
    const bool ok = task == Task::kChisqTest
                        ? std::abs(theta) <= 0.25
                        : InUnit(theta);
    if (!ok) {
      return absl::InvalidArgumentError(
          absl::StrCat("Grid value theta=", theta, " is out of range for ",
                       std::string(TaskName(task))));
    }
  }
  if (needs_gamma) {
    for (double gamma : gamma_values) {
      if (!InUnit(gamma)) {
        return absl::InvalidArgumentError(
            absl::StrCat("Grid value gamma=", gamma, " is outside [0, 1]"));
      }
    }
  }
  if (!(level > 0.0 && level < 1.0) || !(alpha > 0.0 && alpha < 1.0)) {
    return absl::InvalidArgumentError("level and alpha must lie in (0, 1)");
  }
  if (task == Task::kLogisticCi) {
    const LogisticDesign design = logistic_two_predictors
                                      ? LogisticDesign::TwoBinaryPredictors()
                                      : LogisticDesign::OneBinaryPredictor();
    if (logistic_cells.size() + 1 != static_cast<size_t>(design.num_cells())) {
      return absl::InvalidArgumentError(absl::StrCat(
          "Logistic design has ", design.num_cells(),
          " cells; logistic_cells must hold ", design.num_cells() - 1,
          " probabilities, got ", logistic_cells.size()));
    }
    for (double p : logistic_cells) {
      if (!(p > 0.0 && p < 1.0)) {
        return absl::InvalidArgumentError(
            absl::StrCat("Logistic cell probability ", p, " is outside (0, 1)"));
      }
    }
    for (double theta : theta_values) {
      if (!(theta > 0.0 && theta < 1.0)) {
        return absl::InvalidArgumentError(
            "Reference-cell probability must lie in (0, 1)");
      }
    }
    for (int64_t n : n_values) {
      if (n < design.num_cells()) {
        return absl::InvalidArgumentError(
            absl::StrCat("n=", n, " leaves a design cell empty"));
      }
    }
  }
  if (workers < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("workers must be >= 1, got ", workers));
  }
  return absl::OkStatus();
}

const ExperimentRow* ExperimentResult::Find(std::string_view method,
                                            std::string_view metric,
                                            double theta, double gamma,
                                            int64_t n) const {
  auto same = [](double a, double b) {
    return (std::isnan(a) && std::isnan(b)) || std::abs(a - b) < 1e-12;
  };
  for (const ExperimentRow& row : rows) {
    if (row.method == method && row.metric == metric && row.n == n &&
        same(row.theta, theta) && same(row.gamma, gamma)) {
      return &row;
    }
  }
  return nullptr;
}

absl::StatusOr<ExperimentResult> RunExperiment(const ExperimentSpec& spec) {
  if (absl::Status s = spec.Validate(); !s.ok()) return s;
  const std::vector<GridPoint> grid = ExpandGrid(spec);
  const size_t reps = static_cast<size_t>(spec.replications);
  ExperimentResult result;
  for (size_t gi = 0; gi < grid.size(); ++gi) {
    const GridPoint& g = grid[gi];
    const std::vector<MethodPlan> plans = PlanMethods(spec, g);
    std::vector<std::vector<Outcome>> outcomes(reps);
    auto work = [&](size_t first, size_t stride) {
      for (size_t b = first; b < reps; b += stride) {
        outcomes[b] = RunReplication(spec, g, plans.size(), gi,
                                     static_cast<int64_t>(b));
      }
    };
    const size_t workers =
        std::min(static_cast<size_t>(spec.workers), reps);
    if (workers <= 1) {
      work(0, 1);
    } else {
      std::vector<std::thread> threads;
      for (size_t w = 0; w < workers; ++w) threads.emplace_back(work, w, workers);
      for (std::thread& t : threads) t.join();
    }

    for (size_t m = 0; m < plans.size(); ++m) {
      double ms_sum = 0.0;
      int64_t ms_count = 0;
      for (const std::vector<Outcome>& rep : outcomes) {
        if (rep[m].ok) {
          ms_sum += rep[m].ms;
          ++ms_count;
        }
      }
      const double mean_ms = ms_count > 0 ? ms_sum / ms_count : kNaN;
      for (size_t k = 0; k < plans[m].metrics.size(); ++k) {
        const MetricSpec& metric = plans[m].metrics[k];
        double sum = 0.0;
        double sum_sq = 0.0;
        int64_t count = 0;
        for (const std::vector<Outcome>& rep : outcomes) {
          if (!rep[m].ok) continue;
          const double v = rep[m].metrics[k];
          sum += v;
          sum_sq += v * v;
          ++count;
        }
        ExperimentRow row;
        row.method = plans[m].name;
        row.task = std::string(TaskName(spec.task));
        row.n = g.n;
        row.epsilon = g.epsilon;
        row.theta = g.theta;
        row.gamma = g.gamma;
        row.metric = metric.name;
        row.valid = count;
        row.ms = mean_ms;
        if (count == 0) {
          row.value = kNaN;
          row.mc_stderr = kNaN;
        } else {
          const double c = static_cast<double>(count);
          row.value = sum / c;
          if (metric.kind == MetricKind::kRate) {
            row.mc_stderr = std::sqrt(row.value * (1.0 - row.value) / c);
          } else {
            const double var =
                count > 1 ? std::max(0.0, (sum_sq - sum * sum / c) / (c - 1.0))
                          : 0.0;
            row.mc_stderr = std::sqrt(var / c);
          }
        }
        result.rows.push_back(std::move(row));
      }
    }
  }
  return result;
}

void WriteCsv(const ExperimentResult& result, std::ostream& out) {
  out << "method,task,n,epsilon,theta,gamma,metric,value,stderr,ms\n";
  for (const ExperimentRow& r : result.rows) {
    out << absl::StrJoin(
               {r.method, r.task, absl::StrCat(r.n), FormatCell(r.epsilon),
                FormatCell(r.theta), FormatCell(r.gamma), r.metric,
                FormatCell(r.value), FormatCell(r.mc_stderr),
                FormatCell(r.ms)},
               ",")
        << "\n";
  }
}

nlohmann::json ToJson(const ExperimentResult& result) {
  nlohmann::json j;
  to_json(j, result);
  return j;
}

namespace {

std::vector<double> Range(double from, double to, double step) {
  std::vector<double> out;
  const int count = static_cast<int>(std::floor((to - from) / step + 1e-9));
  for (int i = 0; i <= count; ++i) {
    out.push_back(std::round((from + i * step) * 1e6) / 1e6);
  }
  return out;
}

// Cell probabilities for the logistic presets, with the reference cell at
// 0.3. One predictor: beta1 = -1.66. Two predictors: beta1 = -1.8 and
// beta2 = -0.42, additive on the logit scale.
std::vector<double> TwoPredictorCells() {
  const double b0 = std::log(0.3 / 0.7);
  return {InvLogit(b0 - 1.8), InvLogit(b0 - 0.42), InvLogit(b0 - 2.22)};
}

}  // namespace

std::vector<std::string> PresetNames() {
  return {"one-sample-ci",   "one-sample-level", "one-sample-power",
          "two-sample-level", "two-sample-power", "chisq-level",
          "chisq-power",      "logistic-one",     "logistic-two",
          "running-time"};
}

absl::StatusOr<ExperimentSpec> PresetSpec(std::string_view name, bool full) {
  ExperimentSpec s;
  s.replications = full ? 10000 : 2000;
  s.fima.draws = 1000;
  s.epsilon_values = {1.0};
  s.n_values = {30};
  if (name == "one-sample-ci") {
    s.task = Task::kOneSampleCi;
    if (full) {
      s.theta_values = Range(0.10, 0.12, 0.01);
      const std::vector<double> fine = Range(0.125, 0.985, 0.005);
      s.theta_values.insert(s.theta_values.end(), fine.begin(), fine.end());
      s.baselines = {Baseline::kNpz, Baseline::kExactBinomial};
    } else {
      s.theta_values = {0.2, 0.5, 0.8};
      s.baselines = {Baseline::kExactBinomial};
    }
  } else if (name == "one-sample-level") {
    s.task = Task::kOneSampleTest;
    s.theta_values = full ? Range(0.1, 0.9, 0.05)
                          : std::vector<double>{0.3, 0.5, 0.7};
    s.gamma_mode = GammaMode::kEqualTheta;
    s.baselines = {Baseline::kNpz, Baseline::kExactBinomial};
  } else if (name == "one-sample-power") {
    s.task = Task::kOneSampleTest;
    s.theta_values = {0.2};
    s.gamma_values = full ? Range(0.2, 1.0, 0.05)
                          : std::vector<double>{0.3, 0.4, 0.5, 0.6};
    s.baselines = {Baseline::kNpz, Baseline::kExactBinomial};
  } else if (name == "two-sample-level") {
    s.task = Task::kTwoSampleTest;
    s.theta_values = full ? Range(0.1, 0.9, 0.05)
                          : std::vector<double>{0.3, 0.5, 0.7};
    s.gamma_mode = GammaMode::kEqualTheta;
    s.baselines = {Baseline::kNpz};
  } else if (name == "two-sample-power") {
    s.task = Task::kTwoSampleTest;
    s.theta_values = {0.2};
    s.gamma_values = full ? Range(0.2, 1.0, 0.05)
                          : std::vector<double>{0.4, 0.6, 0.8};
    s.baselines = {Baseline::kNpz};
  } else if (name == "chisq-level" || name == "chisq-power") {
    s.task = Task::kChisqTest;
    s.replications = full ? 10000 : 500;
    s.fima.draws = full ? 10000 : 2000;
    s.epsilon_values = {0.1};
    s.theta_values = {name == "chisq-level" ? 0.0 : 0.01};
    s.n_values = full ? std::vector<int64_t>{1000, 5000, 10000, 50000}
                      : std::vector<int64_t>{1000, 10000};
    if (name == "chisq-level") s.n_values = {1000};
    s.baselines = {Baseline::kNpChisq};
  } else if (name == "logistic-one") {
    s.task = Task::kLogisticCi;
    s.theta_values = {0.3};
    s.logistic_cells = {InvLogit(std::log(0.3 / 0.7) - 1.66)};
    s.n_values = full ? std::vector<int64_t>{200, 500, 1000, 2000}
                      : std::vector<int64_t>{500};
  } else if (name == "logistic-two") {
    s.task = Task::kLogisticCi;
    s.logistic_two_predictors = true;
    s.theta_values = {0.3};
    s.logistic_cells = TwoPredictorCells();
    s.n_values = full ? std::vector<int64_t>{200, 500, 1000, 2000}
                      : std::vector<int64_t>{1000};
  } else if (name == "running-time") {
    s.task = Task::kRunningTime;
    s.replications = 1000;
    s.theta_values = {0.5};
    s.gamma_values = {0.5};
    s.n_values = {8, 16, 32, 64, 128, 256, 512};
    if (full) {
      for (int64_t n : {1024, 2048, 4096}) s.n_values.push_back(n);
    }
    s.baselines = {Baseline::kNpz, Baseline::kExactBinomial};
  } else {
    return absl::NotFoundError(
        absl::StrCat("Unknown preset '", std::string(name), "'; known presets: ",
                     absl::StrJoin(PresetNames(), ", ")));
  }
  return s;
}

}  // namespace fima
