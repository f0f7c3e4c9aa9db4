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

#include "fima/chisq.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace fima {
namespace {

// Noise on the proportion scale used when matching margins: sensitivity 2/n
// per cell.
absl::StatusOr<PrivacyParams> MarginNoise(double epsilon, int64_t n,
                                          NoiseFamily family) {
  if (n < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("Data size n must be at least 1, but is ", n));
  }
  const double nd = static_cast<double>(n);
  return PrivacyParams::Create(epsilon, family, kTableSensitivity / nd,
                               1.0 / nd);
}

double DrawMarginEntry(double tilde, int64_t n, const FimaConfig& config,
                       Rng& rng) {
  if (config.method == FimaMethod::kOrderStatistic) {
    return DrawOrderStatistic(tilde, n, config.delta, config.position, rng);
  }
  return DrawBetaShortcut(tilde, n, config.delta, rng, config.beta_sampler);
}

// Statistic without the positivity check; non-positive totals give +inf.
double StatisticOrInfinity(int rows, int cols, std::span<const double> cells) {
  std::vector<double> row(static_cast<size_t>(rows), 0.0);
  std::vector<double> col(static_cast<size_t>(cols), 0.0);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double c = cells[static_cast<size_t>(i) * cols + j];
      row[static_cast<size_t>(i)] += c;
      col[static_cast<size_t>(j)] += c;
    }
  }
  const double total = std::accumulate(row.begin(), row.end(), 0.0);
  if (!(total > 0.0)) return std::numeric_limits<double>::infinity();
  double stat = 0.0;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      double e = row[static_cast<size_t>(i)] * col[static_cast<size_t>(j)] /
                 total;
      if (e <= kExpectedCountFloor) e = kExpectedCountFloor;
      const double d = cells[static_cast<size_t>(i) * cols + j] - e;
      stat += d * d / e;
    }
  }
  return stat;
}

}  // namespace

absl::StatusOr<ContingencyTable> ContingencyTable::Create(
    int rows, int cols, std::vector<double> cells, int64_t n) {
  if (rows < 1 || cols < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("Table needs positive dimensions, got ", rows, "x", cols));
  }
  if (cells.size() != static_cast<size_t>(rows) * cols) {
    return absl::InvalidArgumentError(
        absl::StrCat("Expected ", rows * cols, " cells for a ", rows, "x",
                     cols, " table, got ", cells.size()));
  }
  for (double c : cells) {
    if (!std::isfinite(c)) {
      return absl::InvalidArgumentError("Table cells must be finite");
    }
  }
  if (n < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("Table total n must be nonnegative, but is ", n));
  }
  return ContingencyTable(rows, cols, std::move(cells), n);
}

absl::StatusOr<ContingencyTable> ContingencyTable::FromCounts(
    int rows, int cols, std::span<const int64_t> counts) {
  std::vector<double> cells;
  cells.reserve(counts.size());
  int64_t n = 0;
  for (int64_t c : counts) {
    if (c < 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("Raw counts must be nonnegative, got ", c));
    }
    cells.push_back(static_cast<double>(c));
    n += c;
  }
  return Create(rows, cols, std::move(cells), n);
}

Margins MarginalCounts(const ContingencyTable& table) {
  Margins m{std::vector<double>(static_cast<size_t>(table.rows()), 0.0),
            std::vector<double>(static_cast<size_t>(table.cols()), 0.0)};
  for (int i = 0; i < table.rows(); ++i) {
    for (int j = 0; j < table.cols(); ++j) {
      m.rows[static_cast<size_t>(i)] += table.at(i, j);
      m.cols[static_cast<size_t>(j)] += table.at(i, j);
    }
  }
  return m;
}

absl::StatusOr<double> ChiSquareStatistic(const ContingencyTable& table) {
  const double total =
      std::accumulate(table.cells().begin(), table.cells().end(), 0.0);
  if (!(total > 0.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Table total must be positive to compute a statistic, but is ", total));
  }
  return StatisticOrInfinity(table.rows(), table.cols(), table.cells());
}

absl::StatusOr<ContingencyTable> PrivatizeTable(const ContingencyTable& raw,
                                                double epsilon,
                                                NoiseFamily family, Rng& rng) {
  absl::StatusOr<PrivacyParams> params =
      PrivacyParams::ForCount(epsilon, family, kTableSensitivity);
  if (!params.ok()) return params.status();
  std::vector<double> cells(raw.cells().begin(), raw.cells().end());
  for (double& c : cells) c += SampleNoise(*params, rng);
  return ContingencyTable::Create(raw.rows(), raw.cols(), std::move(cells),
                                  raw.n());
}

absl::StatusOr<std::vector<double>> FimaMarginDraw(
    std::span<const double> margin_hat, int64_t n, double epsilon,
    int k_other, NoiseFamily family, double delta, Rng& rng) {
  absl::StatusOr<PrivacyParams> noise = MarginNoise(epsilon, n, family);
  if (!noise.ok()) return noise.status();
  if (k_other < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("k_other must be at least 1, but is ", k_other));
  }
  FimaConfig config;
  config.delta = delta;
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  const double nd = static_cast<double>(n);
  std::vector<double> out;
  out.reserve(margin_hat.size());
  for (double m : margin_hat) {
    double noise_sum = 0.0;
    for (int k = 0; k < k_other; ++k) noise_sum += SampleNoise(*noise, rng);
    out.push_back(DrawBetaShortcut(m / nd - noise_sum, n, delta, rng));
  }
  return out;
}

std::vector<int64_t> SampleMultinomial(int64_t n, std::span<const double> probs,
                                       Rng& rng) {
  std::vector<int64_t> counts(probs.size(), 0);
  double mass = 0.0;
  for (double p : probs) mass += std::max(p, 0.0);
  int64_t remaining = n;
  for (size_t k = 0; k + 1 < probs.size() && remaining > 0; ++k) {
    const double p = std::max(probs[k], 0.0);
    const double q = mass > 0.0 ? std::clamp(p / mass, 0.0, 1.0) : 0.0;
    std::binomial_distribution<int64_t> binomial(remaining, q);
    counts[k] = binomial(rng);
    remaining -= counts[k];
    mass -= p;
  }
  if (!probs.empty()) counts.back() += remaining;
  return counts;
}

absl::StatusOr<ChisqTestOutput> FimaChisqTest(const ContingencyTable& table_dp,
                                              const ChisqOptions& options,
                                              const FimaConfig& config,
                                              Rng& rng) {
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  const int64_t n = table_dp.n();
  absl::StatusOr<PrivacyParams> margin_noise =
      MarginNoise(options.epsilon, n, options.family);
  if (!margin_noise.ok()) return margin_noise.status();
  absl::StatusOr<PrivacyParams> table_noise = PrivacyParams::ForCount(
      options.epsilon, options.family, kTableSensitivity);
  if (!table_noise.ok()) return table_noise.status();
  if (!(options.alpha > 0.0 && options.alpha < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Significance level alpha must lie in (0, 1), but is ", options.alpha));
  }
  absl::StatusOr<double> observed = ChiSquareStatistic(table_dp);
  if (!observed.ok()) return observed.status();

  const int rows = table_dp.rows();
  const int cols = table_dp.cols();
  const size_t cells = static_cast<size_t>(rows) * cols;
  const Margins margins = MarginalCounts(table_dp);
  const double nd = static_cast<double>(n);

  ChisqTestOutput out;
  out.observed = *observed;
  out.null_stats.reserve(static_cast<size_t>(config.draws));

  std::vector<double> noise(cells);
  std::vector<double> theta_rows(static_cast<size_t>(rows));
  std::vector<double> theta_cols(static_cast<size_t>(cols));
  std::vector<double> probs(cells);
  std::vector<double> simulated(cells);
  int64_t at_least_observed = 0;
  for (int64_t h = 0; h < config.draws; ++h) {
    // One matrix of fresh cell noise; its row sums feed the row margin and
    // its column sums the column margin.
    for (double& y : noise) y = SampleNoise(*margin_noise, rng);
    for (int i = 0; i < rows; ++i) {
      double s = 0.0;
      for (int j = 0; j < cols; ++j) s += noise[static_cast<size_t>(i) * cols + j];
      theta_rows[static_cast<size_t>(i)] = DrawMarginEntry(
          margins.rows[static_cast<size_t>(i)] / nd - s, n, config, rng);
    }
    for (int j = 0; j < cols; ++j) {
      double s = 0.0;
      for (int i = 0; i < rows; ++i) s += noise[static_cast<size_t>(i) * cols + j];
      theta_cols[static_cast<size_t>(j)] = DrawMarginEntry(
          margins.cols[static_cast<size_t>(j)] / nd - s, n, config, rng);
    }
    // Draws are clamped away from zero, so the outer product has a positive
    // sum and normalizes cleanly.
    double total = 0.0;
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        const double p = theta_rows[static_cast<size_t>(i)] *
                         theta_cols[static_cast<size_t>(j)];
        probs[static_cast<size_t>(i) * cols + j] = p;
        total += p;
      }
    }
    for (double& p : probs) p /= total;
    const std::vector<int64_t> table = SampleMultinomial(n, probs, rng);
    for (size_t c = 0; c < cells; ++c) {
      simulated[c] =
          static_cast<double>(table[c]) + SampleNoise(*table_noise, rng);
    }
    const double stat = StatisticOrInfinity(rows, cols, simulated);
    out.null_stats.push_back(stat);
    if (stat >= out.observed) ++at_least_observed;
  }
  out.result.p_value =
      static_cast<double>(at_least_observed) / static_cast<double>(config.draws);
  out.result.alpha = options.alpha;
  out.result.reject = out.result.p_value < options.alpha;
  out.result.statistic = out.observed;
  out.result.direction = Direction::kGreater;
  return out;
}

}  // namespace fima
