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

// Fiducial chi-square test of independence on a privatized contingency table.
//
// The table is released with per-cell additive noise at count scale 2/eps
// (one record moves two cells). The null distribution of the statistic is
// simulated: margin probabilities are drawn by fiducial matching on the noisy
// margins, a fresh table is drawn from the independence model, privatized
// again, and its statistic recorded.

#ifndef FIMA_CHISQ_H_
#define FIMA_CHISQ_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "fima/fima_core.h"
#include "fima/inference.h"
#include "fima/mechanisms.h"
#include "fima/rng.h"

namespace fima {

// Expected counts at or below this floor are replaced by it.
inline constexpr double kExpectedCountFloor = 1e-8;

// Full-table L1 sensitivity on counts.
inline constexpr double kTableSensitivity = 2.0;

// Row-major K1 x K2 table. Raw tables hold nonnegative integers summing to n;
// privatized tables hold arbitrary reals and keep the raw total n.
class ContingencyTable {
 public:
  static absl::StatusOr<ContingencyTable> Create(int rows, int cols,
                                                 std::vector<double> cells,
                                                 int64_t n);
  // Raw counts; n is their sum.
  static absl::StatusOr<ContingencyTable> FromCounts(
      int rows, int cols, std::span<const int64_t> counts);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int64_t n() const { return n_; }
  double at(int i, int j) const {
    return cells_[static_cast<size_t>(i) * cols_ + j];
  }
  std::span<const double> cells() const { return cells_; }

  bool operator==(const ContingencyTable&) const = default;

 private:
  ContingencyTable(int rows, int cols, std::vector<double> cells, int64_t n)
      : rows_(rows), cols_(cols), cells_(std::move(cells)), n_(n) {}

  int rows_;
  int cols_;
  std::vector<double> cells_;
  int64_t n_;
};

struct Margins {
  std::vector<double> rows;  // sum over columns, length K1
  std::vector<double> cols;  // sum over rows, length K2
};

Margins MarginalCounts(const ContingencyTable& table);

// Pearson statistic sum (o - e)^2 / e with e_ij = row_i * col_j / total,
// computed from the table's own margins and total. Expected counts at or
// below kExpectedCountFloor are floored. Fails when the total is not
// positive.
absl::StatusOr<double> ChiSquareStatistic(const ContingencyTable& table);

// Adds independent noise at count scale 2/eps to every cell.
absl::StatusOr<ContingencyTable> PrivatizeTable(const ContingencyTable& raw,
                                                double epsilon,
                                                NoiseFamily family, Rng& rng);

// Fiducial draw of one margin's class probabilities. For entry j:
//   t_j = margin_hat_j / n - (sum of k_other fresh cell noises at
//         proportion scale 2/(n eps)),
// then the Beta shortcut turns t_j into a draw in [delta, 1 - delta]. The
// entries need not sum to one.
absl::StatusOr<std::vector<double>> FimaMarginDraw(
    std::span<const double> margin_hat, int64_t n, double epsilon,
    int k_other, NoiseFamily family, double delta, Rng& rng);

// Multinomial(n, probs) by sequential conditional binomials. `probs` must be
// nonnegative with a positive sum; they are normalized internally.
std::vector<int64_t> SampleMultinomial(int64_t n, std::span<const double> probs,
                                       Rng& rng);

struct ChisqOptions {
  double epsilon = 1.0;
  NoiseFamily family = NoiseFamily::kLaplace;
  double alpha = 0.05;
};

struct ChisqTestOutput {
  TestResult result;
  double observed = 0.0;
  // Simulated null statistics; +inf marks a replicate whose noisy total was
  // not positive.
  std::vector<double> null_stats;
};

// p = #{null stat >= observed} / H, with H = config.draws.
absl::StatusOr<ChisqTestOutput> FimaChisqTest(const ContingencyTable& table_dp,
                                              const ChisqOptions& options,
                                              const FimaConfig& config,
                                              Rng& rng);

}  // namespace fima

#endif  // FIMA_CHISQ_H_
