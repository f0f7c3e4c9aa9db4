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

// Percentile confidence intervals and draw-fraction hypothesis tests over
// fiducial draws.

#ifndef FIMA_INFERENCE_H_
#define FIMA_INFERENCE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "fima/fima_core.h"

namespace fima {

enum class Sidedness { kTwoSided, kLowerOnly, kUpperOnly };

// Alternative hypothesis: kLess is H_A: theta < gamma, kGreater is
// H_A: theta > gamma.
enum class Direction { kLess, kGreater };

std::string_view SidednessName(Sidedness sided);
absl::StatusOr<Sidedness> ParseSidedness(std::string_view name);
std::string_view DirectionName(Direction direction);
absl::StatusOr<Direction> ParseDirection(std::string_view name);

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
  Sidedness sided = Sidedness::kTwoSided;

  bool operator==(const ConfidenceInterval&) const = default;
};

struct TestResult {
  double p_value = 1.0;
  bool reject = false;
  double alpha = 0.05;
  std::optional<double> statistic;
  Direction direction = Direction::kLess;

  bool operator==(const TestResult&) const = default;
};

// Endpoints reported for the unbounded side of a one-sided interval.
struct ParameterRange {
  double lower;
  double upper;
};

inline ParameterRange UnitRange(double delta = kDefaultDelta) {
  return {delta, 1.0 - delta};
}

// Rank (1-based) of the empirical inf-quantile: the smallest j with
// j / H >= alpha, up to a relative slack of 1e-12 on alpha.
int64_t LowerQuantileRank(int64_t h, double alpha);

// inf{v : P(draw <= v) >= alpha}: the LowerQuantileRank-th order statistic.
absl::StatusOr<double> PercentileQuantile(std::span<const double> draws,
                                          double alpha);

// Mirror image of PercentileQuantile for an upper tail of mass `tail`:
// sup{v : P(draw >= v) >= tail}, i.e. the (H + 1 - LowerQuantileRank(H,
// tail))-th order statistic.
absl::StatusOr<double> UpperPercentileQuantile(std::span<const double> draws,
                                               double tail);

// Percentile interval at `level`:
//   kTwoSided   [q_(1-level)/2, upper tail (1-level)/2]
//   kLowerOnly  [q_(1-level), range.upper]
//   kUpperOnly  [range.lower, upper tail (1-level)]
absl::StatusOr<ConfidenceInterval> PercentileCi(
    std::span<const double> draws, double level, Sidedness sided,
    ParameterRange range = UnitRange());

// Draw-fraction test of H_0 against the alternative `direction`:
//   kLess:    p = #{draw >= gamma} / H
//   kGreater: p = #{draw <= gamma} / H
// reject = p < alpha. `statistic` carries the mean of the draws.
absl::StatusOr<TestResult> OneSampleTest(std::span<const double> draws,
                                         double gamma, Direction direction,
                                         double alpha);

// Paired differences draws1[h] - draws2[h].
absl::StatusOr<std::vector<double>> TwoSampleDiffDraws(
    std::span<const double> draws1, std::span<const double> draws2);

// One-sample test on the paired differences against 0.
absl::StatusOr<TestResult> TwoSampleTest(std::span<const double> draws1,
                                         std::span<const double> draws2,
                                         Direction direction, double alpha);

}  // namespace fima

#endif  // FIMA_INFERENCE_H_
