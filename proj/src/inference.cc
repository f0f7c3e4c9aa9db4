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

#include "fima/inference.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace fima {
namespace {

absl::Status CheckProbability(double alpha, std::string_view what) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat(std::string(what), " must lie in (0, 1), but is ", alpha));
  }
  return absl::OkStatus();
}

absl::Status CheckDraws(std::span<const double> draws) {
  if (draws.empty()) return absl::InvalidArgumentError("Draws are empty");
  return absl::OkStatus();
}

// rank is 1-based.
double OrderStatistic(std::vector<double>& scratch, int64_t rank) {
  auto nth = scratch.begin() + (rank - 1);
  std::nth_element(scratch.begin(), nth, scratch.end());
  return *nth;
}

}  // namespace

std::string_view SidednessName(Sidedness sided) {
  switch (sided) {
    case Sidedness::kTwoSided:
      return "two";
    case Sidedness::kLowerOnly:
      return "lower";
    case Sidedness::kUpperOnly:
      return "upper";
  }
  return "unknown";
}

absl::StatusOr<Sidedness> ParseSidedness(std::string_view name) {
  if (name == "two") return Sidedness::kTwoSided;
  if (name == "lower") return Sidedness::kLowerOnly;
  if (name == "upper") return Sidedness::kUpperOnly;
  return absl::InvalidArgumentError(absl::StrCat(
      "Unknown sidedness '", std::string(name), "'; expected two, lower or upper"));
}

std::string_view DirectionName(Direction direction) {
  return direction == Direction::kLess ? "less" : "greater";
}

absl::StatusOr<Direction> ParseDirection(std::string_view name) {
  if (name == "less") return Direction::kLess;
  if (name == "greater") return Direction::kGreater;
  return absl::InvalidArgumentError(absl::StrCat(
      "Unknown direction '", std::string(name), "'; expected less or greater"));
}

int64_t LowerQuantileRank(int64_t h, double alpha) {
  const double hd = static_cast<double>(h);
  // Tails derived as 1 - level sit a few ulps above the intended value (1 -
  // 0.95 > 0.05); the relative slack keeps such ranks on the integer.
  const double target = alpha * (1.0 - 1e-12);
  int64_t j = static_cast<int64_t>(std::ceil(target * hd));
  j = std::clamp<int64_t>(j, 1, h);
  // Settle floating-point ties so the rank is min{j : j/H >= target}, the
  // comparison the tests use for p < alpha.
  while (j > 1 && static_cast<double>(j - 1) / hd >= target) --j;
  while (j < h && static_cast<double>(j) / hd < target) ++j;
  return j;
}

absl::StatusOr<double> PercentileQuantile(std::span<const double> draws,
                                          double alpha) {
  if (absl::Status s = CheckDraws(draws); !s.ok()) return s;
  if (absl::Status s = CheckProbability(alpha, "Quantile level"); !s.ok()) {
    return s;
  }
  std::vector<double> scratch(draws.begin(), draws.end());
  const int64_t h = static_cast<int64_t>(scratch.size());
  return OrderStatistic(scratch, LowerQuantileRank(h, alpha));
}

absl::StatusOr<double> UpperPercentileQuantile(std::span<const double> draws,
                                               double tail) {
  if (absl::Status s = CheckDraws(draws); !s.ok()) return s;
  if (absl::Status s = CheckProbability(tail, "Tail mass"); !s.ok()) return s;
  std::vector<double> scratch(draws.begin(), draws.end());
  const int64_t h = static_cast<int64_t>(scratch.size());
  return OrderStatistic(scratch, h + 1 - LowerQuantileRank(h, tail));
}

absl::StatusOr<ConfidenceInterval> PercentileCi(std::span<const double> draws,
                                                double level, Sidedness sided,
                                                ParameterRange range) {
  if (absl::Status s = CheckDraws(draws); !s.ok()) return s;
  if (absl::Status s = CheckProbability(level, "Confidence level"); !s.ok()) {
    return s;
  }
  std::vector<double> scratch(draws.begin(), draws.end());
  const int64_t h = static_cast<int64_t>(scratch.size());
  ConfidenceInterval ci{range.lower, range.upper, level, sided};
  const double tail =
      sided == Sidedness::kTwoSided ? (1.0 - level) / 2.0 : 1.0 - level;
  if (sided != Sidedness::kUpperOnly) {
    ci.lower = OrderStatistic(scratch, LowerQuantileRank(h, tail));
  }
  if (sided != Sidedness::kLowerOnly) {
    ci.upper = OrderStatistic(scratch, h + 1 - LowerQuantileRank(h, tail));
  }
  return ci;
}

absl::StatusOr<TestResult> OneSampleTest(std::span<const double> draws,
                                         double gamma, Direction direction,
                                         double alpha) {
  if (absl::Status s = CheckDraws(draws); !s.ok()) return s;
  if (absl::Status s = CheckProbability(alpha, "Significance level alpha");
      !s.ok()) {
    return s;
  }
  if (!std::isfinite(gamma)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Null value gamma must be finite, but is ", gamma));
  }
  int64_t null_side = 0;
  double sum = 0.0;
  for (double d : draws) {
    sum += d;
    if (direction == Direction::kLess ? d >= gamma : d <= gamma) ++null_side;
  }
  const double h = static_cast<double>(draws.size());
  TestResult result;
  result.p_value = static_cast<double>(null_side) / h;
  result.alpha = alpha;
  result.reject = result.p_value < alpha;
  result.statistic = sum / h;
  result.direction = direction;
  return result;
}

absl::StatusOr<std::vector<double>> TwoSampleDiffDraws(
    std::span<const double> draws1, std::span<const double> draws2) {
  if (draws1.size() != draws2.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("Draw counts differ: ", draws1.size(), " vs ",
                     draws2.size()));
  }
  std::vector<double> diff(draws1.size());
  std::transform(draws1.begin(), draws1.end(), draws2.begin(), diff.begin(),
                 std::minus<>());
  return diff;
}

absl::StatusOr<TestResult> TwoSampleTest(std::span<const double> draws1,
                                         std::span<const double> draws2,
                                         Direction direction, double alpha) {
  absl::StatusOr<std::vector<double>> diff = TwoSampleDiffDraws(draws1, draws2);
  if (!diff.ok()) return diff.status();
  return OneSampleTest(*diff, 0.0, direction, alpha);
}

}  // namespace fima
