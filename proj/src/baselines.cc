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

#include "fima/baselines.h"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace fima {
namespace {

absl::Status CheckCount(int64_t x, int64_t n) {
  if (n < 1 || x < 0 || x > n) {
    return absl::InvalidArgumentError(
        absl::StrCat("Need 0 <= x <= n and n >= 1, got x=", x, ", n=", n));
  }
  return absl::OkStatus();
}

absl::Status CheckUnit(double v, std::string_view what) {
  if (!(v > 0.0 && v < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat(std::string(what), " must lie in (0, 1), but is ", v));
  }
  return absl::OkStatus();
}

double StandardNormalCdf(double z) {
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double OneSidedNormalP(double z, Direction direction) {
  return direction == Direction::kLess ? StandardNormalCdf(z)
                                       : StandardNormalCdf(-z);
}

TestResult MakeResult(double p, double alpha, double statistic,
                      Direction direction) {
  TestResult r;
  r.p_value = std::clamp(p, 0.0, 1.0);
  r.alpha = alpha;
  r.reject = r.p_value < alpha;
  r.statistic = statistic;
  r.direction = direction;
  return r;
}

}  // namespace

absl::StatusOr<ConfidenceInterval> NpZCi(int64_t x, int64_t n, double level) {
  if (absl::Status s = CheckCount(x, n); !s.ok()) return s;
  if (absl::Status s = CheckUnit(level, "Confidence level"); !s.ok()) return s;
  const double p = static_cast<double>(x) / static_cast<double>(n);
  const double z = boost::math::quantile(boost::math::normal(),
                                         0.5 + level / 2.0);
  const double half = z * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  return ConfidenceInterval{p - half, p + half, level, Sidedness::kTwoSided};
}

absl::StatusOr<TestResult> NpZTestOne(int64_t x, int64_t n, double gamma,
                                      Direction direction, double alpha) {
  if (absl::Status s = CheckCount(x, n); !s.ok()) return s;
  if (absl::Status s = CheckUnit(alpha, "Significance level alpha"); !s.ok()) {
    return s;
  }
  const double p = static_cast<double>(x) / static_cast<double>(n);
  const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  if (se == 0.0) {
    const bool alternative_side =
        direction == Direction::kLess ? p < gamma : p > gamma;
    const double z = p == gamma ? 0.0
                                : std::copysign(HUGE_VAL, p - gamma);
    return MakeResult(alternative_side ? 0.0 : 1.0, alpha, z, direction);
  }
  const double z = (p - gamma) / se;
  return MakeResult(OneSidedNormalP(z, direction), alpha, z, direction);
}

absl::StatusOr<ConfidenceInterval> ExactBinomialCi(int64_t x, int64_t n,
                                                   double level) {
  if (absl::Status s = CheckCount(x, n); !s.ok()) return s;
  if (absl::Status s = CheckUnit(level, "Confidence level"); !s.ok()) return s;
  const double tail = (1.0 - level) / 2.0;
  const double xd = static_cast<double>(x);
  const double nd = static_cast<double>(n);
  const double lower =
      x == 0 ? 0.0
             : boost::math::quantile(boost::math::beta_distribution<>(
                                         xd, nd - xd + 1.0),
                                     tail);
  const double upper =
      x == n ? 1.0
             : boost::math::quantile(boost::math::beta_distribution<>(
                                         xd + 1.0, nd - xd),
                                     1.0 - tail);
  return ConfidenceInterval{lower, upper, level, Sidedness::kTwoSided};
}

absl::StatusOr<TestResult> ExactBinomialTestOne(int64_t x, int64_t n,
                                                double gamma,
                                                Direction direction,
                                                double alpha) {
  if (absl::Status s = CheckCount(x, n); !s.ok()) return s;
  if (absl::Status s = CheckUnit(alpha, "Significance level alpha"); !s.ok()) {
    return s;
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Null value gamma must lie in [0, 1], but is ", gamma));
  }
  const boost::math::binomial_distribution<> binomial(static_cast<double>(n),
                                                      gamma);
  const double xd = static_cast<double>(x);
  double p;
  if (direction == Direction::kLess) {
    p = boost::math::cdf(binomial, xd);
  } else {
    p = x == 0 ? 1.0
               : boost::math::cdf(boost::math::complement(binomial, xd - 1.0));
  }
  return MakeResult(p, alpha, xd / static_cast<double>(n), direction);
}

absl::StatusOr<TestResult> NpTwoSampleZ(int64_t x1, int64_t n1, int64_t x2,
                                        int64_t n2, Direction direction,
                                        double alpha) {
  if (absl::Status s = CheckCount(x1, n1); !s.ok()) return s;
  if (absl::Status s = CheckCount(x2, n2); !s.ok()) return s;
  if (absl::Status s = CheckUnit(alpha, "Significance level alpha"); !s.ok()) {
    return s;
  }
  const double p1 = static_cast<double>(x1) / static_cast<double>(n1);
  const double p2 = static_cast<double>(x2) / static_cast<double>(n2);
  const double pooled =
      static_cast<double>(x1 + x2) / static_cast<double>(n1 + n2);
  const double se = std::sqrt(pooled * (1.0 - pooled) *
                              (1.0 / static_cast<double>(n1) +
                               1.0 / static_cast<double>(n2)));
  // A zero pooled SE means both samples are all-0 or all-1: no difference.
  const double z = se > 0.0 ? (p1 - p2) / se : 0.0;
  return MakeResult(OneSidedNormalP(z, direction), alpha, z, direction);
}

absl::StatusOr<TestResult> NpChisqTest(const ContingencyTable& table,
                                       double alpha) {
  if (absl::Status s = CheckUnit(alpha, "Significance level alpha"); !s.ok()) {
    return s;
  }
  const int df = (table.rows() - 1) * (table.cols() - 1);
  if (df < 1) {
    return absl::InvalidArgumentError(
        "Chi-square test needs at least a 2x2 table");
  }
  const Margins m = MarginalCounts(table);
  double total = 0.0;
  for (double r : m.rows) total += r;
  if (!(total > 0.0)) {
    return absl::InvalidArgumentError("Table total must be positive");
  }
  double stat = 0.0;
  for (int i = 0; i < table.rows(); ++i) {
    for (int j = 0; j < table.cols(); ++j) {
      const double e = m.rows[static_cast<size_t>(i)] *
                       m.cols[static_cast<size_t>(j)] / total;
      if (!(e > 0.0)) {
        return absl::FailedPreconditionError(absl::StrCat(
            "Expected count in cell (", i, ",", j,
            ") is zero; the non-private chi-square test cannot run"));
      }
      const double d = table.at(i, j) - e;
      stat += d * d / e;
    }
  }
  const double p = boost::math::cdf(boost::math::complement(
      boost::math::chi_squared_distribution<>(df), stat));
  return MakeResult(p, alpha, stat, Direction::kGreater);
}

}  // namespace fima
