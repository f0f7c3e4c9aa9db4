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
#include <cstdint>
#include <numeric>
#include <vector>

#include "absl/status/status.h"
#include "fima/fima_core.h"
#include "fima/mechanisms.h"
#include "fima/rng.h"
#include "gtest/gtest.h"

namespace fima {
namespace {

ContingencyTable Table(int rows, int cols, std::vector<int64_t> counts) {
  return *ContingencyTable::FromCounts(rows, cols, counts);
}

ContingencyTable Transpose(const ContingencyTable& t) {
  std::vector<double> cells;
  for (int j = 0; j < t.cols(); ++j) {
    for (int i = 0; i < t.rows(); ++i) cells.push_back(t.at(i, j));
  }
  return *ContingencyTable::Create(t.cols(), t.rows(), cells, t.n());
}

TEST(ContingencyTableTest, Validation) {
  EXPECT_FALSE(ContingencyTable::Create(0, 2, {}, 0).ok());
  EXPECT_FALSE(ContingencyTable::Create(2, 2, {1, 2, 3}, 6).ok());
  EXPECT_FALSE(ContingencyTable::Create(1, 2, {1, NAN}, 1).ok());
  EXPECT_FALSE(ContingencyTable::Create(1, 1, {1}, -1).ok());
  const std::vector<int64_t> negative = {1, -1};
  EXPECT_EQ(ContingencyTable::FromCounts(1, 2, negative).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(Table(2, 2, {10, 20, 30, 40}).n(), 100);
}

TEST(MarginalCountsTest, Examples) {
  Margins m = MarginalCounts(Table(2, 2, {10, 20, 30, 40}));
  EXPECT_EQ(m.rows, (std::vector<double>{30, 70}));
  EXPECT_EQ(m.cols, (std::vector<double>{40, 60}));
  Margins zero = MarginalCounts(Table(2, 3, {0, 0, 0, 0, 0, 0}));
  EXPECT_EQ(zero.rows, (std::vector<double>{0, 0}));
  EXPECT_EQ(zero.cols, (std::vector<double>{0, 0, 0}));
  ContingencyTable noisy =
      *ContingencyTable::Create(2, 2, {-3.5, 1.0, 2.0, -0.5}, 10);
  Margins n = MarginalCounts(noisy);
  EXPECT_EQ(n.rows, (std::vector<double>{-2.5, 1.5}));
  EXPECT_EQ(n.cols, (std::vector<double>{-1.5, 0.5}));
}

TEST(ChiSquareStatisticTest, ClosedFormTwoByTwo) {
  // n (ad - bc)^2 / (r1 r2 c1 c2).
  EXPECT_NEAR(*ChiSquareStatistic(Table(2, 2, {10, 20, 30, 40})),
              0.7936507936507936, 1e-12);
}

TEST(ChiSquareStatisticTest, IndependentTableIsZero) {
  EXPECT_NEAR(*ChiSquareStatistic(Table(2, 2, {25, 25, 25, 25})), 0.0, 1e-12);
  EXPECT_NEAR(*ChiSquareStatistic(Table(2, 3, {10, 20, 30, 20, 40, 60})), 0.0,
              1e-12);
}

TEST(ChiSquareStatisticTest, TransposeInvariant) {
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> cells(12);
    for (double& c : cells) c = 50.0 * rng.Uniform01() - 5.0;
    ContingencyTable t = *ContingencyTable::Create(3, 4, cells, 100);
    absl::StatusOr<double> a = ChiSquareStatistic(t);
    if (!a.ok()) continue;
    EXPECT_NEAR(*a, *ChiSquareStatistic(Transpose(t)), 1e-9 * (1.0 + *a));
  }
}

TEST(ChiSquareStatisticTest, FloorsTinyExpectedCounts) {
  // Column 2 is empty: its expected counts are floored, observed 0 adds
  // (0 - 1e-8)^2 / 1e-8 = 1e-8 per cell.
  ContingencyTable t = *ContingencyTable::Create(2, 2, {5, 0, 5, 0}, 10);
  EXPECT_NEAR(*ChiSquareStatistic(t), 2e-8, 1e-15);
}

TEST(ChiSquareStatisticTest, NonPositiveTotalIsError) {
  ContingencyTable t = *ContingencyTable::Create(1, 2, {-1, 0.5}, 3);
  EXPECT_EQ(ChiSquareStatistic(t).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(PrivatizeTableTest, KeepsTotalAndShape) {
  Rng rng(2);
  ContingencyTable raw = Table(2, 3, {1, 2, 3, 4, 5, 6});
  ContingencyTable dp = *PrivatizeTable(raw, 1.0, NoiseFamily::kLaplace, rng);
  EXPECT_EQ(dp.rows(), 2);
  EXPECT_EQ(dp.cols(), 3);
  EXPECT_EQ(dp.n(), 21);
  EXPECT_NE(dp, raw);
}

TEST(PrivatizeTableTest, CellNoiseVarianceAtTableScale) {
  // Laplace at scale 2/eps has variance 2 (2/eps)^2.
  Rng rng(3);
  ContingencyTable raw = Table(1, 1, {0});
  constexpr int kReps = 200000;
  double ss = 0.0;
  for (int r = 0; r < kReps; ++r) {
    const double c = PrivatizeTable(raw, 0.5, NoiseFamily::kLaplace, rng)->at(0, 0);
    ss += c * c;
  }
  EXPECT_NEAR(ss / kReps, 2.0 * 16.0, 0.05 * 32.0);
}

TEST(FimaMarginDrawTest, ZeroNoiseHalfMargins) {
  Rng rng(4);
  const std::vector<double> margin = {50000, 50000};
  std::vector<double> d = *FimaMarginDraw(margin, 100000, 1e12,
                                          2, NoiseFamily::kLaplace,
                                          kDefaultDelta, rng);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_NEAR(d[0], 0.5, 0.01);
  EXPECT_NEAR(d[1], 0.5, 0.01);
}

TEST(FimaMarginDrawTest, NoiseSumVarianceAddsUp) {
  // K independent cell noises at proportion scale 2/(n eps).
  constexpr int64_t kN = 200;
  constexpr double kEps = 0.5;
  constexpr int kK = 3;
  PrivacyParams cell =
      *PrivacyParams::Create(kEps, NoiseFamily::kLaplace, 2.0 / kN);
  Rng rng(5);
  constexpr int kReps = 1000000;
  double ss = 0.0;
  for (int r = 0; r < kReps; ++r) {
    double s = 0.0;
    for (int k = 0; k < kK; ++k) s += SampleNoise(cell, rng);
    ss += s * s;
  }
  const double scale = 2.0 / (kN * kEps);
  const double expected = kK * 2.0 * scale * scale;
  EXPECT_NEAR(ss / kReps, expected, 0.05 * expected);
}

TEST(FimaMarginDrawTest, DrawsInsideUnitInterval) {
  Rng rng(6);
  const std::vector<double> margin = {-20, 3, 150};
  for (int r = 0; r < 200; ++r) {
    const std::vector<double> draws = *FimaMarginDraw(
        margin, 100, 0.2, 3, NoiseFamily::kLaplace, kDefaultDelta, rng);
    for (double d : draws) {
      ASSERT_GE(d, kDefaultDelta);
      ASSERT_LE(d, 1.0 - kDefaultDelta);
    }
  }
}

TEST(FimaMarginDrawTest, RejectsBadInput) {
  Rng rng(7);
  const std::vector<double> margin = {1, 2};
  EXPECT_FALSE(
      FimaMarginDraw(margin, 0, 1.0, 2, NoiseFamily::kLaplace, kDefaultDelta, rng)
          .ok());
  EXPECT_FALSE(
      FimaMarginDraw(margin, 3, 1.0, 0, NoiseFamily::kLaplace, kDefaultDelta, rng)
          .ok());
}

TEST(SampleMultinomialTest, SumsToNWithMatchingMeans) {
  Rng rng(8);
  const std::vector<double> probs = {0.1, 0.2, 0.3, 0.4};
  std::vector<double> mean(4, 0.0);
  constexpr int kReps = 20000;
  for (int r = 0; r < kReps; ++r) {
    std::vector<int64_t> c = SampleMultinomial(100, probs, rng);
    ASSERT_EQ(std::accumulate(c.begin(), c.end(), int64_t{0}), 100);
    for (int k = 0; k < 4; ++k) mean[k] += static_cast<double>(c[k]) / kReps;
  }
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(mean[k], 100 * probs[k], 0.1);
}

TEST(SampleMultinomialTest, NormalizesUnscaledWeights) {
  Rng rng(9);
  const std::vector<double> weights = {2.0, 0.0, 6.0};
  double first = 0.0;
  for (int r = 0; r < 10000; ++r) {
    std::vector<int64_t> c = SampleMultinomial(40, weights, rng);
    ASSERT_EQ(c[1], 0);
    first += c[0];
  }
  EXPECT_NEAR(first / 10000, 10.0, 0.1);
}

class FimaChisqTestTest : public ::testing::Test {
 protected:
  static FimaConfig Config(int64_t h) {
    FimaConfig c;
    c.draws = h;
    return c;
  }
};

TEST_F(FimaChisqTestTest, StronglyDependentTableRejects) {
  Rng rng(10);
  ContingencyTable raw =
      Table(3, 3, {900, 50, 50, 40, 800, 60, 30, 70, 1000});
  ContingencyTable dp = *PrivatizeTable(raw, 10.0, NoiseFamily::kLaplace, rng);
  ChisqTestOutput out =
      *FimaChisqTest(dp, ChisqOptions{10.0}, Config(2000), rng);
  EXPECT_EQ(out.result.p_value, 0.0);
  EXPECT_TRUE(out.result.reject);
  EXPECT_EQ(out.null_stats.size(), 2000u);
  EXPECT_EQ(*out.result.statistic, out.observed);
}

TEST_F(FimaChisqTestTest, NullStatsNonnegativeAndPInRange) {
  Rng rng(11);
  ContingencyTable raw = Table(2, 2, {3, 4, 2, 5});
  ContingencyTable dp = *PrivatizeTable(raw, 0.5, NoiseFamily::kLaplace, rng);
  absl::StatusOr<ChisqTestOutput> out =
      FimaChisqTest(dp, ChisqOptions{0.5}, Config(3000), rng);
  if (!out.ok()) GTEST_SKIP() << "privatized total not positive";
  for (double s : out->null_stats) ASSERT_GE(s, 0.0);
  EXPECT_GE(out->result.p_value, 0.0);
  EXPECT_LE(out->result.p_value, 1.0);
  EXPECT_EQ(out->result.reject, out->result.p_value < 0.05);
}

TEST_F(FimaChisqTestTest, PValueCountsNullStatsAtLeastObserved) {
  Rng rng(12);
  ContingencyTable dp =
      *ContingencyTable::Create(2, 2, {240.3, 261.2, 255.9, 242.6}, 1000);
  ChisqTestOutput out = *FimaChisqTest(dp, ChisqOptions{1.0}, Config(500), rng);
  const auto at_least = std::count_if(
      out.null_stats.begin(), out.null_stats.end(),
      [&](double s) { return s >= out.observed; });
  EXPECT_DOUBLE_EQ(out.result.p_value, at_least / 500.0);
}

TEST_F(FimaChisqTestTest, RejectsBadInput) {
  Rng rng(13);
  ContingencyTable empty = *ContingencyTable::Create(2, 2, {1, 1, 1, 1}, 0);
  EXPECT_EQ(FimaChisqTest(empty, ChisqOptions{}, Config(10), rng).status().code(),
            absl::StatusCode::kInvalidArgument);
  ContingencyTable ok = *ContingencyTable::Create(2, 2, {1, 1, 1, 1}, 4);
  EXPECT_FALSE(FimaChisqTest(ok, ChisqOptions{}, Config(0), rng).ok());
  EXPECT_FALSE(FimaChisqTest(ok, ChisqOptions{0.0}, Config(10), rng).ok());
}

TEST_F(FimaChisqTestTest, DeterministicPerSeed) {
  ContingencyTable dp =
      *ContingencyTable::Create(2, 3, {40.2, 61.0, 55.1, 30.7, 41.9, 70.3}, 300);
  Rng a(14), b(14);
  ChisqTestOutput x = *FimaChisqTest(dp, ChisqOptions{0.5}, Config(400), a);
  ChisqTestOutput y = *FimaChisqTest(dp, ChisqOptions{0.5}, Config(400), b);
  EXPECT_EQ(x.null_stats, y.null_stats);
  EXPECT_EQ(x.result, y.result);
}

TEST_F(FimaChisqTestTest, ZeroNoiseLevelNearNominal) {
  // With negligible noise the test reduces to a parametric bootstrap of the
  // classical statistic.
  constexpr int kReps = 500;
  constexpr double kEps = 1e9;
  const std::vector<double> probs = {0.25, 0.25, 0.25, 0.25};
  int rejections = 0;
  for (int b = 0; b < kReps; ++b) {
    Rng rng = Rng::ForStream(15, {static_cast<uint64_t>(b)});
    std::vector<int64_t> counts = SampleMultinomial(5000, probs, rng);
    ContingencyTable dp = *PrivatizeTable(Table(2, 2, counts), kEps,
                                          NoiseFamily::kLaplace, rng);
    ChisqTestOutput out =
        *FimaChisqTest(dp, ChisqOptions{kEps}, Config(1000), rng);
    rejections += out.result.reject;
  }
  EXPECT_NEAR(rejections / static_cast<double>(kReps), 0.05, 0.02);
}

TEST_F(FimaChisqTestTest, PowerGrowsWithN) {
  const std::vector<double> probs = {0.26, 0.24, 0.24, 0.26};
  double prev = -1.0;
  for (int64_t n : {1000, 10000}) {
    int rejections = 0;
    constexpr int kReps = 200;
    for (int b = 0; b < kReps; ++b) {
      Rng rng = Rng::ForStream(16, {static_cast<uint64_t>(n),
                                    static_cast<uint64_t>(b)});
      ContingencyTable dp =
          *PrivatizeTable(Table(2, 2, SampleMultinomial(n, probs, rng)), 1.0,
                          NoiseFamily::kLaplace, rng);
      rejections +=
          FimaChisqTest(dp, ChisqOptions{1.0}, Config(500), rng)->result.reject;
    }
    const double power = rejections / static_cast<double>(kReps);
    EXPECT_GE(power, prev);
    prev = power;
  }
  EXPECT_GT(prev, 0.5);
}

}  // namespace
}  // namespace fima
