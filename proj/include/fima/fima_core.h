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

// Fiducial matching sampler.
//
// Given a privatized proportion pi_hat released with additive noise Y, each
// fiducial draw solves  F_U(theta) = pi_hat - Y*  for theta, where Y* is a
// fresh copy of the privacy noise and F_U is the empirical CDF of n iid
// uniforms. The solution set is an interval between consecutive uniform
// order statistics; a draw picks a point inside it.
//
// Two samplers produce the draws:
//   kOrderStatistic  explicit construction: sort n uniforms, locate the
//                    interval, place the draw with D ~ Beta(a, b).
//   kBetaShortcut    with D ~ Beta(1/2, 1/2) the draw is distributed as
//                    Beta(n*t + 1/2, n - n*t + 1/2), t = pi_hat - Y*; no
//                    uniforms are generated, so cost does not grow with n.

#ifndef FIMA_FIMA_CORE_H_
#define FIMA_FIMA_CORE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fima/mechanisms.h"
#include "fima/rng.h"

namespace fima {

// Boundary constant: draws are kept inside [delta, 1 - delta].
inline constexpr double kDefaultDelta = 0x1.0p-52;

enum class FimaMethod { kBetaShortcut, kOrderStatistic };

// How the Beta shortcut turns randomness into a Beta variate.
//   kGammaRatio  X / (X + Y) with independent gammas (fast).
//   kInverseCdf  regularized incomplete beta inverse of one uniform; draws
//                are monotone in pi_hat under common random numbers.
enum class BetaSampler { kGammaRatio, kInverseCdf };

// Distribution of the within-interval position D (Beta(alpha, beta)).
struct PositionDistribution {
  double alpha = 0.5;
  double beta = 0.5;
};

struct FimaConfig {
  int64_t draws = 1000;  // H
  double delta = kDefaultDelta;
  FimaMethod method = FimaMethod::kBetaShortcut;
  PositionDistribution position;  // kOrderStatistic only
  BetaSampler beta_sampler = BetaSampler::kGammaRatio;
  int workers = 1;

  absl::Status Validate() const;
};

// H fiducial draws for one component of a release.
struct FimaDraws {
  std::vector<double> draws;
  int64_t n = 0;
  double source = 0.0;  // the released value the draws were matched to
  ReleaseKind kind = ReleaseKind::kProportion;
  double delta = kDefaultDelta;
};

// Half-open solution interval [lower, upper). Degenerate intervals are the
// boundary points {delta} or {1 - delta} and have lower == upper.
struct SolutionInterval {
  double lower = 0.0;
  double upper = 0.0;
  bool degenerate = false;
};

// pi_hat - Y* with a fresh noise copy at the release's calibration.
double TildeTheta(double pi_hat, const PrivacyParams& noise, Rng& rng);

// Count variant: (x_hat - Y*) / n with Y* at the count calibration.
double TildeThetaFromCount(double x_hat, int64_t n, const PrivacyParams& noise,
                           Rng& rng);

// Solution interval of F_U(theta) = tilde for sorted uniforms `u_sorted`
// (length n). With k = floor(n * tilde) and U_[0] = delta, U_[n+1] = 1 - delta:
//   tilde <= 0            -> {delta}
//   0 <= tilde < 1/n      -> [delta, U_[1])
//   1/n <= tilde < 1      -> [U_[k], U_[k+1])
//   tilde >= 1            -> {1 - delta}
absl::StatusOr<SolutionInterval> IntervalSolution(
    double tilde, int64_t n, std::span<const double> u_sorted, double delta);

// Beta(n*tilde + 1/2, n - n*tilde + 1/2) draw clamped to [delta, 1 - delta];
// delta for tilde <= 0 and 1 - delta for tilde >= 1.
double DrawBetaShortcut(double tilde, int64_t n, double delta, Rng& rng,
                        BetaSampler sampler = BetaSampler::kGammaRatio);

// Inverse-CDF Beta shortcut evaluated at a caller-supplied uniform `u`.
double BetaShortcutQuantile(double tilde, int64_t n, double delta, double u);

// Explicit order-statistic draw: n fresh uniforms, sorted, interval located,
// draw = lower + D * (upper - lower) with D ~ `position`.
double DrawOrderStatistic(double tilde, int64_t n, double delta,
                          const PositionDistribution& position, Rng& rng);

// As DrawOrderStatistic; on return `uniforms` holds the sorted uniforms the
// draw was matched to (left untouched when tilde is outside (0, 1)).
double DrawOrderStatisticWith(double tilde, int64_t n, double delta,
                              const PositionDistribution& position, Rng& rng,
                              std::vector<double>& uniforms);

// H draws matched to a single released proportion.
absl::StatusOr<FimaDraws> FimaSampleProportion(double pi_hat, int64_t n,
                                               const PrivacyParams& noise,
                                               const FimaConfig& config,
                                               Rng& rng);

// H draws matched to a single released count (noise on the count scale).
absl::StatusOr<FimaDraws> FimaSampleFromCount(double x_hat, int64_t n,
                                              const PrivacyParams& noise,
                                              const FimaConfig& config,
                                              Rng& rng);

// Runs the sampler on every component of `release` independently.
absl::StatusOr<std::vector<FimaDraws>> FimaSample(const DpRelease& release,
                                                  const FimaConfig& config,
                                                  Rng& rng);

}  // namespace fima

#endif  // FIMA_FIMA_CORE_H_
