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

#include "fima/fima_core.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include <boost/math/special_functions/beta.hpp>

#include "absl/strings/str_cat.h"

namespace fima {
namespace {

// Draws are generated in fixed blocks, each with its own substream, so the
// output does not depend on how blocks are spread over workers.
constexpr int64_t kDrawsPerBlock = 1024;

double Clamp(double x, double delta) {
  return std::clamp(x, delta, 1.0 - delta);
}

double SampleBetaGammaRatio(double a, double b, Rng& rng) {
  std::gamma_distribution<double> ga(a, 1.0);
  std::gamma_distribution<double> gb(b, 1.0);
  const double x = ga(rng);
  const double y = gb(rng);
  const double total = x + y;
  if (!(total > 0.0)) return a >= b ? 1.0 : 0.0;
  return x / total;
}

using NoiseFn = double (*)(double source, int64_t n, const PrivacyParams& noise,
                           Rng& rng);

double ProportionTilde(double source, int64_t, const PrivacyParams& noise,
                       Rng& rng) {
  return TildeTheta(source, noise, rng);
}

double CountTilde(double source, int64_t n, const PrivacyParams& noise,
                  Rng& rng) {
  return TildeThetaFromCount(source, n, noise, rng);
}

void FillBlock(int64_t block, double source, int64_t n,
               const PrivacyParams& noise, const FimaConfig& config,
               uint64_t base_key, NoiseFn tilde_fn, std::vector<double>& out) {
  Rng rng = Rng::ForStream(base_key, {static_cast<uint64_t>(block)});
  const int64_t begin = block * kDrawsPerBlock;
  const int64_t end =
      std::min<int64_t>(begin + kDrawsPerBlock, static_cast<int64_t>(out.size()));
  std::vector<double> scratch;
  for (int64_t h = begin; h < end; ++h) {
    const double tilde = tilde_fn(source, n, noise, rng);
    double draw;
    if (config.method == FimaMethod::kOrderStatistic) {
      draw = DrawOrderStatisticWith(tilde, n, config.delta, config.position,
                                    rng, scratch);
    } else {
      draw = DrawBetaShortcut(tilde, n, config.delta, rng, config.beta_sampler);
    }
    out[static_cast<size_t>(h)] = draw;
  }
}

absl::StatusOr<FimaDraws> SampleComponent(double source, int64_t n,
                                          const PrivacyParams& noise,
                                          const FimaConfig& config, Rng& rng,
                                          ReleaseKind kind, NoiseFn tilde_fn) {
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  if (n < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("Data size n must be at least 1, but is ", n));
  }
  if (!std::isfinite(source)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Released value must be finite, but is ", source));
  }
  FimaDraws result;
  result.draws.resize(static_cast<size_t>(config.draws));
  result.n = n;
  result.source = source;
  result.kind = kind;
  result.delta = config.delta;

  const uint64_t base_key = rng.NextKey();
  const int64_t blocks = (config.draws + kDrawsPerBlock - 1) / kDrawsPerBlock;
  const int workers =
      static_cast<int>(std::min<int64_t>(std::max(config.workers, 1), blocks));
  if (workers <= 1) {
    for (int64_t b = 0; b < blocks; ++b) {
      FillBlock(b, source, n, noise, config, base_key, tilde_fn, result.draws);
    }
    return result;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int64_t b = w; b < blocks; b += workers) {
        FillBlock(b, source, n, noise, config, base_key, tilde_fn,
                  result.draws);
      }
    });
  }
  for (std::thread& t : pool) t.join();
  return result;
}

}  // namespace

absl::Status FimaConfig::Validate() const {
  if (draws < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("Number of draws H must be at least 1, but is ", draws));
  }
  if (!(delta > 0.0 && delta < 0.5)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Boundary constant delta must lie in (0, 0.5), but is ",
                     delta));
  }
  if (!(position.alpha > 0.0 && position.beta > 0.0 &&
        std::isfinite(position.alpha) && std::isfinite(position.beta))) {
    return absl::InvalidArgumentError(
        "Position distribution needs positive finite Beta parameters");
  }
  return absl::OkStatus();
}

double TildeTheta(double pi_hat, const PrivacyParams& noise, Rng& rng) {
  return pi_hat - SampleNoise(noise, rng);
}

double TildeThetaFromCount(double x_hat, int64_t n, const PrivacyParams& noise,
                           Rng& rng) {
  return (x_hat - SampleNoise(noise, rng)) / static_cast<double>(n);
}

absl::StatusOr<SolutionInterval> IntervalSolution(
    double tilde, int64_t n, std::span<const double> u_sorted, double delta) {
  if (n < 1 || u_sorted.size() != static_cast<size_t>(n)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Expected ", n, " uniforms, got ", u_sorted.size()));
  }
  if (!std::is_sorted(u_sorted.begin(), u_sorted.end())) {
    return absl::InvalidArgumentError("Uniforms must be sorted ascending");
  }
  if (tilde <= 0.0) return SolutionInterval{delta, delta, true};
  if (tilde >= 1.0) return SolutionInterval{1.0 - delta, 1.0 - delta, true};
  // k = number of uniforms at or below the solution; k == n can only come
  // from rounding n * tilde up to n.
  const int64_t k = std::min<int64_t>(
      static_cast<int64_t>(std::floor(static_cast<double>(n) * tilde)), n);
  const double lower = k == 0 ? delta : u_sorted[static_cast<size_t>(k - 1)];
  const double upper = k == n ? 1.0 - delta : u_sorted[static_cast<size_t>(k)];
  return SolutionInterval{lower, upper, false};
}

double DrawBetaShortcut(double tilde, int64_t n, double delta, Rng& rng,
                        BetaSampler sampler) {
  if (tilde >= 1.0) return 1.0 - delta;
  if (tilde <= 0.0) return delta;
  if (sampler == BetaSampler::kInverseCdf) {
    return BetaShortcutQuantile(tilde, n, delta, rng.Uniform01());
  }
  const double nt = static_cast<double>(n) * tilde;
  const double a = nt + 0.5;
  const double b = static_cast<double>(n) - nt + 0.5;
  return Clamp(SampleBetaGammaRatio(a, b, rng), delta);
}

double BetaShortcutQuantile(double tilde, int64_t n, double delta, double u) {
  if (tilde >= 1.0) return 1.0 - delta;
  if (tilde <= 0.0) return delta;
  const double nt = static_cast<double>(n) * tilde;
  const double a = nt + 0.5;
  const double b = static_cast<double>(n) - nt + 0.5;
  return Clamp(boost::math::ibeta_inv(a, b, u), delta);
}

double DrawOrderStatisticWith(double tilde, int64_t n, double delta,
                              const PositionDistribution& position, Rng& rng,
                              std::vector<double>& scratch) {
  if (tilde <= 0.0) return delta;
  if (tilde >= 1.0) return 1.0 - delta;
  scratch.resize(static_cast<size_t>(n));
  for (double& u : scratch) u = rng.Uniform01();
  std::sort(scratch.begin(), scratch.end());
  absl::StatusOr<SolutionInterval> interval =
      IntervalSolution(tilde, n, scratch, delta);
  // Sorted input of the right length cannot fail.
  const SolutionInterval& iv = *interval;
  if (iv.degenerate || !(iv.upper > iv.lower)) return Clamp(iv.lower, delta);
  const double d = SampleBetaGammaRatio(position.alpha, position.beta, rng);
  double draw = iv.lower + d * (iv.upper - iv.lower);
  // Keep the draw inside the half-open interval despite rounding.
  if (draw >= iv.upper) draw = std::nextafter(iv.upper, iv.lower);
  return Clamp(draw, delta);
}

double DrawOrderStatistic(double tilde, int64_t n, double delta,
                          const PositionDistribution& position, Rng& rng) {
  std::vector<double> scratch;
  return DrawOrderStatisticWith(tilde, n, delta, position, rng, scratch);
}

absl::StatusOr<FimaDraws> FimaSampleProportion(double pi_hat, int64_t n,
                                               const PrivacyParams& noise,
                                               const FimaConfig& config,
                                               Rng& rng) {
  return SampleComponent(pi_hat, n, noise, config, rng, ReleaseKind::kProportion,
                         &ProportionTilde);
}

absl::StatusOr<FimaDraws> FimaSampleFromCount(double x_hat, int64_t n,
                                              const PrivacyParams& noise,
                                              const FimaConfig& config,
                                              Rng& rng) {
  return SampleComponent(x_hat, n, noise, config, rng, ReleaseKind::kCount,
                         &CountTilde);
}

absl::StatusOr<std::vector<FimaDraws>> FimaSample(const DpRelease& release,
                                                  const FimaConfig& config,
                                                  Rng& rng) {
  if (release.values.empty()) {
    return absl::InvalidArgumentError("Release has no components");
  }
  std::vector<FimaDraws> out;
  out.reserve(release.values.size());
  for (double value : release.values) {
    absl::StatusOr<FimaDraws> draws =
        release.kind == ReleaseKind::kCount
            ? FimaSampleFromCount(value, release.n, release.params, config, rng)
            : FimaSampleProportion(value, release.n, release.params, config,
                                   rng);
    if (!draws.ok()) return draws.status();
    out.push_back(*std::move(draws));
  }
  return out;
}

}  // namespace fima
