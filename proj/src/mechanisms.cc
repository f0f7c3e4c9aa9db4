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

#include "fima/mechanisms.h"

#include <cmath>
#include <numeric>
#include <random>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace fima {
namespace {

bool IsFinitePositive(double x) { return std::isfinite(x) && x > 0; }

// Standard Laplace(0, 1) by inversion.
double SampleStandardLaplace(Rng& rng) {
  const double u = rng.Uniform01() - 0.5;
  return -std::copysign(std::log1p(-2.0 * std::fabs(u)), u);
}

// Difference of two iid geometric variables with success probability
// 1 - exp(-rate): P(k) proportional to exp(-rate * |k|).
int64_t SampleDiscreteLaplace(double rate, Rng& rng) {
  // exp(-rate) underflows to zero; the distribution is a point mass at 0.
  if (rate > 700.0) return 0;
  const double p = -std::expm1(-rate);
  std::geometric_distribution<int64_t> geometric(p);
  return geometric(rng) - geometric(rng);
}

}  // namespace

std::string_view NoiseFamilyName(NoiseFamily family) {
  switch (family) {
    case NoiseFamily::kLaplace:
      return "laplace";
    case NoiseFamily::kGaussian:
      return "gaussian";
    case NoiseFamily::kDiscreteLaplace:
      return "dlaplace";
  }
  return "unknown";
}

absl::StatusOr<NoiseFamily> ParseNoiseFamily(std::string_view name) {
  if (name == "laplace") return NoiseFamily::kLaplace;
  if (name == "gaussian") return NoiseFamily::kGaussian;
  if (name == "dlaplace") return NoiseFamily::kDiscreteLaplace;
  return absl::InvalidArgumentError(
      absl::StrCat("Unknown noise family '", std::string(name),
                   "'; expected laplace, gaussian or dlaplace"));
}

absl::StatusOr<PrivacyParams> PrivacyParams::Create(double epsilon,
                                                    NoiseFamily family,
                                                    double sensitivity,
                                                    double lattice_step) {
  if (!IsFinitePositive(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Epsilon must be finite and positive, but is ", epsilon));
  }
  if (!IsFinitePositive(sensitivity)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Sensitivity must be finite and positive, but is ", sensitivity));
  }
  if (!IsFinitePositive(lattice_step)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Lattice step must be finite and positive, but is ", lattice_step));
  }
  const double scale = sensitivity / epsilon;
  if (!IsFinitePositive(scale)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Noise scale sensitivity/epsilon must be finite and positive, but is ",
        scale));
  }
  return PrivacyParams(epsilon, family, sensitivity, lattice_step);
}

absl::StatusOr<PrivacyParams> PrivacyParams::ForProportion(double epsilon,
                                                           int64_t n,
                                                           NoiseFamily family) {
  absl::StatusOr<double> sensitivity = SensitivityProportion(n);
  if (!sensitivity.ok()) return sensitivity.status();
  return Create(epsilon, family, *sensitivity, *sensitivity);
}

absl::StatusOr<PrivacyParams> PrivacyParams::ForCount(double epsilon,
                                                      NoiseFamily family,
                                                      double sensitivity) {
  return Create(epsilon, family, sensitivity, 1.0);
}

absl::StatusOr<double> SensitivityProportion(int64_t n) {
  if (n < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("Data size n must be at least 1, but is ", n));
  }
  return 1.0 / static_cast<double>(n);
}

double SampleNoise(const PrivacyParams& params, Rng& rng) {
  switch (params.family()) {
    case NoiseFamily::kLaplace:
      return params.scale() * SampleStandardLaplace(rng);
    case NoiseFamily::kGaussian: {
      std::normal_distribution<double> normal(0.0, 1.0);
      return params.scale() * normal(rng);
    }
    case NoiseFamily::kDiscreteLaplace: {
      const double rate = params.lattice_step() / params.scale();
      return params.lattice_step() *
             static_cast<double>(SampleDiscreteLaplace(rate, rng));
    }
  }
  return 0.0;
}

absl::StatusOr<DpRelease> PrivatizeProportions(std::span<const double> props,
                                               int64_t n,
                                               const PrivacyParams& params,
                                               Rng& rng) {
  absl::StatusOr<double> expected = SensitivityProportion(n);
  if (!expected.ok()) return expected.status();
  if (props.empty()) {
    return absl::InvalidArgumentError("Need at least one proportion");
  }
  if (std::fabs(params.sensitivity() - *expected) > 1e-12 * *expected) {
    return absl::InvalidArgumentError(
        absl::StrCat("Proportion release needs sensitivity 1/n = ", *expected,
                     ", but params carry ", params.sensitivity()));
  }
  for (size_t k = 0; k < props.size(); ++k) {
    if (!(props[k] >= 0.0 && props[k] <= 1.0)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "Proportion ", k, " must lie in [0, 1], but is ", props[k]));
    }
  }
  DpRelease release{{}, n, params, ReleaseKind::kProportion};
  release.values.reserve(props.size());
  for (double p : props) release.values.push_back(p + SampleNoise(params, rng));
  return release;
}

absl::StatusOr<DpRelease> PrivatizeCounts(std::span<const int64_t> counts,
                                          const PrivacyParams& params,
                                          Rng& rng, int64_t n) {
  if (counts.empty()) {
    return absl::InvalidArgumentError("Need at least one count");
  }
  for (size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] < 0) {
      return absl::InvalidArgumentError(absl::StrCat(
          "Count ", k, " must be nonnegative, but is ", counts[k]));
    }
  }
  if (n <= 0) n = std::accumulate(counts.begin(), counts.end(), int64_t{0});
  DpRelease release{{}, n, params, ReleaseKind::kCount};
  release.values.reserve(counts.size());
  for (int64_t c : counts) {
    release.values.push_back(static_cast<double>(c) + SampleNoise(params, rng));
  }
  return release;
}

}  // namespace fima
