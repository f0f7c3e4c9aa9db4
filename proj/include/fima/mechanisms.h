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

// Additive differential-privacy mechanisms for proportions and counts.
//
// A release is statistic + (sensitivity / epsilon) * Z, where Z is drawn
// from a fixed, data-independent family:
//   Laplace          Z ~ Laplace(0, 1), density exp(-|z|) / 2  (pure eps-DP)
//   Gaussian         Z ~ N(0, 1)                                (eps-GDP)
//   DiscreteLaplace  integer-lattice analogue of Laplace; see SampleNoise.
//
// Releases are never clamped: a privatized proportion may leave [0, 1] and a
// privatized count may be negative.

#ifndef FIMA_MECHANISMS_H_
#define FIMA_MECHANISMS_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "fima/rng.h"

namespace fima {

enum class NoiseFamily { kLaplace, kGaussian, kDiscreteLaplace };

enum class ReleaseKind { kProportion, kCount };

std::string_view NoiseFamilyName(NoiseFamily family);
absl::StatusOr<NoiseFamily> ParseNoiseFamily(std::string_view name);

// Noise calibration for one additive release. Immutable once built; the
// factories reject non-positive or non-finite epsilon and sensitivity.
class PrivacyParams {
 public:
  // `lattice_step` is the resolution of the released statistic (1 for counts,
  // 1/n for proportions). Only the discrete Laplace family uses it.
  static absl::StatusOr<PrivacyParams> Create(double epsilon,
                                              NoiseFamily family,
                                              double sensitivity,
                                              double lattice_step = 1.0);

  // Sample proportion over n records: sensitivity 1/n.
  static absl::StatusOr<PrivacyParams> ForProportion(double epsilon, int64_t n,
                                                     NoiseFamily family);

  // Counts: sensitivity 1 for a single count, 2 for a full contingency table.
  static absl::StatusOr<PrivacyParams> ForCount(double epsilon,
                                                NoiseFamily family,
                                                double sensitivity = 1.0);

  double epsilon() const { return epsilon_; }
  NoiseFamily family() const { return family_; }
  double sensitivity() const { return sensitivity_; }
  double lattice_step() const { return lattice_step_; }
  double scale() const { return sensitivity_ / epsilon_; }

  bool operator==(const PrivacyParams&) const = default;

 private:
  PrivacyParams(double epsilon, NoiseFamily family, double sensitivity,
                double lattice_step)
      : epsilon_(epsilon),
        family_(family),
        sensitivity_(sensitivity),
        lattice_step_(lattice_step) {}

  double epsilon_;
  NoiseFamily family_;
  double sensitivity_;
  double lattice_step_;
};

// A privatized vector of proportions or counts with its provenance.
struct DpRelease {
  std::vector<double> values;
  int64_t n = 0;
  PrivacyParams params;
  ReleaseKind kind = ReleaseKind::kProportion;
};

// Returns 1/n, the sensitivity of a sample proportion.
absl::StatusOr<double> SensitivityProportion(int64_t n);

// One draw of the additive noise Y = (sensitivity / epsilon) * Z.
//
// For the discrete Laplace family the draw lives on the lattice
// lattice_step * Z with P(k) proportional to
// exp(-|k| * lattice_step * epsilon / sensitivity). On counts (step 1) this
// is exp(-|k| * epsilon / sensitivity); on proportions (step 1/n,
// sensitivity 1/n) it is a unit-sensitivity count draw divided by n.
double SampleNoise(const PrivacyParams& params, Rng& rng);

// Component-wise pi_k = theta_k + Y_k with independent noise per component.
// `params` must carry the proportion sensitivity 1/n.
absl::StatusOr<DpRelease> PrivatizeProportions(std::span<const double> props,
                                               int64_t n,
                                               const PrivacyParams& params,
                                               Rng& rng);

// Component-wise X_k = count_k + Y_k. The caller chooses the sensitivity
// (1 for a single count, 2 for a full table). `n` defaults to the sum of
// the counts.
absl::StatusOr<DpRelease> PrivatizeCounts(std::span<const int64_t> counts,
                                          const PrivacyParams& params,
                                          Rng& rng, int64_t n = 0);

}  // namespace fima

#endif  // FIMA_MECHANISMS_H_
