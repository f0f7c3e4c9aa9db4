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

#include "fima/logistic.h"

#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace fima {
namespace {

// Draws are clamped to [delta, 1 - delta] upstream, so this is finite.
double UncheckedLogit(double p) { return std::log(p) - std::log1p(-p); }

}  // namespace

absl::StatusOr<double> Logit(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("logit needs p in (0, 1), but p is ", p));
  }
  return UncheckedLogit(p);
}

double InvLogit(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

LogisticDesign LogisticDesign::OneBinaryPredictor() {
  return LogisticDesign(DesignKind::kOneBinaryPredictor, {"T=0", "T=1"}, 0,
                        {{"beta0", 0}, {"beta1", 1}});
}

LogisticDesign LogisticDesign::TwoBinaryPredictors() {
  return LogisticDesign(DesignKind::kTwoBinaryPredictors,
                        {"T1=0,T2=0", "T1=1,T2=0", "T1=0,T2=1", "T1=1,T2=1"}, 0,
                        {{"beta0", 0}, {"beta1", 1}, {"beta2", 2}});
}

absl::StatusOr<LogisticDesign> LogisticDesign::Saturated(int k) {
  if (k < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("Saturated design needs at least 2 classes, got ", k));
  }
  std::vector<std::string> labels;
  std::vector<Coefficient> coefficients = {{"beta0", k - 1}};
  for (int c = 0; c < k; ++c) {
    labels.push_back(absl::StrCat("class", c + 1));
    if (c < k - 1) coefficients.push_back({absl::StrCat("beta", c + 1), c});
  }
  return LogisticDesign(DesignKind::kSaturated, std::move(labels), k - 1,
                        std::move(coefficients));
}

absl::StatusOr<std::vector<CoefficientDraws>> BetaDraws(
    std::span<const FimaDraws> cell_draws, const LogisticDesign& design) {
  if (cell_draws.size() != static_cast<size_t>(design.num_cells())) {
    return absl::InvalidArgumentError(
        absl::StrCat("Design has ", design.num_cells(), " cells, got draws for ",
                     cell_draws.size()));
  }
  const size_t h = cell_draws.front().draws.size();
  for (const FimaDraws& d : cell_draws) {
    if (d.draws.size() != h) {
      return absl::InvalidArgumentError(
          absl::StrCat("All cells need the same number of draws; got ", h,
                       " and ", d.draws.size()));
    }
    for (double p : d.draws) {
      if (!(p > 0.0 && p < 1.0)) {
        return absl::InvalidArgumentError(
            absl::StrCat("Cell draw ", p, " is outside (0, 1)"));
      }
    }
  }
  const std::vector<double>& ref =
      cell_draws[static_cast<size_t>(design.reference_cell())].draws;
  std::vector<CoefficientDraws> out;
  for (const Coefficient& coef : design.coefficients()) {
    CoefficientDraws cd{coef.name, std::vector<double>(h)};
    const std::vector<double>& cell =
        cell_draws[static_cast<size_t>(coef.cell)].draws;
    const bool intercept = coef.cell == design.reference_cell();
    for (size_t i = 0; i < h; ++i) {
      const double base = UncheckedLogit(ref[i]);
      cd.draws[i] = intercept ? base : UncheckedLogit(cell[i]) - base;
    }
    out.push_back(std::move(cd));
  }
  return out;
}

absl::StatusOr<LogisticFit> LogisticInference(
    std::span<const DpRelease> cell_releases, const LogisticDesign& design,
    const FimaConfig& config, double level, Rng& rng) {
  if (cell_releases.size() != static_cast<size_t>(design.num_cells())) {
    return absl::InvalidArgumentError(
        absl::StrCat("Design has ", design.num_cells(), " cells, got ",
                     cell_releases.size(), " releases"));
  }
  std::vector<FimaDraws> cell_draws;
  cell_draws.reserve(cell_releases.size());
  for (const DpRelease& release : cell_releases) {
    if (release.values.size() != 1) {
      return absl::InvalidArgumentError(
          "Each cell release must hold a single success count or proportion");
    }
    absl::StatusOr<std::vector<FimaDraws>> draws =
        FimaSample(release, config, rng);
    if (!draws.ok()) return draws.status();
    cell_draws.push_back(std::move(draws->front()));
  }
  absl::StatusOr<std::vector<CoefficientDraws>> betas =
      BetaDraws(cell_draws, design);
  if (!betas.ok()) return betas.status();
  LogisticFit fit;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  for (CoefficientDraws& b : *betas) {
    absl::StatusOr<ConfidenceInterval> ci =
        PercentileCi(b.draws, level, Sidedness::kTwoSided, {-kInf, kInf});
    if (!ci.ok()) return ci.status();
    fit.coefficients.push_back({b.name, *ci, std::move(b.draws)});
  }
  return fit;
}

}  // namespace fima
