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

// Plug-in inference for saturated logistic models with categorical
// predictors. Each predictor cell's success probability gets its own
// fiducial draws; coefficients are logit transforms of those draws:
//   beta_0 = logit(theta_ref),  beta_k = logit(theta_k) - logit(theta_ref).

#ifndef FIMA_LOGISTIC_H_
#define FIMA_LOGISTIC_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "fima/fima_core.h"
#include "fima/inference.h"
#include "fima/mechanisms.h"
#include "fima/rng.h"

namespace fima {

absl::StatusOr<double> Logit(double p);
double InvLogit(double x);

enum class DesignKind { kOneBinaryPredictor, kTwoBinaryPredictors, kSaturated };

// A coefficient is logit(theta_cell) - logit(theta_ref), or logit(theta_ref)
// alone for the intercept (cell == reference).
struct Coefficient {
  std::string name;
  int cell;
};

class LogisticDesign {
 public:
  // Cells T=0, T=1; reference T=0.
  static LogisticDesign OneBinaryPredictor();
  // Cells (T1,T2) = (0,0), (1,0), (0,1), (1,1); reference (0,0). The additive
  // model's beta_1 and beta_2 come from cells (1,0) and (0,1); cell (1,1) is
  // not used by the plug-in.
  static LogisticDesign TwoBinaryPredictors();
  // K classes, last class is the reference.
  static absl::StatusOr<LogisticDesign> Saturated(int k);

  DesignKind kind() const { return kind_; }
  const std::vector<std::string>& cell_labels() const { return cell_labels_; }
  int reference_cell() const { return reference_cell_; }
  int num_cells() const { return static_cast<int>(cell_labels_.size()); }
  const std::vector<Coefficient>& coefficients() const { return coefficients_; }

 private:
  LogisticDesign(DesignKind kind, std::vector<std::string> labels,
                 int reference, std::vector<Coefficient> coefficients)
      : kind_(kind),
        cell_labels_(std::move(labels)),
        reference_cell_(reference),
        coefficients_(std::move(coefficients)) {}

  DesignKind kind_;
  std::vector<std::string> cell_labels_;
  int reference_cell_;
  std::vector<Coefficient> coefficients_;
};

struct CoefficientDraws {
  std::string name;
  std::vector<double> draws;
};

// Maps per-cell draws (indexed by cell, equal H) to coefficient draws.
absl::StatusOr<std::vector<CoefficientDraws>> BetaDraws(
    std::span<const FimaDraws> cell_draws, const LogisticDesign& design);

struct CoefficientEstimate {
  std::string name;
  ConfidenceInterval ci;
  std::vector<double> draws;
};

struct LogisticFit {
  std::vector<CoefficientEstimate> coefficients;
};

// One privatized success count (or proportion) per cell, each released
// independently. Runs the sampler per cell, transforms, and reports
// two-sided percentile intervals at `level`.
absl::StatusOr<LogisticFit> LogisticInference(
    std::span<const DpRelease> cell_releases, const LogisticDesign& design,
    const FimaConfig& config, double level, Rng& rng);

}  // namespace fima

#endif  // FIMA_LOGISTIC_H_
