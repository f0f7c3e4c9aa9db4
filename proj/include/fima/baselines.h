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

// Classical non-private procedures the experiments compare against. They
// see the raw counts.

#ifndef FIMA_BASELINES_H_
#define FIMA_BASELINES_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "fima/chisq.h"
#include "fima/inference.h"

namespace fima {

// Wald interval p +/- z * sqrt(p (1 - p) / n). Degenerates to [p, p] when
// x is 0 or n.
absl::StatusOr<ConfidenceInterval> NpZCi(int64_t x, int64_t n, double level);

// One-sided z test of H_0 against `direction` using the Wald standard error.
// With zero standard error (x in {0, n}) the p-value is 0 when p_hat lies
// strictly on the alternative side of gamma and 1 otherwise.
absl::StatusOr<TestResult> NpZTestOne(int64_t x, int64_t n, double gamma,
                                      Direction direction, double alpha);

// Clopper-Pearson interval from Beta quantiles.
absl::StatusOr<ConfidenceInterval> ExactBinomialCi(int64_t x, int64_t n,
                                                   double level);

// Exact one-sided binomial test: P(X <= x | gamma) for kLess,
// P(X >= x | gamma) for kGreater.
absl::StatusOr<TestResult> ExactBinomialTestOne(int64_t x, int64_t n,
                                                double gamma,
                                                Direction direction,
                                                double alpha);

// Pooled two-proportion z test of theta1 - theta2 against 0.
absl::StatusOr<TestResult> NpTwoSampleZ(int64_t x1, int64_t n1, int64_t x2,
                                        int64_t n2, Direction direction,
                                        double alpha);

// Pearson chi-square test of independence with the asymptotic
// chi-square((r-1)(c-1)) p-value. Fails when any expected count is zero.
absl::StatusOr<TestResult> NpChisqTest(const ContingencyTable& table,
                                       double alpha);

}  // namespace fima

#endif  // FIMA_BASELINES_H_
