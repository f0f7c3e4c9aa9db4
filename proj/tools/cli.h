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

// Command-line front end. Subcommands:
//   privatize  release a proportion or count vector (curator only)
//   ci         percentile interval for one proportion
//   test-one   one-sample test of H_0: theta >= gamma (or <=)
//   test-two   two-sample test of theta1 - theta2 against 0
//   chisq      independence test for a CSV contingency table
//   logit      logistic coefficients from per-cell releases
//   bench      Monte Carlo presets, CSV/JSON output
//   apps       worked HIV examples
//
// --role analyst (default) takes already-privatized statistics; --role
// curator takes raw counts, privatizes them, then infers. Randomness is a
// pure function of --seed: the curator's noise uses stream (seed, 1) and
// inference uses stream (seed, 2).
//
// Exit codes: 0 ok, 1 runtime failure, 2 usage error.

#ifndef FIMA_TOOLS_CLI_H_
#define FIMA_TOOLS_CLI_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "fima/chisq.h"

namespace fima::cli {

inline constexpr uint64_t kPrivatizeStream = 1;
inline constexpr uint64_t kInferenceStream = 2;

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

// Parses a comma-separated numeric grid. A first row with any non-numeric
// cell is taken as a header. Errors name the 1-based row and column. With
// `integers`, every cell must be a nonnegative integer and n is their sum;
// otherwise n is the rounded total, clamped at 0.
absl::StatusOr<ContingencyTable> ParseTableCsv(std::string_view text,
                                               bool integers);

}  // namespace fima::cli

#endif  // FIMA_TOOLS_CLI_H_
