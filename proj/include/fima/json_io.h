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

// nlohmann::json conversions for result types. Non-finite doubles are
// written as null and read back as NaN.

#ifndef FIMA_JSON_IO_H_
#define FIMA_JSON_IO_H_

#include "fima/harness.h"
#include "fima/inference.h"
#include "json.hpp"

namespace fima {

void to_json(nlohmann::json& j, const ConfidenceInterval& ci);
void from_json(const nlohmann::json& j, ConfidenceInterval& ci);

void to_json(nlohmann::json& j, const TestResult& r);
void from_json(const nlohmann::json& j, TestResult& r);

void to_json(nlohmann::json& j, const ExperimentRow& row);
void from_json(const nlohmann::json& j, ExperimentRow& row);

void to_json(nlohmann::json& j, const ExperimentResult& result);
void from_json(const nlohmann::json& j, ExperimentResult& result);

}  // namespace fima

#endif  // FIMA_JSON_IO_H_
