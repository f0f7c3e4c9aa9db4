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

#include "fima/json_io.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fima {
namespace {

using nlohmann::json;

json Number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

double ReadNumber(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return v.get<double>();
}

template <typename T, typename Parse>
T ReadEnum(const json& j, const char* key, Parse parse) {
  auto parsed = parse(j.at(key).get<std::string>());
  if (!parsed.ok()) throw std::invalid_argument(std::string(parsed.status().message()));
  return *parsed;
}

}  // namespace

void to_json(json& j, const ConfidenceInterval& ci) {
  j = json{{"lower", Number(ci.lower)},
           {"upper", Number(ci.upper)},
           {"level", ci.level},
           {"sided", SidednessName(ci.sided)}};
}

void from_json(const json& j, ConfidenceInterval& ci) {
  ci.lower = ReadNumber(j, "lower");
  ci.upper = ReadNumber(j, "upper");
  ci.level = j.at("level").get<double>();
  ci.sided = ReadEnum<Sidedness>(j, "sided", ParseSidedness);
}

void to_json(json& j, const TestResult& r) {
  j = json{{"p_value", r.p_value},
           {"reject", r.reject},
           {"alpha", r.alpha},
           {"statistic", r.statistic ? Number(*r.statistic) : json(nullptr)},
           {"direction", DirectionName(r.direction)}};
}

void from_json(const json& j, TestResult& r) {
  r.p_value = j.at("p_value").get<double>();
  r.reject = j.at("reject").get<bool>();
  r.alpha = j.at("alpha").get<double>();
  if (j.at("statistic").is_null()) {
    r.statistic.reset();
  } else {
    r.statistic = j.at("statistic").get<double>();
  }
  r.direction = ReadEnum<Direction>(j, "direction", ParseDirection);
}

void to_json(json& j, const ExperimentRow& row) {
  j = json{{"method", row.method},       {"task", row.task},
           {"n", row.n},                 {"epsilon", Number(row.epsilon)},
           {"theta", Number(row.theta)}, {"gamma", Number(row.gamma)},
           {"metric", row.metric},       {"value", Number(row.value)},
           {"stderr", Number(row.mc_stderr)},
           {"ms", Number(row.ms)},       {"valid", row.valid}};
}

void from_json(const json& j, ExperimentRow& row) {
  row.method = j.at("method").get<std::string>();
  row.task = j.at("task").get<std::string>();
  row.n = j.at("n").get<int64_t>();
  row.epsilon = ReadNumber(j, "epsilon");
  row.theta = ReadNumber(j, "theta");
  row.gamma = ReadNumber(j, "gamma");
  row.metric = j.at("metric").get<std::string>();
  row.value = ReadNumber(j, "value");
  row.mc_stderr = ReadNumber(j, "stderr");
  row.ms = ReadNumber(j, "ms");
  row.valid = j.at("valid").get<int64_t>();
}

void to_json(json& j, const ExperimentResult& result) {
  j = json{{"rows", result.rows}};
}

void from_json(const json& j, ExperimentResult& result) {
  result.rows = j.at("rows").get<std::vector<ExperimentRow>>();
}

}  // namespace fima
