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

#include "cli.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "fima/baselines.h"
#include "fima/chisq.h"
#include "fima/fima_core.h"
#include "fima/harness.h"
#include "fima/inference.h"
#include "fima/json_io.h"
#include "fima/logistic.h"
#include "fima/mechanisms.h"
#include "fima/rng.h"
#include "json.hpp"

namespace fima::cli {
namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RuntimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename T>
T Unwrap(absl::StatusOr<T> v) {
  if (!v.ok()) throw RuntimeError(v.status().ToString());
  return *std::move(v);
}

struct Common {
  double epsilon = 1.0;
  std::string family = "laplace";
  int64_t draws = 10000;
  double level = 0.95;
  double alpha = 0.05;
  uint64_t seed = 1;
  double delta = kDefaultDelta;
  std::string out = "json";
  std::string role = "analyst";
  std::string method = "beta";
  int workers = 1;
  bool human = false;

  NoiseFamily Family() const {
    absl::StatusOr<NoiseFamily> f = ParseNoiseFamily(family);
    if (!f.ok()) throw UsageError(std::string(f.status().message()));
    return *f;
  }
  bool Curator() const { return role == "curator"; }
  FimaConfig Config() const {
    FimaConfig c;
    c.draws = draws;
    c.delta = delta;
    c.method = method == "order-statistic" ? FimaMethod::kOrderStatistic
                                           : FimaMethod::kBetaShortcut;
    c.workers = workers;
    return c;
  }
  Rng PrivatizeRng() const { return Rng::ForStream(seed, {kPrivatizeStream}); }
  Rng InferenceRng() const { return Rng::ForStream(seed, {kInferenceStream}); }
  json Header(std::string_view command) const {
    return json{{"command", command}, {"seed", seed},
                {"role", role},       {"epsilon", epsilon},
                {"family", family},   {"H", draws}};
  }
};

// ---------------------------------------------------------------------------
// Output

void Flatten(const json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& cells) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      Flatten(*it, key, cells);
    } else if (it->is_string()) {
      cells.emplace_back(key, it->get<std::string>());
    } else {
      cells.emplace_back(key, it->dump());
    }
  }
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

void Emit(const json& j, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << j.dump(2) << "\n";
    return;
  }
  std::vector<std::pair<std::string, std::string>> cells;
  Flatten(j, "", cells);
  if (format == "plain") {
    for (const auto& [k, v] : cells) out << k << ": " << v << "\n";
    return;
  }
  for (size_t i = 0; i < cells.size(); ++i) {
    out << (i ? "," : "") << CsvField(cells[i].first);
  }
  out << "\n";
  for (size_t i = 0; i < cells.size(); ++i) {
    out << (i ? "," : "") << CsvField(cells[i].second);
  }
  out << "\n";
}

json DrawSummary(std::vector<double> draws) {
  double sum = 0.0;
  for (double d : draws) sum += d;
  const double n = static_cast<double>(draws.size());
  const double mean = sum / n;
  double ss = 0.0;
  for (double d : draws) ss += (d - mean) * (d - mean);
  const size_t mid = draws.size() / 2;
  std::nth_element(draws.begin(), draws.begin() + static_cast<long>(mid),
                   draws.end());
  double median = draws[mid];
  if (draws.size() % 2 == 0) {
    median = (median + *std::max_element(draws.begin(),
                                         draws.begin() + static_cast<long>(mid))) /
             2.0;
  }
  return json{{"mean", mean},
              {"sd", draws.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0},
              {"median", median},
              {"count", draws.size()}};
}

void Merge(json& into, const json& from) {
  for (auto it = from.begin(); it != from.end(); ++it) into[it.key()] = *it;
}

// ---------------------------------------------------------------------------
// Inputs

// A single proportion (or noisy count) that FIMA inverts.
struct ProportionInput {
  std::optional<double> pi_hat;
  std::optional<double> x_hat;
  std::optional<int64_t> x;
  int64_t n = 0;
};

void AddProportionOptions(CLI::App* cmd, ProportionInput& in,
                          const std::string& suffix = "") {
  cmd->add_option("--pi-hat" + suffix, in.pi_hat,
                  "Privatized proportion (analyst)");
  cmd->add_option("--x-hat" + suffix, in.x_hat,
                  "Privatized success count (analyst)");
  cmd->add_option("--x" + suffix, in.x, "Raw success count (curator)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--n" + suffix, in.n, "Sample size")
      ->required()
      ->check(CLI::PositiveNumber);
}

struct Released {
  double value;  // proportion or count, per `kind`
  ReleaseKind kind;
  PrivacyParams params;
  int64_t n;
};

Released ResolveProportion(const Common& c, const ProportionInput& in,
                           double epsilon, Rng& privatize_rng,
                           const std::string& suffix = "") {
  const NoiseFamily family = c.Family();
  if (c.Curator()) {
    if (!in.x || in.pi_hat || in.x_hat) {
      throw UsageError(absl::StrCat("--role curator takes --x", suffix,
                                    " (raw count), not privatized values"));
    }
    if (*in.x > in.n) {
      throw UsageError(absl::StrCat("--x", suffix, " must not exceed --n",
                                    suffix));
    }
    PrivacyParams params =
        Unwrap(PrivacyParams::ForProportion(epsilon, in.n, family));
    const double p = static_cast<double>(*in.x) / static_cast<double>(in.n);
    DpRelease r = Unwrap(PrivatizeProportions(std::span<const double>(&p, 1),
                                              in.n, params, privatize_rng));
    return {r.values.front(), ReleaseKind::kProportion, params, in.n};
  }
  if (in.x) {
    throw UsageError(absl::StrCat("--x", suffix,
                                  " is raw data; use --role curator"));
  }
  if (in.pi_hat.has_value() == in.x_hat.has_value()) {
    throw UsageError(absl::StrCat("--role analyst takes exactly one of --pi-hat",
                                  suffix, " or --x-hat", suffix));
  }
  if (in.pi_hat) {
    return {*in.pi_hat, ReleaseKind::kProportion,
            Unwrap(PrivacyParams::ForProportion(epsilon, in.n, family)), in.n};
  }
  return {*in.x_hat, ReleaseKind::kCount,
          Unwrap(PrivacyParams::ForCount(epsilon, family)), in.n};
}

FimaDraws SampleReleased(const Released& r, const FimaConfig& config,
                         Rng& rng) {
  if (r.kind == ReleaseKind::kProportion) {
    return Unwrap(FimaSampleProportion(r.value, r.n, r.params, config, rng));
  }
  return Unwrap(FimaSampleFromCount(r.value, r.n, r.params, config, rng));
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError(absl::StrCat("Cannot open input file '", path, "'"));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void CheckLevel(double v, const std::string& flag) {
  if (!(v > 0.0 && v < 1.0)) {
    throw UsageError(absl::StrCat(flag, " must lie in (0, 1), got ", v));
  }
}

// ---------------------------------------------------------------------------
// Subcommands

json CmdPrivatize(const Common& c, const std::vector<int64_t>& counts,
                  std::optional<int64_t> n, const std::string& kind,
                  double sensitivity) {
  if (!c.Curator()) {
    throw UsageError("privatize needs raw data; pass --role curator");
  }
  if (counts.empty()) throw UsageError("privatize needs --counts");
  Rng rng = c.PrivatizeRng();
  json j = c.Header("privatize");
  DpRelease release = [&] {
    if (kind == "proportion") {
      if (!n) throw UsageError("--kind proportion needs --n");
      std::vector<double> props;
      for (int64_t x : counts) {
        if (x > *n) throw UsageError("Counts must not exceed --n");
        props.push_back(static_cast<double>(x) / static_cast<double>(*n));
      }
      PrivacyParams params =
          Unwrap(PrivacyParams::ForProportion(c.epsilon, *n, c.Family()));
      return Unwrap(PrivatizeProportions(props, *n, params, rng));
    }
    PrivacyParams params =
        Unwrap(PrivacyParams::ForCount(c.epsilon, c.Family(), sensitivity));
    return Unwrap(PrivatizeCounts(counts, params, rng, n.value_or(0)));
  }();
  j["kind"] = kind;
  j["n"] = release.n;
  j["sensitivity"] = release.params.sensitivity();
  j["values"] = release.values;
  j.erase("H");
  return j;
}

json CmdCi(const Common& c, const ProportionInput& in,
           const std::string& sided_name) {
  CheckLevel(c.level, "--level");
  absl::StatusOr<Sidedness> sided = ParseSidedness(sided_name);
  if (!sided.ok()) throw UsageError(std::string(sided.status().message()));
  Rng prng = c.PrivatizeRng();
  const Released r = ResolveProportion(c, in, c.epsilon, prng);
  Rng rng = c.InferenceRng();
  FimaDraws draws = SampleReleased(r, c.Config(), rng);
  ConfidenceInterval ci =
      Unwrap(PercentileCi(draws.draws, c.level, *sided, UnitRange(c.delta)));
  json j = c.Header("ci");
  j["n"] = r.n;
  j[r.kind == ReleaseKind::kProportion ? "pi_hat" : "x_hat"] = r.value;
  Merge(j, json(ci));
  j["draws"] = DrawSummary(std::move(draws.draws));
  return j;
}

json CmdTestOne(const Common& c, const ProportionInput& in, double gamma,
                const std::string& direction_name) {
  CheckLevel(c.alpha, "--alpha");
  absl::StatusOr<Direction> direction = ParseDirection(direction_name);
  if (!direction.ok()) {
    throw UsageError(std::string(direction.status().message()));
  }
  Rng prng = c.PrivatizeRng();
  const Released r = ResolveProportion(c, in, c.epsilon, prng);
  Rng rng = c.InferenceRng();
  FimaDraws draws = SampleReleased(r, c.Config(), rng);
  TestResult result =
      Unwrap(OneSampleTest(draws.draws, gamma, *direction, c.alpha));
  json j = c.Header("test-one");
  j["n"] = r.n;
  j[r.kind == ReleaseKind::kProportion ? "pi_hat" : "x_hat"] = r.value;
  j["gamma"] = gamma;
  Merge(j, json(result));
  return j;
}

json CmdTestTwo(const Common& c, const ProportionInput& in1,
                const ProportionInput& in2, bool split,
                const std::string& direction_name) {
  CheckLevel(c.alpha, "--alpha");
  absl::StatusOr<Direction> direction = ParseDirection(direction_name);
  if (!direction.ok()) {
    throw UsageError(std::string(direction.status().message()));
  }
  const double eps = split ? c.epsilon / 2.0 : c.epsilon;
  Rng prng = c.PrivatizeRng();
  const Released r1 = ResolveProportion(c, in1, eps, prng, "1");
  const Released r2 = ResolveProportion(c, in2, eps, prng, "2");
  Rng rng = c.InferenceRng();
  FimaDraws d1 = SampleReleased(r1, c.Config(), rng);
  FimaDraws d2 = SampleReleased(r2, c.Config(), rng);
  TestResult result =
      Unwrap(TwoSampleTest(d1.draws, d2.draws, *direction, c.alpha));
  json j = c.Header("test-two");
  j["epsilon_per_release"] = eps;
  j["n1"] = r1.n;
  j["n2"] = r2.n;
  j["release1"] = r1.value;
  j["release2"] = r2.value;
  Merge(j, json(result));
  return j;
}

json CmdChisq(const Common& c, const std::string& input,
              std::optional<int64_t> n) {
  CheckLevel(c.alpha, "--alpha");
  if (input.empty()) throw UsageError("chisq needs --input FILE");
  absl::StatusOr<ContingencyTable> parsed =
      ParseTableCsv(ReadFile(input), c.Curator());
  if (!parsed.ok()) {
    throw UsageError(absl::StrCat(input, ": ", parsed.status().message()));
  }
  ContingencyTable table = *std::move(parsed);
  if (c.Curator()) {
    Rng prng = c.PrivatizeRng();
    table = Unwrap(PrivatizeTable(table, c.epsilon, c.Family(), prng));
  } else {
    if (!n) throw UsageError("--role analyst needs --n (total sample size)");
    std::span<const double> cells = table.cells();
    table = Unwrap(ContingencyTable::Create(
        table.rows(), table.cols(), {cells.begin(), cells.end()}, *n));
  }
  Rng rng = c.InferenceRng();
  ChisqOptions options{c.epsilon, c.Family(), c.alpha};
  ChisqTestOutput out =
      Unwrap(FimaChisqTest(table, options, c.Config(), rng));
  json j = c.Header("chisq");
  j["rows"] = table.rows();
  j["cols"] = table.cols();
  j["n"] = table.n();
  Merge(j, json(out.result));
  return j;
}

json CmdLogit(const Common& c, const std::string& design_name, int k,
              const std::vector<double>& pi_hats,
              const std::vector<int64_t>& xs, std::vector<int64_t> ns) {
  CheckLevel(c.level, "--level");
  LogisticDesign design = [&] {
    if (design_name == "one") return LogisticDesign::OneBinaryPredictor();
    if (design_name == "two") return LogisticDesign::TwoBinaryPredictors();
    if (design_name == "saturated") {
      absl::StatusOr<LogisticDesign> d = LogisticDesign::Saturated(k);
      if (!d.ok()) throw UsageError(std::string(d.status().message()));
      return *d;
    }
    throw UsageError("--design must be one, two or saturated");
  }();
  const size_t cells = static_cast<size_t>(design.num_cells());
  if (ns.size() == 1) ns.assign(cells, ns.front());
  if (ns.size() != cells) {
    throw UsageError(absl::StrCat("--ns needs 1 or ", cells, " values"));
  }
  Rng prng = c.PrivatizeRng();
  std::vector<DpRelease> releases;
  for (size_t i = 0; i < cells; ++i) {
    ProportionInput in;
    in.n = ns[i];
    if (in.n < 1) throw UsageError("--ns values must be positive");
    if (c.Curator()) {
      if (xs.size() != cells) {
        throw UsageError(absl::StrCat("--xs needs ", cells, " values"));
      }
      in.x = xs[i];
    } else {
      if (pi_hats.size() != cells) {
        throw UsageError(absl::StrCat("--pi-hats needs ", cells, " values"));
      }
      in.pi_hat = pi_hats[i];
    }
    const Released r = ResolveProportion(c, in, c.epsilon, prng);
    releases.push_back(DpRelease{{r.value}, r.n, r.params, r.kind});
  }
  Rng rng = c.InferenceRng();
  LogisticFit fit =
      Unwrap(LogisticInference(releases, design, c.Config(), c.level, rng));
  json j = c.Header("logit");
  j["design"] = design_name;
  json coefficients = json::array();
  for (CoefficientEstimate& e : fit.coefficients) {
    json cj = e.ci;
    cj["name"] = e.name;
    cj["draws"] = DrawSummary(std::move(e.draws));
    coefficients.push_back(std::move(cj));
  }
  j["coefficients"] = std::move(coefficients);
  return j;
}

struct BenchArgs {
  std::string task = "one-sample-ci";
  std::string preset = "desk";
  std::string csv_path;
  std::string json_path;
  std::optional<int64_t> replications;
};

void CmdBench(const Common& c, const BenchArgs& b, bool draws_set,
              bool out_set, std::ostream& out, std::ostream& err) {
  if (b.preset != "desk" && b.preset != "full") {
    throw UsageError("--preset must be desk or full");
  }
  absl::StatusOr<ExperimentSpec> spec_or =
      PresetSpec(b.task, b.preset == "full");
  if (!spec_or.ok()) throw UsageError(std::string(spec_or.status().message()));
  ExperimentSpec spec = *std::move(spec_or);
  spec.seed = c.seed;
  spec.workers = c.workers;
  spec.family = c.Family();
  spec.fima.delta = c.delta;
  if (draws_set) spec.fima.draws = c.draws;
  if (b.replications) spec.replications = *b.replications;
  ExperimentResult result = Unwrap(RunExperiment(spec));
  if (!b.csv_path.empty()) {
    std::ofstream f(b.csv_path);
    if (!f) throw RuntimeError(absl::StrCat("Cannot write ", b.csv_path));
    WriteCsv(result, f);
  }
  json doc = ToJson(result);
  doc["seed"] = c.seed;
  doc["task"] = b.task;
  doc["preset"] = b.preset;
  if (!b.json_path.empty()) {
    std::ofstream f(b.json_path);
    if (!f) throw RuntimeError(absl::StrCat("Cannot write ", b.json_path));
    f << doc.dump(2) << "\n";
  }
  if (!out_set || c.out == "csv") {
    err << "seed: " << c.seed << "\n";
    WriteCsv(result, out);
  } else if (c.out == "json") {
    out << doc.dump(2) << "\n";
  } else {
    err << "seed: " << c.seed << "\n";
    for (const ExperimentRow& r : result.rows) {
      out << r.method << " n=" << r.n << " theta=" << r.theta
          << " gamma=" << r.gamma << " " << r.metric << "=" << r.value
          << " (se " << r.mc_stderr << ", " << r.ms << " ms)\n";
    }
  }
}

// Worked examples on public HIV surveillance counts.
json CmdApps(const Common& c, const std::string& which) {
  const FimaConfig base = c.Config();
  json j{{"command", "apps"}, {"seed", c.seed}, {"which", which}};
  auto hiv_one = [&] {
    constexpr int64_t kX = 232, kN = 374;
    constexpr double kGamma = 0.7, kEps = 1.0;
    FimaConfig config = base;
    config.draws = 10000;
    Rng prng = c.PrivatizeRng();
    PrivacyParams params =
        Unwrap(PrivacyParams::ForProportion(kEps, kN, NoiseFamily::kLaplace));
    const double p = static_cast<double>(kX) / kN;
    const double pi_hat = Unwrap(PrivatizeProportions(
                                     std::span<const double>(&p, 1), kN,
                                     params, prng))
                              .values.front();
    Rng rng = c.InferenceRng();
    FimaDraws draws =
        Unwrap(FimaSampleProportion(pi_hat, kN, params, config, rng));
    TestResult test =
        Unwrap(OneSampleTest(draws.draws, kGamma, Direction::kLess, 0.05));
    ConfidenceInterval ci =
        Unwrap(PercentileCi(draws.draws, 0.95, Sidedness::kTwoSided));
    TestResult np = Unwrap(NpZTestOne(kX, kN, kGamma, Direction::kLess, 0.05));
    ConfidenceInterval np_ci = Unwrap(NpZCi(kX, kN, 0.95));
    return json{{"x", kX},          {"n", kN},          {"gamma", kGamma},
                {"epsilon", kEps},  {"H", config.draws}, {"pi_hat", pi_hat},
                {"test", test},     {"ci", ci},         {"np_test", np},
                {"np_ci", np_ci}};
  };
  auto hiv_two = [&](double eps, uint64_t seed) {
    constexpr int64_t kX1 = 9374, kX2 = 8831, kN = 37981;
    FimaConfig config = base;
    config.draws = 1000;
    Rng prng = Rng::ForStream(seed, {kPrivatizeStream});
    PrivacyParams params = Unwrap(
        PrivacyParams::ForProportion(eps / 2.0, kN, NoiseFamily::kLaplace));
    const std::vector<double> props = {static_cast<double>(kX1) / kN,
                                       static_cast<double>(kX2) / kN};
    DpRelease r = Unwrap(PrivatizeProportions(props, kN, params, prng));
    Rng rng = Rng::ForStream(seed, {kInferenceStream});
    std::vector<FimaDraws> draws = Unwrap(FimaSample(r, config, rng));
    TestResult test = Unwrap(TwoSampleTest(draws[0].draws, draws[1].draws,
                                           Direction::kGreater, 0.05));
    return json{{"epsilon", eps},
                {"pi_hat1", r.values[0]},
                {"pi_hat2", r.values[1]},
                {"test", test}};
  };
  if (which == "hiv-one" || which == "all") j["hiv_one"] = hiv_one();
  if (which == "hiv-two" || which == "all") {
    json two = hiv_two(0.1, c.seed);
    two["x1"] = 9374;
    two["x2"] = 8831;
    two["n"] = 37981;
    two["np_test"] =
        Unwrap(NpTwoSampleZ(9374, 37981, 8831, 37981, Direction::kGreater, 0.05));
    j["hiv_two"] = std::move(two);
  }
  if (which == "hiv-sweep" || which == "all") {
    json sweep = json::array();
    for (double eps : {0.001, 0.01, 0.1, 0.5, 1.0, 3.0, 5.0, 10.0}) {
      sweep.push_back(hiv_two(eps, c.seed));
    }
    j["hiv_sweep"] = std::move(sweep);
  }
  if (j.size() == 3) {
    throw UsageError("--which must be hiv-one, hiv-two, hiv-sweep or all");
  }
  return j;
}

}  // namespace

absl::StatusOr<ContingencyTable> ParseTableCsv(std::string_view text,
                                               bool integers) {
  std::vector<std::vector<double>> rows;
  int line_no = 0;
  bool first_content_row = true;
  for (absl::string_view line :
       absl::StrSplit(absl::string_view(text.data(), text.size()), '\n')) {
    ++line_no;
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    std::vector<absl::string_view> fields = absl::StrSplit(line, ',');
    std::vector<double> values;
    bool numeric = true;
    int bad_col = 0;
    for (size_t i = 0; i < fields.size(); ++i) {
      double v;
      if (!absl::SimpleAtod(absl::StripAsciiWhitespace(fields[i]), &v) ||
          !std::isfinite(v)) {
        numeric = false;
        bad_col = static_cast<int>(i) + 1;
        break;
      }
      values.push_back(v);
    }
    if (!numeric) {
      if (first_content_row) {
        first_content_row = false;
        continue;  // header
      }
      return absl::InvalidArgumentError(
          absl::StrCat("row ", line_no, ", column ", bad_col, ": '",
                       fields[static_cast<size_t>(bad_col - 1)],
                       "' is not a number"));
    }
    first_content_row = false;
    if (!rows.empty() && values.size() != rows.front().size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", line_no, ": expected ", rows.front().size(),
                       " columns, found ", values.size()));
    }
    if (integers) {
      for (size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0.0 || values[i] != std::floor(values[i])) {
          return absl::InvalidArgumentError(
              absl::StrCat("row ", line_no, ", column ", i + 1, ": '",
                           values[i], "' is not a nonnegative integer count"));
        }
      }
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) return absl::InvalidArgumentError("table has no data rows");
  std::vector<double> cells;
  double total = 0.0;
  for (const std::vector<double>& r : rows) {
    for (double v : r) {
      cells.push_back(v);
      total += v;
    }
  }
  const int64_t n = static_cast<int64_t>(std::llround(std::max(total, 0.0)));
  return ContingencyTable::Create(static_cast<int>(rows.size()),
                                  static_cast<int>(rows.front().size()),
                                  std::move(cells), n);
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Inference on differentially private categorical data", "fima"};
  app.require_subcommand(1);
  app.fallthrough();

  Common c;
  app.add_option("--epsilon", c.epsilon, "Privacy budget")
      ->check(CLI::PositiveNumber);
  app.add_option("--family", c.family, "Noise family")
      ->check(CLI::IsMember({"laplace", "gaussian", "dlaplace"}));
  app.add_option("--H", c.draws, "Number of fiducial draws")
      ->check(CLI::PositiveNumber);
  app.add_option("--level", c.level, "Confidence level");
  app.add_option("--alpha", c.alpha, "Significance level");
  app.add_option("--seed", c.seed, "Random seed");
  app.add_option("--delta", c.delta, "Boundary clamp for draws")
      ->check(CLI::Range(0.0, 0.5));
  CLI::Option* out_opt =
      app.add_option("--out", c.out, "Output format")
          ->check(CLI::IsMember({"json", "csv", "plain"}));
  app.add_option("--role", c.role, "analyst: privatized inputs; curator: raw")
      ->check(CLI::IsMember({"analyst", "curator"}));
  app.add_option("--method", c.method, "FIMA sampler")
      ->check(CLI::IsMember({"beta", "order-statistic"}));
  app.add_option("--workers", c.workers, "Worker threads")
      ->check(CLI::PositiveNumber);
  app.add_flag("--human", c.human, "Also print a plain summary to stderr");
  CLI::Option* draws_opt = app.get_option("--H");

  std::function<json()> run;
  std::function<void()> run_raw;

  // privatize
  std::vector<int64_t> counts;
  std::optional<int64_t> priv_n;
  std::string kind = "proportion";
  double sensitivity = 1.0;
  CLI::App* privatize = app.add_subcommand("privatize", "Release statistics");
  privatize->add_option("--counts", counts, "Raw counts")
      ->delimiter(',')
      ->check(CLI::NonNegativeNumber);
  privatize->add_option("--n", priv_n, "Sample size")
      ->check(CLI::PositiveNumber);
  privatize->add_option("--kind", kind, "proportion or count")
      ->check(CLI::IsMember({"proportion", "count"}));
  privatize->add_option("--sensitivity", sensitivity,
                        "Count sensitivity (2 for a full table)")
      ->check(CLI::PositiveNumber);
  privatize->callback(
      [&] { run = [&] { return CmdPrivatize(c, counts, priv_n, kind, sensitivity); }; });

  // ci
  ProportionInput ci_in;
  std::string sided = "two";
  CLI::App* ci = app.add_subcommand("ci", "Confidence interval");
  AddProportionOptions(ci, ci_in);
  ci->add_option("--sided", sided, "two, lower or upper");
  ci->callback([&] { run = [&] { return CmdCi(c, ci_in, sided); }; });

  // test-one
  ProportionInput t1_in;
  double gamma = 0.5;
  std::string direction = "less";
  CLI::App* test_one = app.add_subcommand("test-one", "One-sample test");
  AddProportionOptions(test_one, t1_in);
  test_one->add_option("--gamma", gamma, "Null value")->required();
  test_one->add_option("--direction", direction,
                       "less: H_0 theta >= gamma; greater: H_0 theta <= gamma");
  test_one->callback(
      [&] { run = [&] { return CmdTestOne(c, t1_in, gamma, direction); }; });

  // test-two
  ProportionInput t2_in1, t2_in2;
  bool split = false;
  std::string direction2 = "less";
  CLI::App* test_two = app.add_subcommand("test-two", "Two-sample test");
  AddProportionOptions(test_two, t2_in1, "1");
  AddProportionOptions(test_two, t2_in2, "2");
  test_two->add_flag("--split-epsilon", split,
                     "Each sample is released at epsilon/2");
  test_two->add_option("--direction", direction2,
                       "less: H_0 theta1 >= theta2; greater: H_0 theta1 <= "
                       "theta2");
  test_two->callback([&] {
    run = [&] { return CmdTestTwo(c, t2_in1, t2_in2, split, direction2); };
  });

  // chisq
  std::string input;
  std::optional<int64_t> chisq_n;
  CLI::App* chisq = app.add_subcommand("chisq", "Independence test");
  chisq->add_option("--input", input, "CSV contingency table");
  chisq->add_option("--n", chisq_n, "Total sample size (analyst)")
      ->check(CLI::PositiveNumber);
  chisq->callback([&] { run = [&] { return CmdChisq(c, input, chisq_n); }; });

  // logit
  std::string design = "one";
  int k = 2;
  std::vector<double> pi_hats;
  std::vector<int64_t> xs, ns;
  CLI::App* logit = app.add_subcommand("logit", "Logistic coefficients");
  logit->add_option("--design", design, "one, two or saturated");
  logit->add_option("--k", k, "Classes for --design saturated");
  logit->add_option("--pi-hats", pi_hats, "Privatized cell proportions")
      ->delimiter(',');
  logit->add_option("--xs", xs, "Raw cell success counts")->delimiter(',');
  logit->add_option("--ns", ns, "Cell sizes")->delimiter(',')->required();
  logit->callback([&] {
    run = [&] { return CmdLogit(c, design, k, pi_hats, xs, ns); };
  });

  // bench
  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "Monte Carlo experiments");
  bench->add_option("--task", bench_args.task, "Preset name")
      ->check(CLI::IsMember(PresetNames()));
  bench->add_option("--preset", bench_args.preset, "desk or full");
  bench->add_option("--csv", bench_args.csv_path, "Write CSV here");
  bench->add_option("--json", bench_args.json_path, "Write JSON here");
  bench->add_option("--B", bench_args.replications, "Replications")
      ->check(CLI::PositiveNumber);
  bench->callback([&] {
    run_raw = [&] {
      CmdBench(c, bench_args, draws_opt->count() > 0, out_opt->count() > 0,
               out, err);
    };
  });

  // apps
  std::string which = "all";
  CLI::App* apps = app.add_subcommand("apps", "HIV examples");
  apps->add_option("--which", which, "hiv-one, hiv-two, hiv-sweep or all");
  apps->callback([&] { run = [&] { return CmdApps(c, which); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run_raw) {
      run_raw();
    } else {
      json j = run();
      Emit(j, c.out, out);
      if (c.human) Emit(j, "plain", err);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const RuntimeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace fima::cli
