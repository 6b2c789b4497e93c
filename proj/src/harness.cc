//
// Copyright 2026 The dpit Authors
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
//

#include "dpit/harness.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "dpit/privacy.h"
#include "fmt/printf.h"
#include "text.h"

namespace dpit {
namespace {

// Path component separating the calibration stream from trial streams.
constexpr uint64_t kCalibrationStream = 0xca11b4a7e;

template <typename T>
absl::Status ParseValue(std::string_view key, std::string_view value, T& out) {
  std::optional<T> parsed = text::ParseNumber<T>(value);
  if (!parsed.has_value()) {
    return absl::InvalidArgumentError(
        fmt::sprintf("Config key '%s': cannot parse '%s'", key, value));
  }
  out = *parsed;
  return absl::OkStatus();
}

}  // namespace

std::string_view TesterIdName(TesterId id) {
  switch (id) {
    case TesterId::kPrivIt:
      return "privit";
    case TesterId::kPrivItNoised:
      return "privit_noised";
    case TesterId::kLaplacedChiSquare:
      return "laplaced_chisq";
    case TesterId::kAdkChiSquare:
      return "adk_chisq";
    case TesterId::kRepetition:
      return "repetition";
  }
  return "unknown";
}

absl::StatusOr<TesterId> ParseTesterId(std::string_view name) {
  for (TesterId id :
       {TesterId::kPrivIt, TesterId::kPrivItNoised,
        TesterId::kLaplacedChiSquare, TesterId::kAdkChiSquare,
        TesterId::kRepetition}) {
    if (name == TesterIdName(id)) return id;
  }
  return absl::InvalidArgumentError(
      fmt::sprintf("Unknown tester '%s'", name));
}

std::string_view ConstructionName(Construction construction) {
  return construction == Construction::kUniformVsPaninski
             ? "uniform_vs_paninski"
             : "two_histogram";
}

absl::StatusOr<Construction> ParseConstruction(std::string_view name) {
  if (name == "uniform_vs_paninski") return Construction::kUniformVsPaninski;
  if (name == "two_histogram") return Construction::kTwoHistogram;
  return absl::InvalidArgumentError(
      fmt::sprintf("Unknown construction '%s'", name));
}

absl::Status ExperimentConfig::Validate() const {
  if (trials < 1) {
    return absl::InvalidArgumentError(
        fmt::sprintf("trials must be at least 1, but is %d", trials));
  }
  if (!(error_target > 0.0 && error_target < 0.5)) {
    return absl::InvalidArgumentError(fmt::sprintf(
        "error_target must lie in (0, 1/2), but is %g", error_target));
  }
  if (!(alpha > 0.0 && alpha <= 1.0) || !(epsilon > 0.0)) {
    return absl::InvalidArgumentError(fmt::sprintf(
        "Need 0 < alpha <= 1 and epsilon > 0, got %g and %g", alpha, epsilon));
  }
  if (delta.has_value() && !(*delta > 0.0 && *delta < 1.0)) {
    return absl::InvalidArgumentError(
        fmt::sprintf("delta must lie in (0, 1), but is %g", *delta));
  }
  if (!(growth > 1.0) || !(relative_width > 0.0) || !(m_cap > 0.0)) {
    return absl::InvalidArgumentError("Invalid search settings");
  }
  for (int n : n_grid) {
    if (n < 2) {
      return absl::InvalidArgumentError(
          fmt::sprintf("Support sizes must be at least 2, got %d", n));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<ExperimentConfig> ParseExperimentConfig(std::string_view text) {
  ExperimentConfig config;
  for (std::string_view raw : text::SplitAny(text, "\n")) {
    std::string_view line = raw.substr(0, raw.find('#'));
    line = text::Strip(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      return absl::InvalidArgumentError(
          fmt::sprintf("Config line without '=': '%s'", line));
    }
    const std::string_view key = text::Strip(line.substr(0, eq));
    const std::string_view value =
        text::Strip(line.substr(eq + 1));
    absl::Status status;
    if (key == "tester") {
      absl::StatusOr<TesterId> id = ParseTesterId(value);
      if (!id.ok()) return id.status();
      config.tester = *id;
    } else if (key == "construction") {
      absl::StatusOr<Construction> c = ParseConstruction(value);
      if (!c.ok()) return c.status();
      config.construction = *c;
    } else if (key == "n_grid") {
      config.n_grid.clear();
      for (std::string_view item : text::SplitAny(value, ", ")) {
        std::optional<int> n = text::ParseNumber<int>(item);
        if (!n.has_value()) {
          return absl::InvalidArgumentError(
              fmt::sprintf("Config key 'n_grid': cannot parse '%s'", item));
        }
        config.n_grid.push_back(*n);
      }
    } else if (key == "alpha") {
      status = ParseValue(key, value, config.alpha);
    } else if (key == "epsilon") {
      status = ParseValue(key, value, config.epsilon);
    } else if (key == "delta") {
      double delta = 0.0;
      status = ParseValue(key, value, delta);
      config.delta = delta;
    } else if (key == "trials") {
      status = ParseValue(key, value, config.trials);
    } else if (key == "error_target") {
      status = ParseValue(key, value, config.error_target);
    } else if (key == "root_seed") {
      status = ParseValue(key, value, config.root_seed);
    } else if (key == "m_cap") {
      status = ParseValue(key, value, config.m_cap);
    } else if (key == "c0") {
      status = ParseValue(key, value, config.c0);
    } else if (key == "growth") {
      status = ParseValue(key, value, config.growth);
    } else if (key == "relative_width") {
      status = ParseValue(key, value, config.relative_width);
    } else {
      return absl::InvalidArgumentError(
          fmt::sprintf("Unknown config key '%s'", key));
    }
    if (!status.ok()) return status;
  }
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  return config;
}

absl::StatusOr<Hypotheses> BuildHypotheses(Construction construction, int n,
                                           double alpha) {
  if (construction == Construction::kUniformVsPaninski) {
    absl::StatusOr<CategoricalDistribution> alt =
        PaninskiConstruction(n, 2.0 * alpha);
    if (!alt.ok()) return alt.status();
    return Hypotheses{CategoricalDistribution::Uniform(n), *std::move(alt)};
  }
  if (n <= 10) {
    return absl::InvalidArgumentError(fmt::sprintf(
        "Two-histogram construction needs n > 10 (heavy mass 1 - 10/n), got %d",
        n));
  }
  const int heavy_count = std::max(2, n / 200);
  absl::StatusOr<CategoricalDistribution> q =
      TwoHistogramConstruction(n, heavy_count, 1.0 - 10.0 / n);
  if (!q.ok()) return q.status();
  absl::StatusOr<CategoricalDistribution> alt =
      PerturbOnHeavyToDistance(*q, alpha);
  if (!alt.ok()) return alt.status();
  return Hypotheses{*std::move(q), *std::move(alt)};
}

absl::StatusOr<double> EffectiveEpsilon(const ExperimentConfig& config) {
  if (!config.delta.has_value()) return config.epsilon;
  const double delta = *config.delta;
  absl::StatusOr<std::vector<PrivacyGuarantee>> parity =
      ParityForExperiment(config.epsilon, std::span<const double>(&delta, 1));
  if (!parity.ok()) return parity.status();
  return std::get<ApproxDp>(parity->front()).epsilon;
}

absl::StatusOr<ErrorRates> EstimateErrors(
    const Tester& tester, const CategoricalDistribution& q,
    const CategoricalDistribution& alternative, const TestParams& params,
    int trials, uint64_t stream_seed) {
  if (trials < 1) {
    return absl::InvalidArgumentError("trials must be at least 1");
  }
  int false_rejections = 0;
  int false_acceptances = 0;
  for (int t = 0; t < trials; ++t) {
    Rng null_rng(DeriveSeed(stream_seed, {static_cast<uint64_t>(t), 0}));
    absl::StatusOr<Verdict> null_verdict = tester(q, q, params, null_rng);
    if (!null_verdict.ok()) return null_verdict.status();
    if (null_verdict->rejects()) ++false_rejections;

    Rng alt_rng(DeriveSeed(stream_seed, {static_cast<uint64_t>(t), 1}));
    absl::StatusOr<Verdict> alt_verdict =
        tester(q, alternative, params, alt_rng);
    if (!alt_verdict.ok()) return alt_verdict.status();
    if (!alt_verdict->rejects()) ++false_acceptances;
  }
  return ErrorRates{static_cast<double>(false_rejections) / trials,
                    static_cast<double>(false_acceptances) / trials};
}

absl::StatusOr<Tester> MakeHarnessTester(const ExperimentConfig& config,
                                         const CategoricalDistribution& q,
                                         const TestParams& params,
                                         uint64_t calibration_seed) {
  switch (config.tester) {
    case TesterId::kPrivIt:
      return Tester(PrivIt);
    case TesterId::kAdkChiSquare:
      return Tester(AdkChiSquare);
    case TesterId::kLaplacedChiSquare:
      return Tester(LaplacedChiSquare);
    case TesterId::kPrivItNoised: {
      Rng rng(calibration_seed);
      absl::StatusOr<double> threshold =
          CalibrateNoisedThreshold(q, params, config.trials, rng);
      if (!threshold.ok()) return threshold.status();
      const double tau = *threshold;
      return Tester([tau](const CategoricalDistribution& q_,
                          const SampleSource& data, const TestParams& p,
                          Rng& r) { return PrivItNoised(q_, data, p, tau, r); });
    }
    case TesterId::kRepetition: {
      return Tester([](const CategoricalDistribution& q_,
                       const SampleSource& data, const TestParams& p, Rng& r) {
        TestParams per_dataset = p;
        per_dataset.m = p.m / RepetitionDatasetCount(p.epsilon);
        return RepetitionWrapper(Tester(AdkChiSquare), p.epsilon, q_, data,
                                 per_dataset, r);
      });
    }
  }
  return absl::InternalError("Unhandled tester id");
}

absl::StatusOr<ErrorRates> EvaluateAt(const ExperimentConfig& config,
                                      const Hypotheses& hypotheses, int n,
                                      int64_t m) {
  absl::StatusOr<double> epsilon = EffectiveEpsilon(config);
  if (!epsilon.ok()) return epsilon.status();
  TestParams params;
  params.n = n;
  params.alpha = config.alpha;
  params.epsilon = *epsilon;
  params.beta_I = config.error_target;
  params.beta_II = config.error_target;
  params.m = static_cast<double>(m);
  params.c0 = config.c0;

  const uint64_t point_seed = DeriveSeed(
      config.root_seed, {static_cast<uint64_t>(n), static_cast<uint64_t>(m)});
  absl::StatusOr<Tester> tester =
      MakeHarnessTester(config, hypotheses.q, params,
                        DeriveSeed(point_seed, {kCalibrationStream}));
  if (!tester.ok()) return tester.status();
  return EstimateErrors(*tester, hypotheses.q, hypotheses.alternative, params,
                        config.trials, point_seed);
}

absl::StatusOr<CurvePoint> FindMinSampleSize(const ExperimentConfig& config,
                                             int n) {
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  absl::StatusOr<Hypotheses> hypotheses =
      BuildHypotheses(config.construction, n, config.alpha);
  if (!hypotheses.ok()) return hypotheses.status();

  auto passes = [&](const ErrorRates& r) {
    return r.type1 <= config.error_target && r.type2 <= config.error_target;
  };

  int64_t m = std::max<int64_t>(
      1, std::llround(std::sqrt(static_cast<double>(n)) /
                      (config.alpha * config.alpha)));
  int64_t last_failing = 0;
  ErrorRates passing_rates;
  while (true) {
    if (static_cast<double>(m) > config.m_cap) {
      return absl::ResourceExhaustedError(fmt::sprintf(
          "No passing sample size up to m_cap = %g for %s at n = %d",
          config.m_cap, TesterIdName(config.tester), n));
    }
    absl::StatusOr<ErrorRates> rates = EvaluateAt(config, *hypotheses, n, m);
    if (!rates.ok()) return rates.status();
    if (passes(*rates)) {
      passing_rates = *rates;
      break;
    }
    last_failing = m;
    m = std::max<int64_t>(
        m + 1, static_cast<int64_t>(std::ceil(m * config.growth)));
  }

  int64_t lo = last_failing;
  int64_t hi = m;
  if (lo > 0) {
    while (static_cast<double>(hi - lo) >
           config.relative_width * static_cast<double>(hi)) {
      const int64_t mid = lo + (hi - lo) / 2;
      if (mid == lo || mid == hi) break;
      absl::StatusOr<ErrorRates> rates =
          EvaluateAt(config, *hypotheses, n, mid);
      if (!rates.ok()) return rates.status();
      if (passes(*rates)) {
        hi = mid;
        passing_rates = *rates;
      } else {
        lo = mid;
      }
    }
  }
  return CurvePoint{n, hi, passing_rates.type1, passing_rates.type2,
                    config.tester, config.root_seed};
}

absl::StatusOr<std::vector<CurvePoint>> RunExperiment(
    const ExperimentConfig& config) {
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  std::vector<CurvePoint> points;
  points.reserve(config.n_grid.size());
  for (int n : config.n_grid) {
    absl::StatusOr<CurvePoint> point = FindMinSampleSize(config, n);
    if (!point.ok()) return point.status();
    points.push_back(*point);
  }
  return points;
}

std::string FormatCsv(const ExperimentConfig& config,
                      const std::vector<CurvePoint>& points) {
  std::string out = std::string(kCsvHeader) + "\n";
  const std::string delta =
      config.delta.has_value() ? fmt::sprintf("%.10g", *config.delta) : "";
  for (const CurvePoint& point : points) {
    out += fmt::sprintf("%s,%d,%d,%.6f,%.6f,%.10g,%.10g,%s,%d\n",
                        TesterIdName(point.tester), point.n, point.m_min,
                        point.type1, point.type2, config.alpha, config.epsilon,
                        delta, point.seed_used);
  }
  return out;
}

}  // namespace dpit
