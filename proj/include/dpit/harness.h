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

#ifndef DPIT_HARNESS_H_
#define DPIT_HARNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "dpit/distributions.h"
#include "dpit/testers.h"

namespace dpit {

enum class TesterId {
  kPrivIt,
  kPrivItNoised,
  kLaplacedChiSquare,
  kAdkChiSquare,
  kRepetition,
};

enum class Construction { kUniformVsPaninski, kTwoHistogram };

std::string_view TesterIdName(TesterId id);
absl::StatusOr<TesterId> ParseTesterId(std::string_view name);
std::string_view ConstructionName(Construction construction);
absl::StatusOr<Construction> ParseConstruction(std::string_view name);

struct ExperimentConfig {
  TesterId tester = TesterId::kPrivIt;
  std::vector<int> n_grid;
  double alpha = 0.1;
  double epsilon = 0.1;
  // When set, the tester runs at the pure-DP budget whose approximate-DP
  // guarantee matches eps^2/2-zCDP at this delta.
  std::optional<double> delta;
  int trials = 1000;
  double error_target = 1.0 / 3.0;
  uint64_t root_seed = 0;
  Construction construction = Construction::kUniformVsPaninski;
  double m_cap = 1e8;
  double c0 = kDefaultC0;
  double growth = 1.25;
  double relative_width = 0.05;

  absl::Status Validate() const;
};

// Flat "key = value" text, '#' starts a comment. Keys mirror the fields
// above; n_grid is a comma-separated list.
absl::StatusOr<ExperimentConfig> ParseExperimentConfig(std::string_view text);

struct CurvePoint {
  int n = 0;
  int64_t m_min = 0;
  double type1 = 0.0;
  double type2 = 0.0;
  TesterId tester = TesterId::kPrivIt;
  uint64_t seed_used = 0;
};

struct ErrorRates {
  double type1 = 0.0;
  double type2 = 0.0;
};

struct Hypotheses {
  CategoricalDistribution q;
  CategoricalDistribution alternative;  // at tv distance alpha from q
};

// uniform(n) against Paninski(n, 2 alpha), or a 2-histogram with
// max(2, n/200) heavy symbols holding 1 - 10/n of the mass against its
// heavy-block perturbation at tv distance alpha.
absl::StatusOr<Hypotheses> BuildHypotheses(Construction construction, int n,
                                           double alpha);

// Privacy budget handed to the tester: epsilon, or its approximate-DP parity
// value when config.delta is set.
absl::StatusOr<double> EffectiveEpsilon(const ExperimentConfig& config);

// Runs `trials` tests with data from q (null arm) and from `alternative`
// (alternative arm). Trial t of arm a uses the stream
// DeriveSeed(stream_seed, {t, a}). Returns the rejection rate under the null
// and the acceptance rate under the alternative.
absl::StatusOr<ErrorRates> EstimateErrors(
    const Tester& tester, const CategoricalDistribution& q,
    const CategoricalDistribution& alternative, const TestParams& params,
    int trials, uint64_t stream_seed);

// The configured tester, with m read as the total expected sample count it
// consumes. privit_noised is calibrated here (config.trials null
// simulations seeded from calibration_seed); the repetition baseline splits
// m across its datasets.
absl::StatusOr<Tester> MakeHarnessTester(const ExperimentConfig& config,
                                         const CategoricalDistribution& q,
                                         const TestParams& params,
                                         uint64_t calibration_seed);

// Error rates of the configured tester at (n, m) with the stream layout
// DeriveSeed(root_seed, {n, m}).
absl::StatusOr<ErrorRates> EvaluateAt(const ExperimentConfig& config,
                                      const Hypotheses& hypotheses, int n,
                                      int64_t m);

// Geometric sweep from sqrt(n)/alpha^2 by config.growth until both errors are
// at most config.error_target, then bisection between the last failing and
// first passing m down to config.relative_width. Fails with
// ResourceExhausted once m passes config.m_cap.
absl::StatusOr<CurvePoint> FindMinSampleSize(const ExperimentConfig& config,
                                             int n);

absl::StatusOr<std::vector<CurvePoint>> RunExperiment(
    const ExperimentConfig& config);

inline constexpr std::string_view kCsvHeader =
    "tester,n,m_min,type1,type2,alpha,epsilon,delta,seed";

std::string FormatCsv(const ExperimentConfig& config,
                      const std::vector<CurvePoint>& points);

}  // namespace dpit

#endif  // DPIT_HARNESS_H_
