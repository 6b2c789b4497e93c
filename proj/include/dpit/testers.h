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

#ifndef DPIT_TESTERS_H_
#define DPIT_TESTERS_H_

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpit/distributions.h"
#include "dpit/random.h"
#include "dpit/theory.h"

namespace dpit {

struct TestParams {
  int n = 0;
  double alpha = 0.1;
  double epsilon = 0.1;
  double beta_I = 1.0 / 3.0;
  double beta_II = 1.0 / 3.0;
  // Expected number of samples (the Poisson mean of the dataset size).
  double m = 0.0;
  double c1 = kDefaultC1;
  double c2 = kDefaultC2;
  // When set, the private testers refuse to run below PrivItSampleSize: under
  // that budget the post-filter statistic is not Lipschitz enough for the
  // privacy guarantee.
  bool strict = false;
  double c0 = kDefaultC0;

  absl::Status Validate() const;
};

enum class Outcome { kEqual, kNotEqual };

// Which step of a procedure produced the verdict.
enum class Branch {
  kEarlyReturn,    // some Laplace draw exceeded its threshold; fair coin
  kFilterReject,   // a noisy count strayed too far from its expectation
  kBernoulliStep,  // coin with bias clamp(Z, 0, 1)
  kThreshold,      // statistic compared against a fixed cut-off
  kCoinFlip,       // randomized-response layer of the repetition wrapper
  kMajorityVote,   // amplification wrapper
};

std::string_view OutcomeName(Outcome outcome);
std::string_view BranchName(Branch branch);

struct Verdict {
  Outcome outcome = Outcome::kEqual;
  Branch branch = Branch::kThreshold;
  std::optional<double> statistic;

  bool rejects() const { return outcome == Outcome::kNotEqual; }
};

// Where a tester gets its data: a distribution to draw Poissonized samples
// from, or a fixed histogram treated as one such draw. Non-owning; the
// referenced object must outlive the source.
class SampleSource {
 public:
  SampleSource(const CategoricalDistribution& p) : source_(&p) {}  // NOLINT
  SampleSource(const Histogram& h) : source_(&h) {}                // NOLINT

  int size() const;
  bool is_fixed() const {
    return std::holds_alternative<const Histogram*>(source_);
  }

  // A dataset with expected size m. A fixed histogram is returned as is.
  Histogram Draw(double m, Rng& rng) const;

  // k independent datasets, each with expected size m. A fixed histogram is
  // thinned uniformly at random into k parts, which for a Poissonized sample
  // yields independent Poissonized sub-samples.
  std::vector<Histogram> DrawIndependent(int k, double m, Rng& rng) const;

 private:
  std::variant<const CategoricalDistribution*, const Histogram*> source_;
};

using Tester = std::function<absl::StatusOr<Verdict>(
    const CategoricalDistribution& q, const SampleSource& data,
    const TestParams& params, Rng& rng)>;

// Symbols with q_i >= c1 * alpha / n. Never empty for a valid q since the
// excluded mass is at most c1 * alpha < 1.
std::vector<int> HeavySet(const CategoricalDistribution& q, double alpha,
                          double c1);

// Sum over i in `heavy` of ((N_i - m q_i)^2 - N_i) / (m q_i).
double CenteredChiSquare(const CategoricalDistribution& q, const Counts& counts,
                         std::span<const int> heavy, double m);

// 2/(m alpha^2) * CenteredChiSquare: the statistic behind the Bernoulli step.
double PrivItStatistic(const CategoricalDistribution& q, const Counts& counts,
                       std::span<const int> heavy, double m, double alpha);

// Clamp to [0, 1].
double BernoulliBias(double statistic);

// Data-independent part of the private tester: Laplace noise for each heavy
// symbol and the common threshold it is compared against.
struct FilterNoise {
  std::vector<int> heavy;
  Eigen::VectorXd noise;  // aligned with `heavy`
  double threshold = 0.0;

  bool triggers_early_return() const;
};

// Draws Y_i ~ Laplace(2/(c2 eps)) for each heavy symbol and computes the
// threshold LaplaceThreshold(c2, eps, |heavy|).
FilterNoise DrawFilterNoise(const CategoricalDistribution& q, double alpha,
                            double epsilon, double c1, double c2, Rng& rng);

// True iff every heavy symbol has
//   |N_i + Y_i - m q_i| < threshold + PoissonDeviationBound(m, q_i, n).
bool PassesFilter(const CategoricalDistribution& q, const Counts& counts,
                  const FilterNoise& filter, double m);

// The private identity tester: noise first, then data, then filter, then a
// Bernoulli(clamp(Z)) coin. (epsilon, 0)-DP.
absl::StatusOr<Verdict> PrivIt(const CategoricalDistribution& q,
                               const SampleSource& data,
                               const TestParams& params, Rng& rng);

// Worst-case change of CenteredChiSquare between neighbouring datasets that
// both pass a filter with the given threshold:
//   max over heavy i of 2 (2L + PoissonDeviationBound(m, q_i, n) + 1)/(m q_i).
double NoisedStatisticSensitivity(const CategoricalDistribution& q,
                                  std::span<const int> heavy,
                                  double laplace_threshold, double m);

// Variant that releases the unnormalized statistic with Laplace(2 delta/eps)
// noise and rejects above `threshold`. Half the budget goes to the filter and
// half to the statistic.
absl::StatusOr<Verdict> PrivItNoised(const CategoricalDistribution& q,
                                     const SampleSource& data,
                                     const TestParams& params,
                                     double threshold, Rng& rng);

// Picks the noised-statistic threshold by simulating the full procedure
// `simulations` times under p = q, so that the empirical rejection rate
// (early-return coins and filter rejections included) is at most beta_I.
absl::StatusOr<double> CalibrateNoisedThreshold(const CategoricalDistribution& q,
                                                const TestParams& params,
                                                int simulations, Rng& rng);

// Non-private chi-square tester: PrivItStatistic over the heavy set, rejects
// iff Z >= 1/2.
absl::StatusOr<Verdict> AdkChiSquare(const CategoricalDistribution& q,
                                     const SampleSource& data,
                                     const TestParams& params, Rng& rng);

// Chi-square statistic on Laplace(1/eps)-noised counts,
//   Z' = sum over q_i > 0 of ((N_i + Y_i - m q_i)^2 - (N_i + Y_i)) / (m q_i).
double LaplacedStatistic(const CategoricalDistribution& q,
                         const Eigen::VectorXd& noised_counts, double m);

// Midpoint between the null mean sum 2/(eps^2 m q_i) and that plus the
// smallest alternative shift 4 m alpha^2.
double LaplacedThreshold(const CategoricalDistribution& q, double m,
                         double alpha, double epsilon);

// Noisy-counts baseline: Laplace mechanism, then LaplacedStatistic against
// LaplacedThreshold.
absl::StatusOr<Verdict> LaplacedChiSquare(const CategoricalDistribution& q,
                                          const SampleSource& data,
                                          const TestParams& params, Rng& rng);

// Majority over AmplificationCount(beta) independent runs of `base`, each on
// a fresh dataset of expected size params.m. Ties go to a fair coin.
absl::StatusOr<Verdict> Amplified(const Tester& base, double beta,
                                  const CategoricalDistribution& q,
                                  const SampleSource& data,
                                  const TestParams& params, Rng& rng);

// Generic (epsilon, 0)-DP wrapper for a non-private tester: with probability
// 1/5 a fair coin; otherwise run `base` on RepetitionDatasetCount(epsilon)
// independent datasets and report one chosen uniformly at random.
absl::StatusOr<Verdict> RepetitionWrapper(const Tester& base, double epsilon,
                                          const CategoricalDistribution& q,
                                          const SampleSource& data,
                                          const TestParams& params, Rng& rng);

// Exact laws of the wrappers' randomization layers.

// P(reject) of the repetition wrapper given the sub-test outcomes:
// 1/10 + 4/5 * (fraction rejecting).
double RepetitionRejectProbability(std::span<const Outcome> sub_outcomes);

// P(correct) of the repetition wrapper when each of k sub-tests is
// independently correct with probability base_success.
double RepetitionSuccessProbability(double base_success, int k);

// P(majority of k is wrong) when each run errs independently with probability
// base_error; ties count as a half error.
double MajorityErrorProbability(double base_error, int k);

}  // namespace dpit

#endif  // DPIT_TESTERS_H_
