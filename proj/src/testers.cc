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

#include "dpit/testers.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "dpit/noise.h"
#include "fmt/printf.h"

namespace dpit {
namespace {

absl::Status CheckShapes(const CategoricalDistribution& q,
                         const SampleSource& data, const TestParams& params) {
  if (absl::Status s = params.Validate(); !s.ok()) return s;
  if (q.size() != params.n || data.size() != params.n) {
    return absl::InvalidArgumentError(fmt::sprintf(
        "Support size mismatch: params.n = %d, q has %d, data has %d",
        params.n, q.size(), data.size()));
  }
  return absl::OkStatus();
}

absl::Status CheckStrictBudget(const TestParams& params) {
  if (!params.strict) return absl::OkStatus();
  const SampleBound bound =
      PrivItSampleSize(params.n, params.alpha, params.epsilon, 1.0 / 3.0,
                       params.c1, params.c2, params.c0);
  if (params.m < bound.total) {
    return absl::FailedPreconditionError(fmt::sprintf(
        "m = %g is below the minimum %g required for the privacy guarantee",
        params.m, bound.total));
  }
  return absl::OkStatus();
}

Verdict CoinVerdict(Branch branch, Rng& rng) {
  return Verdict{rng.Coin() ? Outcome::kNotEqual : Outcome::kEqual, branch,
                 std::nullopt};
}

// Either a verdict reached before the statistic step, or the noised statistic.
using NoisedStep = std::variant<Verdict, double>;

NoisedStep RunNoisedPipeline(const CategoricalDistribution& q,
                             const SampleSource& data,
                             const TestParams& params, Rng& rng) {
  const double half_budget = params.epsilon / 2.0;
  const FilterNoise filter = DrawFilterNoise(q, params.alpha, half_budget,
                                             params.c1, params.c2, rng);
  if (filter.triggers_early_return()) {
    return CoinVerdict(Branch::kEarlyReturn, rng);
  }
  const Histogram histogram = data.Draw(params.m, rng);
  if (!PassesFilter(q, histogram.counts(), filter, params.m)) {
    return Verdict{Outcome::kNotEqual, Branch::kFilterReject, std::nullopt};
  }
  const double statistic =
      CenteredChiSquare(q, histogram.counts(), filter.heavy, params.m);
  const double sensitivity =
      NoisedStatisticSensitivity(q, filter.heavy, filter.threshold, params.m);
  return statistic + SampleLaplace(2.0 * sensitivity / params.epsilon, rng);
}

double LogBinomialCoefficient(int k, int j) {
  return std::lgamma(k + 1.0) - std::lgamma(j + 1.0) - std::lgamma(k - j + 1.0);
}

double BinomialPmf(int k, int j, double p) {
  if (p <= 0.0) return j == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return j == k ? 1.0 : 0.0;
  return std::exp(LogBinomialCoefficient(k, j) + j * std::log(p) +
                  (k - j) * std::log1p(-p));
}

}  // namespace

absl::Status TestParams::Validate() const {
  if (n < 2) {
    return absl::InvalidArgumentError(
        fmt::sprintf("Support size must be at least 2, but is %d", n));
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    return absl::InvalidArgumentError(
        fmt::sprintf("Alpha must lie in (0, 1], but is %g", alpha));
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        fmt::sprintf("Epsilon must be finite and positive, but is %g",
                        epsilon));
  }
  if (!(beta_I > 0.0 && beta_I < 1.0) || !(beta_II > 0.0 && beta_II < 1.0)) {
    return absl::InvalidArgumentError(
        fmt::sprintf("Error targets must lie in (0, 1), got %g and %g",
                        beta_I, beta_II));
  }
  if (!(m > 0.0) || !std::isfinite(m)) {
    return absl::InvalidArgumentError(
        fmt::sprintf("Expected sample count must be positive, but is %g", m));
  }
  if (!(c1 > 0.0 && c1 <= 1.0) || !(c2 > 0.0 && c2 < 1.0)) {
    return absl::InvalidArgumentError(
        fmt::sprintf("Constants out of range: c1 = %g, c2 = %g", c1, c2));
  }
  return absl::OkStatus();
}

std::string_view OutcomeName(Outcome outcome) {
  return outcome == Outcome::kEqual ? "p = q" : "p != q";
}

std::string_view BranchName(Branch branch) {
  switch (branch) {
    case Branch::kEarlyReturn:
      return "early_return";
    case Branch::kFilterReject:
      return "filter_reject";
    case Branch::kBernoulliStep:
      return "bernoulli_step";
    case Branch::kThreshold:
      return "threshold";
    case Branch::kCoinFlip:
      return "coin_flip";
    case Branch::kMajorityVote:
      return "majority_vote";
  }
  return "unknown";
}

int SampleSource::size() const {
  return std::visit([](const auto* s) { return s->size(); }, source_);
}

Histogram SampleSource::Draw(double m, Rng& rng) const {
  if (const auto* fixed = std::get_if<const Histogram*>(&source_)) {
    return **fixed;
  }
  return SamplePoissonized(*std::get<const CategoricalDistribution*>(source_),
                           m, rng);
}

std::vector<Histogram> SampleSource::DrawIndependent(int k, double m,
                                                     Rng& rng) const {
  std::vector<Histogram> parts;
  parts.reserve(k);
  const auto* fixed = std::get_if<const Histogram*>(&source_);
  if (fixed == nullptr) {
    for (int j = 0; j < k; ++j) parts.push_back(Draw(m, rng));
    return parts;
  }
  const Histogram& whole = **fixed;
  std::vector<Counts> split(k, Counts::Zero(whole.size()));
  for (int i = 0; i < whole.size(); ++i) {
    int64_t remaining = whole[i];
    for (int j = 0; j + 1 < k && remaining > 0; ++j) {
      const int64_t share = rng.Binomial(remaining, 1.0 / (k - j));
      split[j][i] = share;
      remaining -= share;
    }
    split[k - 1][i] += remaining;
  }
  for (Counts& counts : split) {
    parts.push_back(*Histogram::Create(std::move(counts)));
  }
  return parts;
}

std::vector<int> HeavySet(const CategoricalDistribution& q, double alpha,
                          double c1) {
  const double cutoff = c1 * alpha / q.size();
  std::vector<int> heavy;
  for (int i = 0; i < q.size(); ++i) {
    if (q[i] >= cutoff) heavy.push_back(i);
  }
  return heavy;
}

double CenteredChiSquare(const CategoricalDistribution& q, const Counts& counts,
                         std::span<const int> heavy, double m) {
  double total = 0.0;
  for (int i : heavy) {
    const double expected = m * q[i];
    const double count = static_cast<double>(counts[i]);
    const double deviation = count - expected;
    total += (deviation * deviation - count) / expected;
  }
  return total;
}

double PrivItStatistic(const CategoricalDistribution& q, const Counts& counts,
                       std::span<const int> heavy, double m, double alpha) {
  return StatisticPrefactor(Normalization::kDoubled, m, alpha) *
         CenteredChiSquare(q, counts, heavy, m);
}

double BernoulliBias(double statistic) {
  return std::clamp(statistic, 0.0, 1.0);
}

bool FilterNoise::triggers_early_return() const {
  return (noise.array().abs() >= threshold).any();
}

FilterNoise DrawFilterNoise(const CategoricalDistribution& q, double alpha,
                            double epsilon, double c1, double c2, Rng& rng) {
  FilterNoise filter;
  filter.heavy = HeavySet(q, alpha, c1);
  const int a_size = static_cast<int>(filter.heavy.size());
  filter.threshold = LaplaceThreshold(c2, epsilon, a_size);
  filter.noise.resize(a_size);
  const double scale = 2.0 / (c2 * epsilon);
  for (int k = 0; k < a_size; ++k) filter.noise[k] = SampleLaplace(scale, rng);
  return filter;
}

bool PassesFilter(const CategoricalDistribution& q, const Counts& counts,
                  const FilterNoise& filter, double m) {
  for (size_t k = 0; k < filter.heavy.size(); ++k) {
    const int i = filter.heavy[k];
    const double deviation =
        static_cast<double>(counts[i]) + filter.noise[k] - m * q[i];
    if (std::abs(deviation) >=
        filter.threshold + PoissonDeviationBound(m, q[i], q.size())) {
      return false;
    }
  }
  return true;
}

absl::StatusOr<Verdict> PrivIt(const CategoricalDistribution& q,
                               const SampleSource& data,
                               const TestParams& params, Rng& rng) {
  if (absl::Status s = CheckShapes(q, data, params); !s.ok()) return s;
  if (absl::Status s = CheckStrictBudget(params); !s.ok()) return s;

  // Noise is drawn before any data so the early return is data-independent.
  const FilterNoise filter = DrawFilterNoise(q, params.alpha, params.epsilon,
                                             params.c1, params.c2, rng);
  if (filter.triggers_early_return()) {
    return CoinVerdict(Branch::kEarlyReturn, rng);
  }
  const Histogram histogram = data.Draw(params.m, rng);
  if (!PassesFilter(q, histogram.counts(), filter, params.m)) {
    return Verdict{Outcome::kNotEqual, Branch::kFilterReject, std::nullopt};
  }
  const double z = PrivItStatistic(q, histogram.counts(), filter.heavy,
                                   params.m, params.alpha);
  const bool reject = rng.Bernoulli(BernoulliBias(z));
  return Verdict{reject ? Outcome::kNotEqual : Outcome::kEqual,
                 Branch::kBernoulliStep, z};
}

double NoisedStatisticSensitivity(const CategoricalDistribution& q,
                                  std::span<const int> heavy,
                                  double laplace_threshold, double m) {
  double worst = 0.0;
  for (int i : heavy) {
    const double expected = m * q[i];
    const double allowance = 2.0 * laplace_threshold +
                             PoissonDeviationBound(m, q[i], q.size()) + 1.0;
    worst = std::max(worst, 2.0 * allowance / expected);
  }
  return worst;
}

absl::StatusOr<Verdict> PrivItNoised(const CategoricalDistribution& q,
                                     const SampleSource& data,
                                     const TestParams& params,
                                     double threshold, Rng& rng) {
  if (absl::Status s = CheckShapes(q, data, params); !s.ok()) return s;
  if (absl::Status s = CheckStrictBudget(params); !s.ok()) return s;
  NoisedStep step = RunNoisedPipeline(q, data, params, rng);
  if (auto* decided = std::get_if<Verdict>(&step)) return *decided;
  const double noised = std::get<double>(step);
  return Verdict{noised > threshold ? Outcome::kNotEqual : Outcome::kEqual,
                 Branch::kThreshold, noised};
}

absl::StatusOr<double> CalibrateNoisedThreshold(const CategoricalDistribution& q,
                                                const TestParams& params,
                                                int simulations, Rng& rng) {
  if (absl::Status s = CheckShapes(q, q, params); !s.ok()) return s;
  if (simulations < 1) {
    return absl::InvalidArgumentError("Need at least one simulation");
  }
  int decided_rejections = 0;
  std::vector<double> statistics;
  statistics.reserve(simulations);
  for (int t = 0; t < simulations; ++t) {
    NoisedStep step = RunNoisedPipeline(q, q, params, rng);
    if (auto* decided = std::get_if<Verdict>(&step)) {
      if (decided->rejects()) ++decided_rejections;
    } else {
      statistics.push_back(std::get<double>(step));
    }
  }
  // Statistic-driven rejections we can still afford.
  const int allowed =
      static_cast<int>(std::floor(params.beta_I * simulations)) -
      decided_rejections;
  if (allowed <= 0 || statistics.empty()) {
    return allowed <= 0 ? std::numeric_limits<double>::infinity()
                        : -std::numeric_limits<double>::infinity();
  }
  if (allowed >= static_cast<int>(statistics.size())) {
    return -std::numeric_limits<double>::infinity();
  }
  // Rejecting strictly above the allowed-th largest value rejects at most
  // `allowed` of the simulated statistics.
  std::nth_element(statistics.begin(), statistics.begin() + allowed,
                   statistics.end(), std::greater<>());
  return statistics[allowed];
}

absl::StatusOr<Verdict> AdkChiSquare(const CategoricalDistribution& q,
                                     const SampleSource& data,
                                     const TestParams& params, Rng& rng) {
  if (absl::Status s = CheckShapes(q, data, params); !s.ok()) return s;
  const std::vector<int> heavy = HeavySet(q, params.alpha, params.c1);
  const Histogram histogram = data.Draw(params.m, rng);
  const double z =
      PrivItStatistic(q, histogram.counts(), heavy, params.m, params.alpha);
  return Verdict{z >= 0.5 ? Outcome::kNotEqual : Outcome::kEqual,
                 Branch::kThreshold, z};
}

double LaplacedStatistic(const CategoricalDistribution& q,
                         const Eigen::VectorXd& noised_counts, double m) {
  double total = 0.0;
  for (int i = 0; i < q.size(); ++i) {
    if (q[i] <= 0.0) continue;
    const double expected = m * q[i];
    const double deviation = noised_counts[i] - expected;
    total += (deviation * deviation - noised_counts[i]) / expected;
  }
  return total;
}

double LaplacedThreshold(const CategoricalDistribution& q, double m,
                         double alpha, double epsilon) {
  double null_mean = 0.0;
  for (int i = 0; i < q.size(); ++i) {
    if (q[i] > 0.0) null_mean += 2.0 / (epsilon * epsilon * m * q[i]);
  }
  return null_mean + 2.0 * m * alpha * alpha;
}

absl::StatusOr<Verdict> LaplacedChiSquare(const CategoricalDistribution& q,
                                          const SampleSource& data,
                                          const TestParams& params, Rng& rng) {
  if (absl::Status s = CheckShapes(q, data, params); !s.ok()) return s;
  const Histogram histogram = data.Draw(params.m, rng);
  const Eigen::VectorXd noised =
      LaplaceMechanism(histogram, params.epsilon, rng);
  const double z = LaplacedStatistic(q, noised, params.m);
  const double cut =
      LaplacedThreshold(q, params.m, params.alpha, params.epsilon);
  return Verdict{z >= cut ? Outcome::kNotEqual : Outcome::kEqual,
                 Branch::kThreshold, z};
}

absl::StatusOr<Verdict> Amplified(const Tester& base, double beta,
                                  const CategoricalDistribution& q,
                                  const SampleSource& data,
                                  const TestParams& params, Rng& rng) {
  if (!(beta > 0.0 && beta < 1.0)) {
    return absl::InvalidArgumentError(
        fmt::sprintf("Beta must lie in (0, 1), but is %g", beta));
  }
  const int k = AmplificationCount(beta);
  if (k == 1) return base(q, data, params, rng);

  std::vector<Histogram> parts;
  if (data.is_fixed()) parts = data.DrawIndependent(k, params.m, rng);
  int rejections = 0;
  for (int j = 0; j < k; ++j) {
    absl::StatusOr<Verdict> sub =
        parts.empty() ? base(q, data, params, rng)
                      : base(q, SampleSource(parts[j]), params, rng);
    if (!sub.ok()) return sub.status();
    if (sub->rejects()) ++rejections;
  }
  bool reject = 2 * rejections > k;
  if (2 * rejections == k) reject = rng.Coin();
  return Verdict{reject ? Outcome::kNotEqual : Outcome::kEqual,
                 Branch::kMajorityVote, static_cast<double>(rejections) / k};
}

absl::StatusOr<Verdict> RepetitionWrapper(const Tester& base, double epsilon,
                                          const CategoricalDistribution& q,
                                          const SampleSource& data,
                                          const TestParams& params, Rng& rng) {
  if (!(epsilon > 0.0)) {
    return absl::InvalidArgumentError(
        fmt::sprintf("Epsilon must be positive, but is %g", epsilon));
  }
  if (rng.Bernoulli(0.2)) return CoinVerdict(Branch::kCoinFlip, rng);

  const int k = RepetitionDatasetCount(epsilon);
  std::vector<Histogram> parts;
  if (data.is_fixed()) parts = data.DrawIndependent(k, params.m, rng);
  std::vector<Verdict> verdicts;
  verdicts.reserve(k);
  for (int j = 0; j < k; ++j) {
    absl::StatusOr<Verdict> sub =
        parts.empty() ? base(q, data, params, rng)
                      : base(q, SampleSource(parts[j]), params, rng);
    if (!sub.ok()) return sub.status();
    verdicts.push_back(*sub);
  }
  return verdicts[rng.UniformInt(k)];
}

double RepetitionRejectProbability(std::span<const Outcome> sub_outcomes) {
  const auto rejecting = std::count(sub_outcomes.begin(), sub_outcomes.end(),
                                    Outcome::kNotEqual);
  return 0.2 * 0.5 + 0.8 * static_cast<double>(rejecting) /
                         static_cast<double>(sub_outcomes.size());
}

double RepetitionSuccessProbability(double base_success, int k) {
  double total = 0.0;
  for (int j = 0; j <= k; ++j) {
    total += BinomialPmf(k, j, base_success) *
             (0.2 * 0.5 + 0.8 * static_cast<double>(j) / k);
  }
  return total;
}

double MajorityErrorProbability(double base_error, int k) {
  double total = 0.0;
  for (int j = 0; j <= k; ++j) {
    if (2 * j > k) {
      total += BinomialPmf(k, j, base_error);
    } else if (2 * j == k) {
      total += 0.5 * BinomialPmf(k, j, base_error);
    }
  }
  return total;
}

}  // namespace dpit
