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

#ifndef DPIT_DISTRIBUTIONS_H_
#define DPIT_DISTRIBUTIONS_H_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "absl/status/statusor.h"
#include "dpit/random.h"

namespace dpit {

using Counts = Eigen::Matrix<int64_t, Eigen::Dynamic, 1>;

inline constexpr double kNormalizationTolerance = 1e-9;

// Explicit probability vector over the support {0, ..., n-1}. Immutable once
// built; safe to share between workers.
class CategoricalDistribution {
 public:
  // Validates non-negativity, n >= 2, and that the entries sum to one within
  // kNormalizationTolerance.
  static absl::StatusOr<CategoricalDistribution> Create(Eigen::VectorXd probs);

  static CategoricalDistribution Uniform(int n);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int i) const { return probs_[i]; }
  const Eigen::VectorXd& probs() const { return probs_; }

  bool IsUniform(double tolerance = kNormalizationTolerance) const;

 private:
  explicit CategoricalDistribution(Eigen::VectorXd probs)
      : probs_(std::move(probs)) {}

  Eigen::VectorXd probs_;
};

// Observed symbol counts N_1..N_n of a dataset.
class Histogram {
 public:
  static absl::StatusOr<Histogram> Create(Counts counts);

  int size() const { return static_cast<int>(counts_.size()); }
  int64_t operator[](int i) const { return counts_[i]; }
  const Counts& counts() const { return counts_; }
  int64_t total() const { return total_; }

 private:
  explicit Histogram(Counts counts)
      : counts_(std::move(counts)), total_(counts_.sum()) {}

  Counts counts_;
  int64_t total_;
};

// Expression-level kernels. These accept any Eigen vector expression and do
// no validation; the CategoricalDistribution overloads below check shapes.

template <typename DerivedP, typename DerivedQ>
typename DerivedP::Scalar TotalVariation(const Eigen::MatrixBase<DerivedP>& p,
                                         const Eigen::MatrixBase<DerivedQ>& q) {
  return typename DerivedP::Scalar(0.5) * (p - q).cwiseAbs().sum();
}

// Sum over q_i > 0 of (p_i - q_i)^2 / q_i. Entries with q_i == 0 are skipped;
// callers that care must check p_i == 0 there.
template <typename DerivedP, typename DerivedQ>
typename DerivedP::Scalar ChiSquare(const Eigen::MatrixBase<DerivedP>& p,
                                    const Eigen::MatrixBase<DerivedQ>& q) {
  using Scalar = typename DerivedP::Scalar;
  Scalar total(0);
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (q[i] > Scalar(0)) {
      const Scalar diff = p[i] - q[i];
      total += diff * diff / q[i];
    }
  }
  return total;
}

absl::StatusOr<double> TvDistance(const CategoricalDistribution& p,
                                  const CategoricalDistribution& q);

absl::StatusOr<double> ChiSquareDivergence(const CategoricalDistribution& p,
                                           const CategoricalDistribution& q);

// Alternating masses (1 + gamma)/n, (1 - gamma)/n, ...; tv distance to
// uniform(n) is gamma/2. Requires even n and 0 <= gamma <= 1.
absl::StatusOr<CategoricalDistribution> PaninskiConstruction(int n,
                                                             double gamma);

// heavy_count symbols share heavy_mass uniformly, the remaining symbols share
// 1 - heavy_mass uniformly.
absl::StatusOr<CategoricalDistribution> TwoHistogramConstruction(
    int n, int heavy_count, double heavy_mass);

// Indices whose mass equals the maximum mass of q (within tolerance).
std::vector<int> HeavyBlock(const CategoricalDistribution& q);

// Applies +gamma, -gamma, +gamma, ... (absolute mass) to consecutive pairs of
// the heavy block; an odd trailing element is left alone. The tv distance to q
// is gamma * floor(|heavy block| / 2).
absl::StatusOr<CategoricalDistribution> PerturbOnHeavy(
    const CategoricalDistribution& q, double gamma);

// Picks gamma so that PerturbOnHeavy(q, gamma) sits at the given tv distance.
absl::StatusOr<CategoricalDistribution> PerturbOnHeavyToDistance(
    const CategoricalDistribution& q, double tv);

// Each N_i drawn independently from Poisson(m * p_i).
Histogram SamplePoissonized(const CategoricalDistribution& p, double m,
                            Rng& rng);

}  // namespace dpit

#endif  // DPIT_DISTRIBUTIONS_H_
