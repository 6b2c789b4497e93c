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

#include "dpit/distributions.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "fmt/printf.h"

namespace dpit {
namespace {

// Replaces the last entry with the residual mass so the vector sums to one
// without accumulated rounding drift.
void AssignResidualToLast(Eigen::VectorXd& probs) {
  const Eigen::Index n = probs.size();
  probs[n - 1] = std::max(0.0, 1.0 - probs.head(n - 1).sum());
}

absl::Status CheckSameSupport(const CategoricalDistribution& p,
                              const CategoricalDistribution& q) {
  if (p.size() != q.size()) {
    return absl::InvalidArgumentError(
        fmt::sprintf("Support sizes differ: %d vs %d", p.size(), q.size()));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<CategoricalDistribution> CategoricalDistribution::Create(
    Eigen::VectorXd probs) {
  if (probs.size() < 2) {
    return absl::InvalidArgumentError(fmt::sprintf(
        "Support size must be at least 2, but is %d", probs.size()));
  }
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    if (!std::isfinite(probs[i]) || probs[i] < 0.0) {
      return absl::InvalidArgumentError(fmt::sprintf(
          "Probability at index %d must be finite and non-negative, but is %g",
          i, probs[i]));
    }
  }
  const double total = probs.sum();
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    return absl::InvalidArgumentError(
        fmt::sprintf("Probabilities must sum to 1, but sum to %.12g", total));
  }
  return CategoricalDistribution(std::move(probs));
}

CategoricalDistribution CategoricalDistribution::Uniform(int n) {
  Eigen::VectorXd probs = Eigen::VectorXd::Constant(n, 1.0 / n);
  AssignResidualToLast(probs);
  return CategoricalDistribution(std::move(probs));
}

bool CategoricalDistribution::IsUniform(double tolerance) const {
  const double target = 1.0 / size();
  return (probs_.array() - target).abs().maxCoeff() <= tolerance;
}

absl::StatusOr<Histogram> Histogram::Create(Counts counts) {
  if (counts.size() < 1) {
    return absl::InvalidArgumentError("Histogram must be non-empty");
  }
  for (Eigen::Index i = 0; i < counts.size(); ++i) {
    if (counts[i] < 0) {
      return absl::InvalidArgumentError(fmt::sprintf(
          "Count at index %d must be non-negative, but is %d", i, counts[i]));
    }
  }
  return Histogram(std::move(counts));
}

absl::StatusOr<double> TvDistance(const CategoricalDistribution& p,
                                  const CategoricalDistribution& q) {
  if (absl::Status s = CheckSameSupport(p, q); !s.ok()) return s;
  return TotalVariation(p.probs(), q.probs());
}

absl::StatusOr<double> ChiSquareDivergence(const CategoricalDistribution& p,
                                           const CategoricalDistribution& q) {
  if (absl::Status s = CheckSameSupport(p, q); !s.ok()) return s;
  for (int i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0 && q[i] == 0.0) {
      return absl::FailedPreconditionError(fmt::sprintf(
          "Chi-square divergence undefined: p[%d] = %g but q[%d] = 0", i, p[i],
          i));
    }
  }
  return ChiSquare(p.probs(), q.probs());
}

absl::StatusOr<CategoricalDistribution> PaninskiConstruction(int n,
                                                             double gamma) {
  if (n < 2 || n % 2 != 0) {
    return absl::InvalidArgumentError(
        fmt::sprintf("Paninski construction needs an even n >= 2, got %d", n));
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    return absl::InvalidArgumentError(
        fmt::sprintf("Perturbation must lie in [0, 1], got %g", gamma));
  }
  Eigen::VectorXd probs(n);
  for (int i = 0; i < n; ++i) {
    probs[i] = (i % 2 == 0 ? 1.0 + gamma : 1.0 - gamma) / n;
  }
  AssignResidualToLast(probs);
  return CategoricalDistribution::Create(std::move(probs));
}

absl::StatusOr<CategoricalDistribution> TwoHistogramConstruction(
    int n, int heavy_count, double heavy_mass) {
  if (!(heavy_count > 0 && heavy_count < n)) {
    return absl::InvalidArgumentError(fmt::sprintf(
        "Heavy count must lie in (0, %d), got %d", n, heavy_count));
  }
  if (!(heavy_mass > 0.0 && heavy_mass < 1.0)) {
    return absl::InvalidArgumentError(
        fmt::sprintf("Heavy mass must lie in (0, 1), got %g", heavy_mass));
  }
  Eigen::VectorXd probs(n);
  probs.head(heavy_count).setConstant(heavy_mass / heavy_count);
  probs.tail(n - heavy_count).setConstant((1.0 - heavy_mass) / (n - heavy_count));
  AssignResidualToLast(probs);
  return CategoricalDistribution::Create(std::move(probs));
}

std::vector<int> HeavyBlock(const CategoricalDistribution& q) {
  const double top = q.probs().maxCoeff();
  std::vector<int> block;
  for (int i = 0; i < q.size(); ++i) {
    if (q[i] >= top - kNormalizationTolerance) block.push_back(i);
  }
  return block;
}

absl::StatusOr<CategoricalDistribution> PerturbOnHeavy(
    const CategoricalDistribution& q, double gamma) {
  const std::vector<int> block = HeavyBlock(q);
  if (block.size() < 2) {
    return absl::InvalidArgumentError(
        "Heavy block needs at least two symbols to perturb");
  }
  Eigen::VectorXd probs = q.probs();
  for (size_t k = 0; k + 1 < block.size(); k += 2) {
    probs[block[k]] += gamma;
    probs[block[k + 1]] -= gamma;
  }
  for (int i = 0; i < q.size(); ++i) {
    if (probs[i] < 0.0 || probs[i] > 1.0) {
      return absl::InvalidArgumentError(fmt::sprintf(
          "Perturbation %g pushes mass of symbol %d out of [0, 1]", gamma, i));
    }
  }
  return CategoricalDistribution::Create(std::move(probs));
}

absl::StatusOr<CategoricalDistribution> PerturbOnHeavyToDistance(
    const CategoricalDistribution& q, double tv) {
  const auto pairs = static_cast<double>(HeavyBlock(q).size() / 2);
  if (pairs < 1) {
    return absl::InvalidArgumentError(
        "Heavy block needs at least two symbols to perturb");
  }
  return PerturbOnHeavy(q, tv / pairs);
}

Histogram SamplePoissonized(const CategoricalDistribution& p, double m,
                            Rng& rng) {
  Counts counts(p.size());
  for (int i = 0; i < p.size(); ++i) counts[i] = rng.Poisson(m * p[i]);
  return *Histogram::Create(std::move(counts));
}

}  // namespace dpit
