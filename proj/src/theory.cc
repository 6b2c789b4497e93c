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

#include "dpit/theory.h"

#include <algorithm>
#include <cmath>

namespace dpit {

std::string_view BindingTermName(BindingTerm term) {
  switch (term) {
    case BindingTerm::kNonPrivate:
      return "non_private";
    case BindingTerm::kPrivacySqrt:
      return "privacy_sqrt";
    case BindingTerm::kPrivacyCubeRoot:
      return "privacy_cube_root";
  }
  return "unknown";
}

int ChernoffRepetitionCount(double beta) {
  return static_cast<int>(std::ceil(18.0 * std::log(1.0 / beta)));
}

int AmplificationCount(double beta) {
  if (beta >= 1.0 / 3.0) return 1;
  return std::max(1, ChernoffRepetitionCount(beta));
}

int RepetitionDatasetCount(double epsilon) {
  return static_cast<int>(std::ceil(10.0 / epsilon));
}

SampleBound PrivItSampleSize(int n, double alpha, double epsilon, double beta,
                             double c1, double c2, double c0) {
  const double nd = static_cast<double>(n);
  SampleBound bound;
  bound.non_private_term = c0 * std::sqrt(nd) / (alpha * alpha);
  bound.privacy_sqrt_term = std::sqrt(192.0 / (c2 * c2 * c1)) *
                            std::sqrt(nd * std::log(nd / c2)) /
                            (std::pow(alpha, 1.5) * epsilon);
  bound.privacy_cube_root_term =
      std::pow(128.0 / (c2 * std::sqrt(c1)), 2.0 / 3.0) *
      std::cbrt(nd * std::log(nd)) /
      (std::pow(alpha, 5.0 / 3.0) * std::pow(epsilon, 2.0 / 3.0));

  double largest = bound.non_private_term;
  if (bound.privacy_sqrt_term > largest) {
    largest = bound.privacy_sqrt_term;
    bound.binding_term = BindingTerm::kPrivacySqrt;
  }
  if (bound.privacy_cube_root_term > largest) {
    largest = bound.privacy_cube_root_term;
    bound.binding_term = BindingTerm::kPrivacyCubeRoot;
  }
  bound.amplification_factor = AmplificationCount(beta);
  bound.total = largest * bound.amplification_factor;
  return bound;
}

double AdkSampleSize(int n, double alpha, double c0) {
  return c0 * std::sqrt(static_cast<double>(n)) / (alpha * alpha);
}

double RepetitionSampleSize(int n, double alpha, double epsilon, double beta,
                            double c0) {
  return RepetitionDatasetCount(epsilon) * AdkSampleSize(n, alpha, c0) *
         AmplificationCount(beta);
}

double ZPrimeMean(const CategoricalDistribution& p, double m, double epsilon) {
  const int n = p.size();
  const Eigen::VectorXd uniform = Eigen::VectorXd::Constant(n, 1.0 / n);
  return m * ChiSquare(p.probs(), uniform) +
         2.0 * n * n / (epsilon * epsilon * m);
}

double ZPrimeVarianceExact(const CategoricalDistribution& p, double m,
                           double epsilon) {
  const int n = p.size();
  const double lambda_null = m / n;
  const double inv_eps2 = 1.0 / (epsilon * epsilon);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double lambda = m * p[i];
    const double gap = lambda - lambda_null;
    const double cross = 2.0 * lambda - 2.0 * lambda_null - 1.0;
    total += 2.0 * lambda * lambda + 4.0 * lambda * gap * gap +
             inv_eps2 * (8.0 * lambda + 2.0 * cross * cross) +
             20.0 * inv_eps2 * inv_eps2;
  }
  return total / (lambda_null * lambda_null);
}

double ZPrimeVarianceLowerBound(int n, double m, double epsilon) {
  const double nd = static_cast<double>(n);
  return 20.0 * nd * nd * nd / (std::pow(epsilon, 4) * m * m);
}

double NoisyCountsLowerBound(int n, double alpha, double epsilon) {
  return std::pow(20.0, 0.25) * std::pow(static_cast<double>(n), 0.75) /
         (epsilon * alpha);
}

double StatisticPrefactor(Normalization normalization, double m,
                          double alpha) {
  const double unit = 1.0 / (m * alpha * alpha);
  return normalization == Normalization::kUnit ? unit : 2.0 * unit;
}

double ChisqSensitivity(double count, double m, double q_i, double alpha,
                        Normalization normalization) {
  return StatisticPrefactor(normalization, m, alpha) * 2.0 *
         std::abs(count - m * q_i - 1.0) / (m * q_i);
}

double SensitivityLimitedSampleSize(double count, int n, double alpha,
                                    double epsilon) {
  return std::sqrt(2.0 * count * n / (epsilon * alpha * alpha));
}

}  // namespace dpit
