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

#include "dpit/noise.h"

#include <algorithm>
#include <cmath>

namespace dpit {

double SampleLaplace(double scale, Rng& rng) {
  const double u = rng.Uniform() - 0.5;
  // log1p keeps precision for |u| near 0.5.
  const double magnitude = -scale * std::log1p(-2.0 * std::abs(u));
  return u < 0.0 ? -magnitude : magnitude;
}

Eigen::VectorXd LaplaceMechanism(const Histogram& histogram, double epsilon,
                                 Rng& rng) {
  Eigen::VectorXd noised = histogram.counts().cast<double>();
  const double scale = 1.0 / epsilon;
  for (Eigen::Index i = 0; i < noised.size(); ++i) {
    noised[i] += SampleLaplace(scale, rng);
  }
  return noised;
}

double LaplaceThreshold(double c2, double epsilon, int a_size) {
  // 1 - (1 - c2)^(1/a) computed as -expm1(log1p(-c2) / a).
  const double per_symbol_tail = -std::expm1(std::log1p(-c2) / a_size);
  return (2.0 / (c2 * epsilon)) * -std::log(per_symbol_tail);
}

double PoissonDeviationBound(double m, double q_i, int n) {
  const double log_n = std::log(static_cast<double>(n));
  return std::max(4.0 * std::sqrt(m * q_i * log_n), log_n);
}

double LaplaceMaxIntervalMass(double scale, double width) {
  return -std::expm1(-width / (2.0 * scale));
}

}  // namespace dpit
