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

#ifndef DPIT_NOISE_H_
#define DPIT_NOISE_H_

#include <cmath>

#include <Eigen/Core>

#include "dpit/distributions.h"
#include "dpit/random.h"

namespace dpit {

// One draw from the Laplace distribution with density exp(-|x|/b) / (2b),
// by inversion of the CDF.
double SampleLaplace(double scale, Rng& rng);

// Counts plus i.i.d. Laplace(1/epsilon) noise. (epsilon, 0)-DP for
// add/remove-one neighbours.
Eigen::VectorXd LaplaceMechanism(const Histogram& histogram, double epsilon,
                                 Rng& rng);

// Threshold L such that a_size independent |Laplace(2/(c2*epsilon))| draws all
// stay below L with probability exactly 1 - c2:
//   L = (2/(c2*epsilon)) * ln(1 / (1 - (1 - c2)^(1/a_size))).
// Natural logarithm throughout.
double LaplaceThreshold(double c2, double epsilon, int a_size);

// max{4 * sqrt(m * q_i * ln n), ln n}: per-symbol Poisson deviation allowance
// of the filtering step.
double PoissonDeviationBound(double m, double q_i, int n);

// Largest probability a Laplace(scale) density gives to any interval of the
// given width; attained by the interval centred on the mode.
double LaplaceMaxIntervalMass(double scale, double width);

// P(|Y| >= x) for Y ~ Laplace(scale).
inline double LaplaceTwoSidedSurvival(double scale, double x) {
  return x <= 0.0 ? 1.0 : std::exp(-x / scale);
}

}  // namespace dpit

#endif  // DPIT_NOISE_H_
