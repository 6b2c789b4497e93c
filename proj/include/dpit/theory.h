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

#ifndef DPIT_THEORY_H_
#define DPIT_THEORY_H_

#include <string_view>

#include "dpit/distributions.h"

namespace dpit {

// Constant in front of the non-private sqrt(n)/alpha^2 rate. Not derived;
// chosen so the plain chi-square tester meets 1/3 error at n in {100, 1000}.
inline constexpr double kDefaultC0 = 5.0;
inline constexpr double kDefaultC1 = 0.25;
inline constexpr double kDefaultC2 = 3.0 / 40.0;

enum class BindingTerm { kNonPrivate, kPrivacySqrt, kPrivacyCubeRoot };

std::string_view BindingTermName(BindingTerm term);

struct SampleBound {
  double total = 0.0;
  BindingTerm binding_term = BindingTerm::kNonPrivate;
  int amplification_factor = 1;
  // The three candidates before amplification.
  double non_private_term = 0.0;
  double privacy_sqrt_term = 0.0;
  double privacy_cube_root_term = 0.0;
};

// ceil(18 ln(1/beta)) independent runs push a 1/3-error test below beta by
// Hoeffding. Returns 1 for beta >= 1/3, where no boosting is needed.
int AmplificationCount(double beta);

// ceil(18 ln(1/beta)) without the beta >= 1/3 shortcut.
int ChernoffRepetitionCount(double beta);

// Number of independent datasets drawn by the repetition wrapper: ceil(10/eps).
int RepetitionDatasetCount(double epsilon);

// Expected sample count for the private tester:
//   max{ c0 sqrt(n)/a^2,
//        sqrt(192/(c2^2 c1)) sqrt(n ln(n/c2)) / (a^1.5 eps),
//        (128/(c2 sqrt(c1)))^(2/3) (n ln n)^(1/3) / (a^(5/3) eps^(2/3)) }
// times AmplificationCount(beta). The 192 and 128 account for the 2/(m a^2)
// statistic normalization used by the tester.
SampleBound PrivItSampleSize(int n, double alpha, double epsilon, double beta,
                             double c1 = kDefaultC1, double c2 = kDefaultC2,
                             double c0 = kDefaultC0);

// c0 sqrt(n) / alpha^2.
double AdkSampleSize(int n, double alpha, double c0 = kDefaultC0);

// ceil(10/eps) * c0 sqrt(n)/alpha^2 * AmplificationCount(beta).
double RepetitionSampleSize(int n, double alpha, double epsilon, double beta,
                            double c0 = kDefaultC0);

// Mean of the Laplace-noised chi-square statistic against uniform(n):
//   m * chi2(p, uniform) + 2 n^2 / (eps^2 m).
double ZPrimeMean(const CategoricalDistribution& p, double m, double epsilon);

// Exact variance of the same statistic, summed per symbol with
// lambda = m p_i and lambda' = m/n.
double ZPrimeVarianceExact(const CategoricalDistribution& p, double m,
                           double epsilon);

// 20 n^3 / (eps^4 m^2), the noise-only part of the variance.
double ZPrimeVarianceLowerBound(int n, double m, double epsilon);

// Sample size where the noise-only variance equals the squared mean gap,
// 20 n^3/(eps^4 m^2) = m^2 alpha^4, i.e. m = 20^(1/4) n^(3/4) / (eps alpha).
double NoisyCountsLowerBound(int n, double alpha, double epsilon);

// Statistic prefactor: 1/(m a^2) for the textbook normalization, 2/(m a^2) for
// the one the tester uses.
enum class Normalization { kUnit, kDoubled };
double StatisticPrefactor(Normalization normalization, double m, double alpha);

// |Z(D) - Z(D')| when D' has one fewer occurrence of symbol i:
//   prefactor * 2 |N_i - m q_i - 1| / (m q_i).
double ChisqSensitivity(double count, double m, double q_i, double alpha,
                        Normalization normalization);

// Smallest m with 2 N n / (m^2 alpha^2) <= eps under uniform q, the
// sensitivity-only requirement sqrt(2 N n / (eps alpha^2)).
double SensitivityLimitedSampleSize(double count, int n, double alpha,
                                    double epsilon);

}  // namespace dpit

#endif  // DPIT_THEORY_H_
