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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "dpit/random.h"

namespace dpit {
namespace {

CategoricalDistribution RandomDistribution(int n, Rng& rng) {
  Eigen::VectorXd weights(n);
  for (int i = 0; i < n; ++i) weights[i] = -std::log(rng.Uniform());
  weights /= weights.sum();
  return *CategoricalDistribution::Create(weights);
}

CategoricalDistribution Make(std::initializer_list<double> probs) {
  Eigen::VectorXd v(probs.size());
  int i = 0;
  for (double p : probs) v[i++] = p;
  return *CategoricalDistribution::Create(v);
}

TEST(CategoricalDistributionTest, RejectsInvalidVectors) {
  EXPECT_FALSE(CategoricalDistribution::Create(Eigen::VectorXd::Ones(1)).ok());
  Eigen::VectorXd negative(2);
  negative << 1.5, -0.5;
  EXPECT_EQ(CategoricalDistribution::Create(negative).status().code(),
            absl::StatusCode::kInvalidArgument);
  Eigen::VectorXd unnormalized(3);
  unnormalized << 0.3, 0.3, 0.3;
  EXPECT_FALSE(CategoricalDistribution::Create(unnormalized).ok());
  Eigen::VectorXd close(2);
  close << 0.5, 0.5 + 5e-10;
  EXPECT_TRUE(CategoricalDistribution::Create(close).ok());
}

TEST(CategoricalDistributionTest, UniformSumsToOneExactly) {
  for (int n : {2, 3, 7, 10, 1000}) {
    CategoricalDistribution u = CategoricalDistribution::Uniform(n);
    EXPECT_EQ(u.size(), n);
    EXPECT_NEAR(u.probs().sum(), 1.0, 1e-15);
    EXPECT_TRUE(u.IsUniform());
  }
}

TEST(HistogramTest, TotalMatchesCounts) {
  Counts counts(4);
  counts << 3, 0, 5, 2;
  absl::StatusOr<Histogram> h = Histogram::Create(counts);
  ASSERT_TRUE(h.ok());
  EXPECT_EQ(h->total(), 10);
  counts[1] = -1;
  EXPECT_FALSE(Histogram::Create(counts).ok());
}

TEST(TvDistanceTest, Examples) {
  EXPECT_EQ(*TvDistance(CategoricalDistribution::Uniform(4),
                        CategoricalDistribution::Uniform(4)),
            0.0);
  EXPECT_EQ(*TvDistance(Make({1.0, 0.0}), Make({0.0, 1.0})), 1.0);
  for (int n : {4, 10, 100}) {
    for (double alpha : {0.05, 0.1, 0.25}) {
      EXPECT_NEAR(*TvDistance(*PaninskiConstruction(n, 2 * alpha),
                              CategoricalDistribution::Uniform(n)),
                  alpha, 1e-12);
    }
  }
}

TEST(TvDistanceTest, MismatchedSupportIsAnError) {
  EXPECT_EQ(TvDistance(CategoricalDistribution::Uniform(3),
                       CategoricalDistribution::Uniform(4))
                .status()
                .code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(TvDistanceTest, MetricProperties) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.UniformInt(50));
    CategoricalDistribution p = RandomDistribution(n, rng);
    CategoricalDistribution q = RandomDistribution(n, rng);
    const double pq = *TvDistance(p, q);
    EXPECT_DOUBLE_EQ(pq, *TvDistance(q, p));
    EXPECT_GE(pq, 0.0);
    EXPECT_LE(pq, 1.0);
    EXPECT_EQ(*TvDistance(p, p), 0.0);
  }
}

TEST(ChiSquareDivergenceTest, Examples) {
  EXPECT_EQ(*ChiSquareDivergence(CategoricalDistribution::Uniform(9),
                                 CategoricalDistribution::Uniform(9)),
            0.0);
  for (int n : {2, 10, 100}) {
    const double alpha = 0.1;
    EXPECT_NEAR(*ChiSquareDivergence(*PaninskiConstruction(n, 2 * alpha),
                                     CategoricalDistribution::Uniform(n)),
                4 * alpha * alpha, 1e-12);
  }
  // 0.25^2/0.25 + 0.25^2/0.75 by hand.
  EXPECT_NEAR(*ChiSquareDivergence(Make({0.5, 0.5}), Make({0.25, 0.75})),
              0.25 + 0.0625 / 0.75, 1e-15);
}

TEST(ChiSquareDivergenceTest, UndefinedWhenQMissesSupportOfP) {
  EXPECT_EQ(ChiSquareDivergence(Make({0.5, 0.5}), Make({1.0, 0.0}))
                .status()
                .code(),
            absl::StatusCode::kFailedPrecondition);
  // Zero mass on both sides is fine.
  EXPECT_TRUE(ChiSquareDivergence(Make({1.0, 0.0}), Make({1.0, 0.0})).ok());
}

TEST(ChiSquareDivergenceTest, DominatesSquaredL1) {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.UniformInt(40));
    CategoricalDistribution p = RandomDistribution(n, rng);
    CategoricalDistribution u = CategoricalDistribution::Uniform(n);
    const double tv = *TvDistance(p, u);
    EXPECT_GE(*ChiSquareDivergence(p, u), 4 * tv * tv - 1e-12);
  }
}

TEST(PaninskiConstructionTest, Examples) {
  CategoricalDistribution flat = *PaninskiConstruction(4, 0.0);
  EXPECT_TRUE(flat.IsUniform());
  CategoricalDistribution p = *PaninskiConstruction(4, 0.2);
  EXPECT_NEAR(p[0], 0.3, 1e-15);
  EXPECT_NEAR(p[1], 0.2, 1e-15);
  EXPECT_NEAR(p[2], 0.3, 1e-15);
  EXPECT_NEAR(p[3], 0.2, 1e-15);
  EXPECT_NEAR(*TvDistance(*PaninskiConstruction(100, 0.2),
                          CategoricalDistribution::Uniform(100)),
              0.1, 1e-12);
}

TEST(PaninskiConstructionTest, RejectsBadParameters) {
  EXPECT_FALSE(PaninskiConstruction(5, 0.1).ok());
  EXPECT_FALSE(PaninskiConstruction(4, 1.5).ok());
  EXPECT_FALSE(PaninskiConstruction(4, -0.1).ok());
}

TEST(PaninskiConstructionTest, TvIsHalfThePerturbation) {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 * (1 + static_cast<int>(rng.UniformInt(500)));
    const double gamma = rng.Uniform();
    EXPECT_NEAR(*TvDistance(*PaninskiConstruction(n, gamma),
                            CategoricalDistribution::Uniform(n)),
                gamma / 2, 1e-12);
  }
}

TEST(TwoHistogramConstructionTest, Examples) {
  CategoricalDistribution q = *TwoHistogramConstruction(400, 2, 1 - 10.0 / 400);
  EXPECT_NEAR(q[0], 0.4875, 1e-15);
  EXPECT_NEAR(q[1], 0.4875, 1e-15);
  for (int i = 2; i < 400; ++i) EXPECT_NEAR(q[i], 0.025 / 398, 1e-12);

  EXPECT_TRUE(TwoHistogramConstruction(10, 5, 0.5)->IsUniform(1e-15));

  CategoricalDistribution r = *TwoHistogramConstruction(4, 1, 0.7);
  EXPECT_NEAR(r[0], 0.7, 1e-15);
  EXPECT_NEAR(r[1], 0.1, 1e-15);
  EXPECT_NEAR(r[2], 0.1, 1e-15);
  EXPECT_NEAR(r[3], 0.1, 1e-15);
}

TEST(TwoHistogramConstructionTest, RejectsBadParameters) {
  EXPECT_FALSE(TwoHistogramConstruction(10, 0, 0.5).ok());
  EXPECT_FALSE(TwoHistogramConstruction(10, 10, 0.5).ok());
  EXPECT_FALSE(TwoHistogramConstruction(10, 2, 0.0).ok());
  EXPECT_FALSE(TwoHistogramConstruction(10, 2, 1.0).ok());
}

TEST(PerturbOnHeavyTest, Examples) {
  CategoricalDistribution q = *TwoHistogramConstruction(400, 2, 1 - 10.0 / 400);
  CategoricalDistribution same = *PerturbOnHeavy(q, 0.0);
  EXPECT_EQ(same.probs(), q.probs());

  CategoricalDistribution p = *PerturbOnHeavyToDistance(q, 0.1);
  EXPECT_NEAR(p[0], 0.5875, 1e-12);
  EXPECT_NEAR(p[1], 0.3875, 1e-12);
  for (int i = 2; i < 400; ++i) EXPECT_EQ(p[i], q[i]);
  EXPECT_NEAR(*TvDistance(p, q), 0.1, 1e-12);
}

TEST(PerturbOnHeavyTest, OddBlockLeavesLastHeavySymbol) {
  CategoricalDistribution q = *TwoHistogramConstruction(30, 3, 0.9);
  CategoricalDistribution p = *PerturbOnHeavyToDistance(q, 0.1);
  EXPECT_NEAR(p[0], 0.4, 1e-12);
  EXPECT_NEAR(p[1], 0.2, 1e-12);
  EXPECT_NEAR(p[2], 0.3, 1e-12);
  EXPECT_NEAR(*TvDistance(p, q), 0.1, 1e-12);
}

TEST(PerturbOnHeavyTest, NegativeMassIsAnError) {
  CategoricalDistribution q = *TwoHistogramConstruction(100, 2, 0.5);
  EXPECT_FALSE(PerturbOnHeavy(q, 0.3).ok());
  EXPECT_FALSE(PerturbOnHeavy(*TwoHistogramConstruction(10, 1, 0.5), 0.1).ok());
}

TEST(SamplePoissonizedTest, ZeroMassSymbolsNeverAppear) {
  CategoricalDistribution p = Make({0.5, 0.0, 0.5, 0.0});
  Rng rng(1);
  for (int t = 0; t < 1000; ++t) {
    Histogram h = SamplePoissonized(p, 50.0, rng);
    EXPECT_EQ(h[1], 0);
    EXPECT_EQ(h[3], 0);
  }
}

TEST(SamplePoissonizedTest, MomentsMatchPoisson) {
  const CategoricalDistribution p = CategoricalDistribution::Uniform(10);
  constexpr int kDraws = 100000;
  Rng rng(2);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(10);
  Eigen::VectorXd sum_sq = Eigen::VectorXd::Zero(10);
  for (int t = 0; t < kDraws; ++t) {
    const Eigen::VectorXd c = SamplePoissonized(p, 100.0, rng).counts().cast<double>();
    sum += c;
    sum_sq += c.cwiseProduct(c);
  }
  for (int i = 0; i < 10; ++i) {
    const double mean = sum[i] / kDraws;
    const double var = sum_sq[i] / kDraws - mean * mean;
    EXPECT_NEAR(mean, 10.0, 0.1);
    // Five standard errors of the mean.
    EXPECT_NEAR(mean, 10.0, 5 * std::sqrt(10.0 / kDraws));
    EXPECT_NEAR(var, 10.0, 0.3);
  }
}

TEST(SamplePoissonizedTest, SeededDrawsAreReproducible) {
  const CategoricalDistribution p = *PaninskiConstruction(20, 0.3);
  Rng a(99), b(99);
  EXPECT_EQ(SamplePoissonized(p, 1234.5, a).counts(),
            SamplePoissonized(p, 1234.5, b).counts());
}

}  // namespace
}  // namespace dpit
