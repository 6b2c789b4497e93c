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

#include "dpit/privacy.h"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

namespace dpit {
namespace {

TEST(PrivacyTest, PureToZcdpExamples) {
  EXPECT_EQ(PureToZcdp(0.1), 0.1 * 0.1 / 2);
  EXPECT_DOUBLE_EQ(PureToZcdp(0.1), 0.005);
  EXPECT_EQ(PureToZcdp(0.0), 0.0);
  EXPECT_DOUBLE_EQ(PureToZcdp(2.0), 2.0);
}

TEST(PrivacyTest, ZcdpToApproxExamples) {
  // rho + 2 sqrt(rho ln(1/delta)) with ln(1/delta) = 1 and 16.
  EXPECT_NEAR(*ZcdpToApprox(0.005, std::exp(-1.0)), 0.146421356237309505,
              1e-15);
  EXPECT_NEAR(*ZcdpToApprox(0.005, std::exp(-16.0)), 0.570685424949238020,
              1e-15);
  EXPECT_EQ(*ZcdpToApprox(0.0, 1e-6), 0.0);
}

TEST(PrivacyTest, ZcdpToApproxRejectsBadDomain) {
  for (double delta : {0.0, 1.0, -0.1, 2.0, std::nan("")}) {
    EXPECT_EQ(ZcdpToApprox(0.1, delta).status().code(),
              absl::StatusCode::kInvalidArgument)
        << delta;
  }
  EXPECT_FALSE(ZcdpToApprox(-1.0, 0.1).ok());
  EXPECT_FALSE(ZcdpToApprox(INFINITY, 0.1).ok());
}

TEST(PrivacyTest, ParityComposesBothConversions) {
  std::vector<double> eps_grid, delta_grid;
  for (int i = 0; i < 20; ++i) eps_grid.push_back(0.01 * std::pow(1.4, i));
  for (int i = 1; i <= 12; ++i) delta_grid.push_back(std::pow(10.0, -i));
  for (double eps : eps_grid) {
    const std::vector<PrivacyGuarantee> parity =
        *ParityForExperiment(eps, delta_grid);
    ASSERT_EQ(parity.size(), delta_grid.size());
    for (size_t j = 0; j < delta_grid.size(); ++j) {
      const ApproxDp& g = std::get<ApproxDp>(parity[j]);
      EXPECT_EQ(g.delta, delta_grid[j]);
      const double composed = *ZcdpToApprox(PureToZcdp(eps), delta_grid[j]);
      EXPECT_NEAR(g.epsilon, composed, 1e-12 * composed);
    }
  }
}

TEST(PrivacyTest, ParityIsMonotone) {
  const std::vector<double> deltas = {1e-9, 1e-6, 1e-3, 0.1, 0.5};
  std::vector<double> previous;
  for (double eps : {0.05, 0.1, 0.5, 1.0}) {
    const std::vector<PrivacyGuarantee> parity = *ParityForExperiment(eps, deltas);
    std::vector<double> current;
    for (const PrivacyGuarantee& g : parity) {
      current.push_back(std::get<ApproxDp>(g).epsilon);
    }
    // A looser delta buys a smaller epsilon.
    for (size_t j = 1; j < current.size(); ++j) {
      EXPECT_LT(current[j], current[j - 1]);
    }
    for (size_t j = 0; j < previous.size(); ++j) {
      EXPECT_GT(current[j], previous[j]);
    }
    previous = current;
  }
}

TEST(PrivacyTest, ParityRejectsBadInputs) {
  const std::vector<double> ok = {0.1};
  const std::vector<double> bad = {0.1, 1.0};
  EXPECT_FALSE(ParityForExperiment(0.0, ok).ok());
  EXPECT_FALSE(ParityForExperiment(0.1, bad).ok());
  EXPECT_TRUE(ParityForExperiment(0.1, {}).ok());
}

TEST(PrivacyTest, DescribeGuarantee) {
  EXPECT_EQ(DescribeGuarantee(PureDp{0.1}), "(0.1, 0)-DP");
  EXPECT_EQ(DescribeGuarantee(ApproxDp{0.5, 1e-6}), "(0.5, 1e-06)-DP");
  EXPECT_EQ(DescribeGuarantee(Zcdp{0.005}), "0.005-zCDP");
}

}  // namespace
}  // namespace dpit
