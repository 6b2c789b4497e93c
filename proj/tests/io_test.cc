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

#include "dpit/io.h"

#include <cstdio>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

namespace dpit {
namespace {

std::string WriteTemp(const std::string& name, const std::string& content) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << content;
  return path;
}

TEST(ParseRealListTest, AcceptsJsonAndPlainLists) {
  const std::vector<double> expected = {0.25, 0.5, 0.25};
  EXPECT_EQ(*ParseRealList("[0.25, 0.5, 0.25]"), expected);
  EXPECT_EQ(*ParseRealList("0.25\n0.5\n0.25\n"), expected);
  EXPECT_EQ(*ParseRealList("  0.25 0.5,0.25  "), expected);
  EXPECT_EQ(*ParseRealList("[2.5e-1,5e-1,\n 0.25]"), expected);
}

TEST(ParseRealListTest, RejectsGarbage) {
  EXPECT_EQ(ParseRealList("0.5, abc").status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_FALSE(ParseRealList("").ok());
  EXPECT_FALSE(ParseRealList("[]").ok());
  EXPECT_FALSE(ParseRealList("1.0.0").ok());
}

TEST(ParseCountListTest, ParsesIntegersOnly) {
  EXPECT_EQ(*ParseCountList("[3, 0, 12]"), (std::vector<int64_t>{3, 0, 12}));
  EXPECT_FALSE(ParseCountList("3, 1.5").ok());
}

TEST(ReadFileTest, MissingFileIsNotFound) {
  EXPECT_EQ(ReadFile("/nonexistent/dpit/file").status().code(),
            absl::StatusCode::kNotFound);
}

TEST(ReadDistributionFileTest, ValidatesNormalization) {
  const CategoricalDistribution q =
      *ReadDistributionFile(WriteTemp("q.json", "[0.1, 0.2, 0.7]\n"));
  EXPECT_EQ(q.size(), 3);
  EXPECT_DOUBLE_EQ(q[2], 0.7);
  EXPECT_FALSE(ReadDistributionFile(WriteTemp("bad.json", "[0.5, 0.6]")).ok());
}

TEST(ReadHistogramFileTest, ReadsCounts) {
  const Histogram h = *ReadHistogramFile(WriteTemp("h.txt", "4\n0\n6\n"));
  EXPECT_EQ(h.total(), 10);
  EXPECT_EQ(h.counts()[2], 6);
  EXPECT_FALSE(ReadHistogramFile(WriteTemp("neg.txt", "3 -1")).ok());
}

}  // namespace
}  // namespace dpit
