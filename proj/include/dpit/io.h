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

#ifndef DPIT_IO_H_
#define DPIT_IO_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "dpit/distributions.h"

namespace dpit {

// Numbers separated by whitespace and/or commas, optionally wrapped in
// square brackets, so JSON arrays and one-per-line files both parse.
absl::StatusOr<std::vector<double>> ParseRealList(std::string_view text);
absl::StatusOr<std::vector<int64_t>> ParseCountList(std::string_view text);

absl::StatusOr<std::string> ReadFile(const std::string& path);

absl::StatusOr<CategoricalDistribution> ReadDistributionFile(
    const std::string& path);
absl::StatusOr<Histogram> ReadHistogramFile(const std::string& path);

}  // namespace dpit

#endif  // DPIT_IO_H_
