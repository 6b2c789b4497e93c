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

#include <fstream>
#include <sstream>

#include "absl/status/status.h"
#include "fmt/printf.h"
#include "text.h"

namespace dpit {
namespace {

template <typename T>
absl::StatusOr<std::vector<T>> ParseList(std::string_view text) {
  std::vector<T> values;
  for (std::string_view token : text::SplitAny(text, " \t\r\n,[]")) {
    std::optional<T> value = text::ParseNumber<T>(token);
    if (!value.has_value()) {
      return absl::InvalidArgumentError(
          fmt::sprintf("Cannot parse number '%s'", token));
    }
    values.push_back(*value);
  }
  if (values.empty()) return absl::InvalidArgumentError("Empty number list");
  return values;
}

}  // namespace

absl::StatusOr<std::vector<double>> ParseRealList(std::string_view text) {
  return ParseList<double>(text);
}

absl::StatusOr<std::vector<int64_t>> ParseCountList(std::string_view text) {
  return ParseList<int64_t>(text);
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(fmt::sprintf("Cannot open '%s'", path));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::StatusOr<CategoricalDistribution> ReadDistributionFile(
    const std::string& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<std::vector<double>> values = ParseRealList(*text);
  if (!values.ok()) return values.status();
  return CategoricalDistribution::Create(
      Eigen::Map<const Eigen::VectorXd>(values->data(), values->size()));
}

absl::StatusOr<Histogram> ReadHistogramFile(const std::string& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<std::vector<int64_t>> values = ParseCountList(*text);
  if (!values.ok()) return values.status();
  return Histogram::Create(
      Eigen::Map<const Counts>(values->data(), values->size()));
}

}  // namespace dpit
