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

#ifndef DPIT_PRIVACY_H_
#define DPIT_PRIVACY_H_

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"

namespace dpit {

struct PureDp {
  double epsilon = 0.0;
};

struct ApproxDp {
  double epsilon = 0.0;
  double delta = 0.0;
};

struct Zcdp {
  double rho = 0.0;
};

using PrivacyGuarantee = std::variant<PureDp, ApproxDp, Zcdp>;

std::string DescribeGuarantee(const PrivacyGuarantee& guarantee);

// An (eps, 0)-DP mechanism is eps^2/2-zCDP.
double PureToZcdp(double epsilon);

// A rho-zCDP mechanism is (rho + 2 sqrt(rho ln(1/delta)), delta)-DP.
// Requires rho >= 0 and 0 < delta < 1.
absl::StatusOr<double> ZcdpToApprox(double rho, double delta);

// For each delta, the approximate-DP guarantee implied by eps^2/2-zCDP:
// eps' = eps^2/2 + eps sqrt(2 ln(1/delta)). Used to give the pure-DP tester
// the same nominal budget as a zCDP competitor.
absl::StatusOr<std::vector<PrivacyGuarantee>> ParityForExperiment(
    double epsilon, std::span<const double> deltas);

}  // namespace dpit

#endif  // DPIT_PRIVACY_H_
