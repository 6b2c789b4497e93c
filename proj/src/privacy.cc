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

#include "absl/status/status.h"
#include "fmt/printf.h"

namespace dpit {

std::string DescribeGuarantee(const PrivacyGuarantee& guarantee) {
  struct Visitor {
    std::string operator()(const PureDp& g) const {
      return fmt::sprintf("(%.10g, 0)-DP", g.epsilon);
    }
    std::string operator()(const ApproxDp& g) const {
      return fmt::sprintf("(%.10g, %.10g)-DP", g.epsilon, g.delta);
    }
    std::string operator()(const Zcdp& g) const {
      return fmt::sprintf("%.10g-zCDP", g.rho);
    }
  };
  return std::visit(Visitor{}, guarantee);
}

double PureToZcdp(double epsilon) { return epsilon * epsilon / 2.0; }

absl::StatusOr<double> ZcdpToApprox(double rho, double delta) {
  if (!(rho >= 0.0) || !std::isfinite(rho)) {
    return absl::InvalidArgumentError(
        fmt::sprintf("Rho must be finite and non-negative, but is %g", rho));
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        fmt::sprintf("Delta must lie in (0, 1), but is %g", delta));
  }
  return rho + 2.0 * std::sqrt(rho * std::log(1.0 / delta));
}

absl::StatusOr<std::vector<PrivacyGuarantee>> ParityForExperiment(
    double epsilon, std::span<const double> deltas) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(fmt::sprintf(
        "Epsilon must be finite and positive, but is %g", epsilon));
  }
  std::vector<PrivacyGuarantee> guarantees;
  guarantees.reserve(deltas.size());
  for (double delta : deltas) {
    if (!(delta > 0.0 && delta < 1.0)) {
      return absl::InvalidArgumentError(
          fmt::sprintf("Delta must lie in (0, 1), but is %g", delta));
    }
    const double relaxed = epsilon * epsilon / 2.0 +
                           epsilon * std::sqrt(2.0 * std::log(1.0 / delta));
    guarantees.push_back(ApproxDp{relaxed, delta});
  }
  return guarantees;
}

}  // namespace dpit
