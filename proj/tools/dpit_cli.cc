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

// Command-line front end: run one test on files, simulate sample-complexity
// curves, print theoretical bounds, convert privacy guarantees.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "dpit/harness.h"
#include "dpit/io.h"
#include "dpit/privacy.h"
#include "dpit/testers.h"
#include "dpit/theory.h"
#include "fmt/printf.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSearchExhausted = 3;

int Fail(const absl::Status& status) {
  std::cerr << "error: " << status.message() << "\n";
  switch (status.code()) {
    case absl::StatusCode::kResourceExhausted:
      return kExitSearchExhausted;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kNotFound:
      return kExitConfig;
    default:
      return kExitFailure;
  }
}

struct TestOptions {
  std::string q_path;
  std::string data_path;
  double alpha = 0.1;
  double epsilon = 0.1;
  double m = 0.0;
  std::string tester = "privit";
  uint64_t seed = 0;
  bool strict = false;
  int calibration_sims = 1000;
};

int RunTest(const TestOptions& opts) {
  absl::StatusOr<dpit::CategoricalDistribution> q =
      dpit::ReadDistributionFile(opts.q_path);
  if (!q.ok()) return Fail(q.status());
  absl::StatusOr<dpit::Histogram> data =
      dpit::ReadHistogramFile(opts.data_path);
  if (!data.ok()) return Fail(data.status());

  dpit::TestParams params;
  params.n = q->size();
  params.alpha = opts.alpha;
  params.epsilon = opts.epsilon;
  params.m = opts.m > 0.0 ? opts.m : static_cast<double>(data->total());
  params.strict = opts.strict;

  absl::StatusOr<dpit::TesterId> id = dpit::ParseTesterId(opts.tester);
  if (!id.ok()) return Fail(id.status());

  dpit::Rng rng(opts.seed);
  absl::StatusOr<dpit::Verdict> verdict;
  switch (*id) {
    case dpit::TesterId::kPrivIt:
      verdict = dpit::PrivIt(*q, *data, params, rng);
      break;
    case dpit::TesterId::kPrivItNoised: {
      if (absl::Status s = params.Validate(); !s.ok()) return Fail(s);
      dpit::Rng calibration(dpit::DeriveSeed(opts.seed, {1}));
      absl::StatusOr<double> tau = dpit::CalibrateNoisedThreshold(
          *q, params, opts.calibration_sims, calibration);
      if (!tau.ok()) return Fail(tau.status());
      verdict = dpit::PrivItNoised(*q, *data, params, *tau, rng);
      break;
    }
    case dpit::TesterId::kAdkChiSquare:
      verdict = dpit::AdkChiSquare(*q, *data, params, rng);
      break;
    case dpit::TesterId::kLaplacedChiSquare:
      verdict = dpit::LaplacedChiSquare(*q, *data, params, rng);
      break;
    case dpit::TesterId::kRepetition:
      verdict = dpit::RepetitionWrapper(dpit::Tester(dpit::AdkChiSquare),
                                        params.epsilon, *q, *data, params, rng);
      break;
  }
  if (!verdict.ok()) return Fail(verdict.status());
  std::cout << "verdict: " << dpit::OutcomeName(verdict->outcome) << "\n"
            << "branch: " << dpit::BranchName(verdict->branch) << "\n";
  if (verdict->statistic.has_value()) {
    std::cout << fmt::sprintf("statistic: %.10g\n", *verdict->statistic);
  }
  return kExitOk;
}

struct SimulateOptions {
  std::string config_path;
  std::string out_path;
  std::string tester;
  std::vector<int> n_grid;
  std::optional<double> alpha;
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::optional<int> trials;
  std::optional<double> error_target;
  std::optional<uint64_t> seed;
  std::string construction;
  std::optional<double> m_cap;
};

int RunSimulate(const SimulateOptions& opts) {
  dpit::ExperimentConfig config;
  if (!opts.config_path.empty()) {
    absl::StatusOr<std::string> text = dpit::ReadFile(opts.config_path);
    if (!text.ok()) return Fail(text.status());
    absl::StatusOr<dpit::ExperimentConfig> parsed =
        dpit::ParseExperimentConfig(*text);
    if (!parsed.ok()) return Fail(parsed.status());
    config = *parsed;
  }
  // Flags override the file.
  if (!opts.tester.empty()) {
    absl::StatusOr<dpit::TesterId> id = dpit::ParseTesterId(opts.tester);
    if (!id.ok()) return Fail(id.status());
    config.tester = *id;
  }
  if (!opts.construction.empty()) {
    absl::StatusOr<dpit::Construction> c =
        dpit::ParseConstruction(opts.construction);
    if (!c.ok()) return Fail(c.status());
    config.construction = *c;
  }
  if (!opts.n_grid.empty()) config.n_grid = opts.n_grid;
  if (opts.alpha) config.alpha = *opts.alpha;
  if (opts.epsilon) config.epsilon = *opts.epsilon;
  if (opts.delta) config.delta = *opts.delta;
  if (opts.trials) config.trials = *opts.trials;
  if (opts.error_target) config.error_target = *opts.error_target;
  if (opts.seed) config.root_seed = *opts.seed;
  if (opts.m_cap) config.m_cap = *opts.m_cap;

  absl::StatusOr<std::vector<dpit::CurvePoint>> points =
      dpit::RunExperiment(config);
  if (!points.ok()) return Fail(points.status());
  const std::string csv = dpit::FormatCsv(config, *points);
  if (opts.out_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out) {
      return Fail(absl::InvalidArgumentError(
          fmt::sprintf("Cannot write '%s'", opts.out_path)));
    }
    out << csv;
  }
  return kExitOk;
}

int RunTheory(int n, double alpha, double epsilon, double beta, double c0) {
  if (n < 2 || !(alpha > 0.0 && alpha <= 1.0) || !(epsilon > 0.0) ||
      !(beta > 0.0 && beta < 1.0)) {
    return Fail(absl::InvalidArgumentError(
        "Need n >= 2, 0 < alpha <= 1, eps > 0, 0 < beta < 1"));
  }
  const dpit::SampleBound bound =
      dpit::PrivItSampleSize(n, alpha, epsilon, beta, dpit::kDefaultC1,
                             dpit::kDefaultC2, c0);
  std::cout << fmt::sprintf("%-34s %s\n", "quantity", "value");
  auto row = [](std::string_view name, double value) {
    std::cout << fmt::sprintf("%-34s %.10g\n", name, value);
  };
  row("private.non_private_term", bound.non_private_term);
  row("private.privacy_sqrt_term", bound.privacy_sqrt_term);
  row("private.privacy_cube_root_term", bound.privacy_cube_root_term);
  row("private.amplification_factor", bound.amplification_factor);
  row("private.total", bound.total);
  std::cout << fmt::sprintf("%-34s %s\n", "private.binding_term",
                               dpit::BindingTermName(bound.binding_term));
  row("non_private.total", dpit::AdkSampleSize(n, alpha, c0) *
                               dpit::AmplificationCount(beta));
  row("repetition.total",
      dpit::RepetitionSampleSize(n, alpha, epsilon, beta, c0));
  row("noisy_counts.lower_bound", dpit::NoisyCountsLowerBound(n, alpha, epsilon));
  return kExitOk;
}

int RunConvert(double epsilon, const std::vector<double>& deltas) {
  if (!(epsilon > 0.0)) {
    return Fail(absl::InvalidArgumentError("Epsilon must be positive"));
  }
  std::cout << dpit::DescribeGuarantee(dpit::PureDp{epsilon}) << " => "
            << dpit::DescribeGuarantee(dpit::Zcdp{dpit::PureToZcdp(epsilon)})
            << "\n";
  absl::StatusOr<std::vector<dpit::PrivacyGuarantee>> parity =
      dpit::ParityForExperiment(epsilon, deltas);
  if (!parity.ok()) return Fail(parity.status());
  for (const dpit::PrivacyGuarantee& g : *parity) {
    std::cout << dpit::DescribeGuarantee(dpit::Zcdp{dpit::PureToZcdp(epsilon)})
              << " => " << dpit::DescribeGuarantee(g) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private identity testing toolkit"};
  app.require_subcommand(1);

  TestOptions test_opts;
  CLI::App* test = app.add_subcommand("test", "Run one test on a data file");
  test->add_option("--q", test_opts.q_path, "Hypothesis distribution file")
      ->required();
  test->add_option("--data", test_opts.data_path, "Histogram file")
      ->required();
  test->add_option("--alpha", test_opts.alpha, "Accuracy (tv distance)");
  test->add_option("--eps", test_opts.epsilon, "Privacy parameter");
  test->add_option("--m", test_opts.m,
                   "Declared expected sample count (default: histogram total)");
  test->add_option("--tester", test_opts.tester,
                   "privit | privit_noised | adk_chisq | laplaced_chisq | "
                   "repetition");
  test->add_option("--seed", test_opts.seed, "RNG seed");
  test->add_flag("--strict", test_opts.strict,
                 "Refuse to run below the privacy sample-size minimum");
  test->add_option("--calibration-sims", test_opts.calibration_sims,
                   "Null simulations for the privit_noised threshold");

  SimulateOptions sim_opts;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Empirical minimum sample sizes as CSV");
  simulate->add_option("--config", sim_opts.config_path, "Config file");
  simulate->add_option("--out", sim_opts.out_path, "Output CSV path");
  simulate->add_option("--tester", sim_opts.tester, "Tester id");
  simulate->add_option("--n", sim_opts.n_grid, "Support sizes")
      ->delimiter(',');
  simulate->add_option("--alpha", sim_opts.alpha, "Accuracy");
  simulate->add_option("--eps", sim_opts.epsilon, "Privacy parameter");
  simulate->add_option("--delta", sim_opts.delta,
                       "Approximate-DP parity delta");
  simulate->add_option("--trials", sim_opts.trials, "Trials per arm");
  simulate->add_option("--error-target", sim_opts.error_target,
                       "Error level both arms must reach");
  simulate->add_option("--seed", sim_opts.seed, "Root seed");
  simulate->add_option("--construction", sim_opts.construction,
                       "uniform_vs_paninski | two_histogram");
  simulate->add_option("--m-cap", sim_opts.m_cap, "Search cap on m");

  int n = 0;
  double alpha = 0.1, epsilon = 0.1, beta = 1.0 / 3.0, c0 = dpit::kDefaultC0;
  CLI::App* theory = app.add_subcommand("theory", "Print sample bounds");
  theory->add_option("--n", n, "Support size")->required();
  theory->add_option("--alpha", alpha, "Accuracy");
  theory->add_option("--eps", epsilon, "Privacy parameter");
  theory->add_option("--beta", beta, "Error probability");
  theory->add_option("--c0", c0, "Non-private rate constant");

  double convert_eps = 0.0;
  std::vector<double> deltas;
  CLI::App* convert =
      app.add_subcommand("convert", "Pure DP -> zCDP -> approximate DP");
  convert->add_option("--eps", convert_eps, "Pure-DP epsilon")->required();
  convert->add_option("--delta", deltas, "Target deltas");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (*test) return RunTest(test_opts);
  if (*simulate) return RunSimulate(sim_opts);
  if (*theory) return RunTheory(n, alpha, epsilon, beta, c0);
  if (*convert) return RunConvert(convert_eps, deltas);
  return kExitFailure;
}
