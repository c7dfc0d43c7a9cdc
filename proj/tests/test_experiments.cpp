// Copyright 2026 The qtom authors
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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qtom/experiments.hpp"
#include "qtom/serialize.hpp"
#include "support/test_support.hpp"

using namespace qtom;

namespace {

ExperimentConfig paper_config(std::int64_t photons, int runs,
                              std::uint64_t seed) {
  ExperimentConfig config;
  config.dim = 6;
  config.photons_per_setting = photons;
  config.monte_carlo_runs = runs;
  config.ensemble_samples = 300;
  config.rng_seed = seed;
  config.optical = OpticalConfig::default_for(6);
  config.bases_source = BasesSource::paper_d6();
  return config;
}

}  // namespace

TEST_CASE("multinomial counts: degenerate, deterministic, complete") {
  Rng rng(51);
  const std::vector<std::int64_t> all_first =
      sample_counts({1.0, 0.0}, 500, rng);
  CHECK(all_first[0] == 500);
  CHECK(all_first[1] == 0);

  Rng a(7), b(7);
  CHECK(sample_counts({0.2, 0.3, 0.5}, 1000, a) ==
        sample_counts({0.2, 0.3, 0.5}, 1000, b));

  std::int64_t total = 0;
  Rng c(9);
  for (std::int64_t n : sample_counts({0.1, 0.2, 0.3, 0.4}, 12345, c)) {
    CHECK(n >= 0);
    total += n;
  }
  CHECK(total == 12345);

  CHECK_THROWS_AS(sample_counts({0.5, 0.6}, 10, rng), validation_error);
  CHECK_THROWS_AS(sample_counts({0.5, -0.5}, 10, rng), validation_error);
  CHECK_THROWS_AS(sample_counts({0.5, 0.5}, 0, rng), validation_error);
}

TEST_CASE("multinomial frequencies converge to the probabilities") {
  const std::vector<double> probs{0.05, 0.15, 0.35, 0.45};
  const std::int64_t n = 1000000;
  Rng rng(53);
  const std::vector<std::int64_t> counts = sample_counts(probs, n, rng);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double sigma = std::sqrt(probs[i] * (1.0 - probs[i]) / double(n));
    CHECK(std::abs(double(counts[i]) / double(n) - probs[i]) <= 3.0 * sigma);
  }
}

TEST_CASE("random phase states have flat moduli and windowed phases") {
  Rng rng(55);
  const int d = 6;
  for (int rep = 0; rep < 10000; ++rep) {
    const QuditState psi = random_phase_state(d, rng);
    CHECK(psi[0] == cxd(1.0 / std::sqrt(6.0), 0.0));
    for (int l = 1; l < d; ++l) {
      CHECK(std::abs(std::abs(psi[l]) - 1.0 / std::sqrt(6.0)) < 1e-14);
      // Phase lies in [2 pi l / d, 4 pi l / d], modulo 2 pi.
      const double base = 2.0 * std::numbers::pi * double(l) / double(d);
      double offset = std::arg(psi[l]) - base;
      while (offset < 0.0) offset += 2.0 * std::numbers::pi;
      CHECK(offset <= base + 1e-12);
    }
  }
}

TEST_CASE("analytic ensemble matrix: diagonal, hand integral, physicality") {
  for (int d : {2, 6, 9}) {
    const DensityMatrix rho = rho3_analytic(d);
    for (int l = 0; l < d; ++l) {
      CHECK(rho(l, l) == cxd(1.0 / double(d), 0.0));
    }
    CHECK(rho.min_eigenvalue() >= -1e-12);
  }
  // Entry (1,0) at d=6: (1/6) e^{i pi/2} sinc(pi/6) = i/(2 pi).
  const DensityMatrix rho6 = rho3_analytic(6);
  CHECK(std::abs(rho6(1, 0) - cxd(0.0, 1.0 / (2.0 * std::numbers::pi))) < 1e-15);
}

TEST_CASE("Monte Carlo ensemble average converges to the analytic matrix") {
  Rng rng(57);
  const DensityMatrix mc = rho3_reference(6, 50000, rng);
  const DensityMatrix ana = rho3_analytic(6);
  CHECK(fidelity(mc, ana) >= 0.999);
  for (int l = 0; l < 6; ++l) {
    CHECK(std::abs(mc(l, l).real() - 1.0 / 6.0) < 1e-3);
  }
}

TEST_CASE("Monte Carlo convergence rate is about 1/sqrt(samples)") {
  const DensityMatrix ana = rho3_analytic(6);
  const std::vector<int> grid{100, 1000, 10000};
  std::vector<double> log_n, log_err;
  Rng base(59);
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    double mean_err = 0.0;
    const int reps = 24;
    for (int rep = 0; rep < reps; ++rep) {
      Rng rng = base.derive(gi * 1000 + std::size_t(rep));
      const DensityMatrix mc = rho3_reference(6, grid[gi], rng);
      mean_err += (mc.matrix() - ana.matrix()).norm();
    }
    log_n.push_back(std::log(double(grid[gi])));
    log_err.push_back(std::log(mean_err / reps));
  }
  // Least-squares slope of log err vs log n.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(log_n.size());
  for (std::size_t i = 0; i < log_n.size(); ++i) {
    sx += log_n[i];
    sy += log_err[i];
    sxx += log_n[i] * log_n[i];
    sxy += log_n[i] * log_err[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope > -0.65);
  CHECK(slope < -0.35);
}

TEST_CASE("multiplexed experiment: settings, shapes, reproducibility") {
  const ExperimentConfig config = paper_config(2000, 3, 1234);
  const ExperimentReport report =
      run_multiplexed_experiment(config, named_probe_state("psi1"));
  CHECK(report.scheme == "multiplexed");
  CHECK(report.settings_used == 7);
  CHECK(report.dim == 6);
  CHECK(report.rng_seed == 1234);
  CHECK(report.counts.rows() == 7);
  CHECK(report.counts.cols() == 6);
  for (int j = 0; j < 7; ++j) {
    std::int64_t row_total = 0;
    for (int m = 0; m < 6; ++m) row_total += report.counts(j, m);
    CHECK(row_total == 2000);
  }
  CHECK(report.fidelities.size() == 3);
  CHECK(report.fidelity_mean > 0.9);

  const ExperimentReport again =
      run_multiplexed_experiment(config, named_probe_state("psi1"));
  CHECK(report_to_json(report).dump() == report_to_json(again).dump());
}

TEST_CASE("traditional experiment uses d(d+1) settings at matched row budget") {
  const ExperimentConfig config = paper_config(2000, 3, 77);
  const ExperimentReport report =
      run_traditional_experiment(config, named_probe_state("psi2"));
  CHECK(report.scheme == "traditional");
  CHECK(report.settings_used == 42);
  for (int j = 0; j < 7; ++j) {
    std::int64_t row_total = 0;
    for (int m = 0; m < 6; ++m) row_total += report.counts(j, m);
    CHECK(row_total == 6 * 2000);
  }
  CHECK(report.fidelity_mean > 0.9);
}

TEST_CASE("multiplexed and traditional schemes reach similar fidelity at "
          "equal total budget") {
  // Total budget 4200 photons: 600/setting multiplexed, 100/setting
  // traditional; both give 600-photon table rows.
  ExperimentConfig mult = paper_config(600, 40, 2024);
  ExperimentConfig trad = paper_config(100, 40, 2025);
  const ExperimentReport a =
      run_multiplexed_experiment(mult, named_probe_state("psi2"));
  const ExperimentReport b =
      run_traditional_experiment(trad, named_probe_state("psi2"));
  CHECK(std::abs(a.fidelity_mean - b.fidelity_mean) <= 0.02);
}

TEST_CASE("ensemble experiment averages masks and compares to the analytic "
          "matrix") {
  ExperimentConfig config = paper_config(20000, 2, 31);
  config.ensemble_samples = 400;
  const ExperimentReport report =
      run_multiplexed_experiment(config, RandomPhaseEnsemble{});
  CHECK(report.ensemble_samples == 400);
  CHECK(test::max_abs_diff(report.target.matrix(),
                           rho3_analytic(6).matrix()) == 0.0);
  CHECK(report.fidelity_mean > 0.95);
}

TEST_CASE("mean fidelity is non-decreasing in the photon budget") {
  const std::vector<std::int64_t> budgets{100, 1000, 10000, 100000};
  std::vector<double> means, sems;
  for (std::size_t bi = 0; bi < budgets.size(); ++bi) {
    ExperimentConfig config = paper_config(budgets[bi], 100, 4000 + bi);
    const ExperimentReport report =
        run_multiplexed_experiment(config, named_probe_state("psi2"));
    means.push_back(report.fidelity_mean);
    sems.push_back(report.fidelity_ci95 / 1.96);
  }
  for (std::size_t i = 1; i < means.size(); ++i) {
    CHECK(means[i] >= means[i - 1] - (sems[i] + sems[i - 1]));
  }
}

TEST_CASE("pipeline fidelity approaches one as the budget diverges") {
  // Physicality clipping biases pure-state fidelities at first order in the
  // shot noise, so the asymptote is checked where the bias is negligible.
  ExperimentConfig config;
  config.dim = 2;
  config.photons_per_setting = 10000000;
  config.monte_carlo_runs = 1;
  config.rng_seed = 11;
  config.optical = OpticalConfig::default_for(2);
  config.bases_source = BasesSource::generated(50);
  const ExperimentTarget target =
      QuditState::normalized(Eigen::VectorXcd::Constant(2, cxd(1.0, 0.0)));
  const ExperimentReport report = run_multiplexed_experiment(config, target);
  CHECK(report.fidelity_mean >= 0.9999);
}

TEST_CASE("experiment config validation") {
  ExperimentConfig config = paper_config(1000, 1, 0);
  config.photons_per_setting = 0;
  CHECK_THROWS_AS(run_multiplexed_experiment(config, named_probe_state("psi1")),
                  validation_error);
  config = paper_config(1000, 1, 0);
  config.dim = 5;
  CHECK_THROWS_AS(run_multiplexed_experiment(config, named_probe_state("psi1")),
                  validation_error);  // paper set is d=6 only
  CHECK_THROWS_AS(named_probe_state("psi9"), validation_error);
}

TEST_CASE("comparison summary tabulates deltas") {
  const ExperimentConfig config = paper_config(3000, 2, 5);
  const ExperimentReport a =
      run_multiplexed_experiment(config, named_probe_state("psi1"));
  const ExperimentReport b =
      run_traditional_experiment(config, named_probe_state("psi1"));

  const ComparisonSummary self = compare_report(a, a);
  CHECK(self.fidelity_delta == 0.0);
  CHECK(self.settings_a == self.settings_b);
  CHECK(self.target_fidelity == doctest::Approx(1.0).epsilon(1e-10));

  const ComparisonSummary cross = compare_report(a, b);
  CHECK(cross.settings_a == 7);
  CHECK(cross.settings_b == 42);
  CHECK(cross.to_text().find("7 vs 42") != std::string::npos);
}

TEST_CASE("noiseless multiplexed and traditional reports compare to zero") {
  Rng rng(65);
  const TomographySet set = load_paper_bases_d6();
  const OpticalConfig optical = OpticalConfig::default_for(6);
  const DensityMatrix target = test::random_density_matrix(6, rng);

  auto noiseless_report = [&](bool traditional) {
    const ProbabilityTable table =
        traditional ? traditional_scheme(target, set, optical)
                    : forward_probabilities(target, set);
    const DensityMatrix rec = reconstruct(table, set);
    return ExperimentReport{traditional ? "traditional" : "multiplexed",
                            6,
                            table.settings_used,
                            set.condition,
                            0,
                            0,
                            1,
                            0,
                            {fidelity(rec, target)},
                            fidelity(rec, target),
                            0.0,
                            target,
                            rec,
                            CountMatrix::Zero(7, 6)};
  };
  const ComparisonSummary summary =
      compare_report(noiseless_report(false), noiseless_report(true));
  CHECK(std::abs(summary.fidelity_delta) < 1e-9);
  CHECK(summary.settings_a == 7);
  CHECK(summary.settings_b == 42);
}
