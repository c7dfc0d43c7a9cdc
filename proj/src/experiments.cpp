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

#include "qtom/experiments.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qtom {

std::vector<std::int64_t> sample_counts(const std::vector<double>& probs,
                                        std::int64_t n_photons, Rng& rng) {
  const std::size_t d = probs.size();
  if (d < 2) {
    throw validation_error("sample_counts: need at least two outcomes");
  }
  if (n_photons < 1) {
    throw validation_error("sample_counts: photon count must be >= 1");
  }
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw validation_error("sample_counts: invalid probability vector");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw validation_error("sample_counts: probabilities do not sum to 1");
  }
  std::vector<double> cdf(d);
  double acc = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    acc += probs[i] / sum;
    cdf[i] = acc;
  }
  cdf[d - 1] = 1.0;  // guard against rounding shortfall

  std::vector<std::int64_t> counts(d, 0);
  for (std::int64_t n = 0; n < n_photons; ++n) {
    const double u = rng.uniform();
    std::size_t lo = 0, hi = d - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (u < cdf[mid]) hi = mid; else lo = mid + 1;
    }
    ++counts[lo];
  }
  return counts;
}

QuditState random_phase_state(int d, Rng& rng) {
  if (d < 2) {
    throw validation_error("random_phase_state: dimension must be >= 2");
  }
  const double mod = 1.0 / std::sqrt(double(d));
  Eigen::VectorXcd c(d);
  c[0] = cxd(mod, 0.0);  // Delta_0 ranges over an empty interval
  for (int l = 1; l < d; ++l) {
    const double base = 2.0 * std::numbers::pi * double(l) / double(d);
    const double delta = rng.uniform(0.0, base);
    c[l] = std::polar(mod, base + delta);
  }
  return QuditState(c);
}

DensityMatrix rho3_analytic(int d) {
  if (d < 2) {
    throw validation_error("rho3_analytic: dimension must be >= 2");
  }
  // E[exp(i phi_l)] with phi_l = 2 pi l/d + Delta_l, Delta_l ~ U[0, 2 pi l/d]:
  // the uniform average over [0, beta] contributes exp(i beta/2) sinc(beta/2).
  Eigen::VectorXcd g(d);
  for (int l = 0; l < d; ++l) {
    const double u = std::numbers::pi * double(l) / double(d);
    g[l] = std::polar(sinc(u), 3.0 * u);
  }
  Eigen::MatrixXcd rho(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      rho(i, j) = i == j ? cxd(1.0 / double(d), 0.0)
                         : g[i] * std::conj(g[j]) / double(d);
    }
  }
  return DensityMatrix(std::move(rho));
}

DensityMatrix rho3_reference(int d, int samples, Rng& rng) {
  if (samples < 1) {
    throw validation_error("rho3_reference: samples must be >= 1");
  }
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d, d);
  for (int s = 0; s < samples; ++s) {
    const QuditState psi = random_phase_state(d, rng);
    acc += psi.amplitudes() * psi.amplitudes().adjoint();
  }
  acc /= double(samples);
  acc = 0.5 * (acc + acc.adjoint().eval());
  acc *= 1.0 / acc.trace().real();
  return DensityMatrix(std::move(acc));
}

void ExperimentConfig::validate() const {
  if (dim < 2) throw validation_error("experiment: dimension must be >= 2");
  if (photons_per_setting < 1) {
    throw validation_error("experiment: photons_per_setting must be >= 1");
  }
  if (monte_carlo_runs < 1) {
    throw validation_error("experiment: monte_carlo_runs must be >= 1");
  }
  if (ensemble_samples < 1) {
    throw validation_error("experiment: ensemble_samples must be >= 1");
  }
  if (optical.dim != dim) {
    throw validation_error("experiment: optical config dimension mismatch");
  }
  if (bases_source.kind == BasesSource::Kind::PaperD6 && dim != 6) {
    throw validation_error("experiment: the bundled basis set is d=6 only");
  }
  if (bases_source.kind == BasesSource::Kind::Generated &&
      bases_source.trials < 1) {
    throw validation_error("experiment: trials must be >= 1");
  }
}

namespace {

TomographySet resolve_bases(const ExperimentConfig& config) {
  if (config.bases_source.kind == BasesSource::Kind::PaperD6) {
    return load_paper_bases_d6();
  }
  // Child stream 0 of the experiment seed is reserved for set generation.
  return build_tomography_set(config.dim, config.bases_source.trials,
                              Rng(config.rng_seed).derive(0).seed());
}

Eigen::MatrixXd born_rows(const QuditState& psi, const TomographySet& set) {
  const int d = set.dim;
  Eigen::MatrixXd rows(d + 1, d);
  for (int j = 0; j <= d; ++j) {
    const Eigen::MatrixXcd& vecs = set.basis(j).vectors();
    for (int m = 0; m < d; ++m) {
      const cxd amp = (vecs.row(m).conjugate() * psi.amplitudes()).value();
      rows(j, m) = std::norm(amp);
    }
  }
  return rows;
}

struct ResolvedTarget {
  DensityMatrix reference;
  bool is_ensemble;
};

ResolvedTarget resolve_target(const ExperimentConfig& config,
                              const ExperimentTarget& target) {
  if (std::holds_alternative<QuditState>(target)) {
    return {density_from_pure(std::get<QuditState>(target)), false};
  }
  if (std::holds_alternative<DensityMatrix>(target)) {
    return {std::get<DensityMatrix>(target), false};
  }
  return {rho3_analytic(config.dim), true};
}

// Noiseless probability rows for one run. Ensemble targets draw fresh
// masks from the run stream and average their rows, mirroring a detector
// that integrates over the displayed mask sequence.
Eigen::MatrixXd noiseless_rows(const ExperimentConfig& config,
                               const ExperimentTarget& target,
                               const ResolvedTarget& resolved,
                               const TomographySet& set, bool traditional,
                               Rng& run_rng) {
  const int d = config.dim;
  if (resolved.is_ensemble) {
    Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(d + 1, d);
    for (int s = 0; s < config.ensemble_samples; ++s) {
      const QuditState mask = random_phase_state(d, run_rng);
      if (traditional) {
        rows += traditional_scheme(density_from_pure(mask), set, config.optical)
                    .rows;
      } else {
        rows += born_rows(mask, set);
      }
    }
    return rows / double(config.ensemble_samples);
  }
  if (traditional) {
    return traditional_scheme(resolved.reference, set, config.optical).rows;
  }
  if (std::holds_alternative<QuditState>(target)) {
    return born_rows(std::get<QuditState>(target), set);
  }
  return forward_probabilities(resolved.reference, set).rows;
}

ExperimentReport run_pipeline(const ExperimentConfig& config,
                              const ExperimentTarget& target,
                              bool traditional) {
  config.validate();
  const int d = config.dim;
  const TomographySet set = resolve_bases(config);
  const ResolvedTarget resolved = resolve_target(config, target);
  const Rng base(config.rng_seed);

  // Each table row aggregates d separate exposures in the traditional
  // scheme, so at fixed photons-per-setting its row budget is d times one
  // exposure.
  const std::int64_t row_photons =
      traditional ? config.photons_per_setting * d : config.photons_per_setting;

  std::vector<double> fidelities;
  fidelities.reserve(static_cast<std::size_t>(config.monte_carlo_runs));
  std::optional<DensityMatrix> first_reconstruction;
  CountMatrix first_counts;

  for (int run = 0; run < config.monte_carlo_runs; ++run) {
    Rng run_rng = base.derive(static_cast<std::uint64_t>(run) + 1);
    const Eigen::MatrixXd rows =
        noiseless_rows(config, target, resolved, set, traditional, run_rng);

    ProbabilityTable table;
    table.dim = d;
    table.settings_used = traditional ? d * (d + 1) : d + 1;
    table.rows.resize(d + 1, d);
    CountMatrix counts(d + 1, d);
    for (int j = 0; j <= d; ++j) {
      std::vector<double> row(static_cast<std::size_t>(d));
      const double row_sum = rows.row(j).sum();
      for (int m = 0; m < d; ++m) row[static_cast<std::size_t>(m)] = rows(j, m) / row_sum;
      const std::vector<std::int64_t> c = sample_counts(row, row_photons, run_rng);
      for (int m = 0; m < d; ++m) {
        counts(j, m) = c[static_cast<std::size_t>(m)];
        table.rows(j, m) = double(c[static_cast<std::size_t>(m)]) / double(row_photons);
      }
    }
    table.counts = counts;

    const DensityMatrix estimate = reconstruct(table, set);
    fidelities.push_back(fidelity(estimate, resolved.reference));
    if (run == 0) {
      first_reconstruction = estimate;
      first_counts = std::move(counts);
    }
  }

  double mean = 0.0;
  for (double f : fidelities) mean += f;
  mean /= double(fidelities.size());
  double var = 0.0;
  if (fidelities.size() > 1) {
    for (double f : fidelities) var += (f - mean) * (f - mean);
    var /= double(fidelities.size() - 1);
  }
  const double ci95 = 1.96 * std::sqrt(var / double(fidelities.size()));

  return ExperimentReport{
      traditional ? "traditional" : "multiplexed",
      d,
      traditional ? d * (d + 1) : d + 1,
      set.condition,
      config.rng_seed,
      config.photons_per_setting,
      config.monte_carlo_runs,
      resolved.is_ensemble ? config.ensemble_samples : 0,
      std::move(fidelities),
      mean,
      ci95,
      resolved.reference,
      *first_reconstruction,
      std::move(first_counts)};
}

}  // namespace

ExperimentReport run_multiplexed_experiment(const ExperimentConfig& config,
                                            const ExperimentTarget& target) {
  return run_pipeline(config, target, false);
}

ExperimentReport run_traditional_experiment(const ExperimentConfig& config,
                                            const ExperimentTarget& target) {
  return run_pipeline(config, target, true);
}

std::string ComparisonSummary::to_text() const {
  std::ostringstream os;
  os << "dimension            " << dim << "\n"
     << "settings             " << settings_a << " vs " << settings_b << "\n"
     << "mean fidelity        " << fidelity_a << " vs " << fidelity_b
     << "  (delta " << fidelity_delta << ")\n"
     << "condition number     " << condition_a << " vs " << condition_b << "\n"
     << "target agreement     " << target_fidelity << "\n";
  return os.str();
}

ComparisonSummary compare_report(const ExperimentReport& a,
                                 const ExperimentReport& b) {
  if (a.dim != b.dim) {
    throw validation_error("compare_report: dimension mismatch");
  }
  return ComparisonSummary{a.dim,
                           a.settings_used,
                           b.settings_used,
                           a.fidelity_mean,
                           b.fidelity_mean,
                           a.fidelity_mean - b.fidelity_mean,
                           a.condition,
                           b.condition,
                           fidelity(a.target, b.target)};
}

QuditState named_probe_state(const std::string& name) {
  if (name == "psi1") {
    return QuditState::normalized(Eigen::VectorXcd::Constant(6, cxd(1.0, 0.0)));
  }
  if (name == "psi2") {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(6);
    c[0] = cxd(0.5, 0.0);
    c[2] = cxd(0.0, 0.5);
    c[3] = cxd(0.0, -0.5);
    c[4] = cxd(-0.5, 0.0);
    return QuditState(c);
  }
  throw validation_error("unknown probe state: " + name);
}

}  // namespace qtom
