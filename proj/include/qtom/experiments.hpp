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

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qtom/tomography.hpp"

namespace qtom {

/// Multinomial photocount draw: `n_photons` photons distributed over the
/// outcomes of one setting. Deterministic per rng stream.
std::vector<std::int64_t> sample_counts(const std::vector<double>& probs,
                                        std::int64_t n_photons, Rng& rng);

/// Flat-amplitude state with component phases 2 pi l / d + Delta_l, where
/// Delta_l is uniform on [0, 2 pi l / d]. Component 0 is always 1/sqrt(d).
QuditState random_phase_state(int d, Rng& rng);

/// Closed-form ensemble average of |psi><psi| over random_phase_state:
/// diagonal 1/d, off-diagonal (1/d) g_i conj(g_j) with
/// g_l = exp(i 3 pi l / d) sinc(pi l / d). This is the trusted reference
/// the Monte Carlo estimate converges to.
DensityMatrix rho3_analytic(int d);

/// Monte Carlo ensemble average over `samples` draws of random_phase_state.
DensityMatrix rho3_reference(int d, int samples, Rng& rng);

struct BasesSource {
  enum class Kind { PaperD6, Generated };
  Kind kind = Kind::Generated;
  int trials = 100;

  static BasesSource paper_d6() { return {Kind::PaperD6, 0}; }
  static BasesSource generated(int trials) { return {Kind::Generated, trials}; }
};

struct ExperimentConfig {
  int dim = 6;
  std::int64_t photons_per_setting = 100000;
  int monte_carlo_runs = 1;
  int ensemble_samples = 1000;  // masks averaged for ensemble targets
  std::uint64_t rng_seed = 0;
  OpticalConfig optical = OpticalConfig::default_for(6);
  BasesSource bases_source = BasesSource::paper_d6();

  void validate() const;
};

/// Target of a tomography experiment: a pure state, an explicit density
/// matrix, or the time-averaged random-phase ensemble (whose reference
/// matrix is rho3_analytic).
struct RandomPhaseEnsemble {};
using ExperimentTarget = std::variant<QuditState, DensityMatrix, RandomPhaseEnsemble>;

struct ExperimentReport {
  std::string scheme;  // "multiplexed" or "traditional"
  int dim;
  int settings_used;   // d+1 or d(d+1)
  double condition;    // condition number of the measurement set
  std::uint64_t rng_seed;
  std::int64_t photons_per_setting;
  int monte_carlo_runs;
  int ensemble_samples;  // 0 for non-ensemble targets
  std::vector<double> fidelities;  // one per run
  double fidelity_mean;
  double fidelity_ci95;  // 1.96 * sd / sqrt(runs)
  DensityMatrix target;
  DensityMatrix reconstructed;  // from the first run
  CountMatrix counts;           // from the first run
};

/// Full multiplexed pipeline: probability rows per setting (ensemble
/// targets average rows over masks first), multinomial counts at
/// photons_per_setting per setting, per-row normalization, reconstruction,
/// fidelity against the target. d+1 settings. Run r draws from the child
/// stream (rng_seed, r), so reports are bit-reproducible.
ExperimentReport run_multiplexed_experiment(const ExperimentConfig& config,
                                            const ExperimentTarget& target);

/// Same pipeline through the one-projector-per-setting readout. d(d+1)
/// settings; each table row aggregates its d settings, so the row photon
/// budget is d * photons_per_setting.
ExperimentReport run_traditional_experiment(const ExperimentConfig& config,
                                            const ExperimentTarget& target);

struct ComparisonSummary {
  int dim;
  int settings_a, settings_b;
  double fidelity_a, fidelity_b, fidelity_delta;
  double condition_a, condition_b;
  double target_fidelity;  // how close the two targets are

  std::string to_text() const;
};

ComparisonSummary compare_report(const ExperimentReport& a,
                                 const ExperimentReport& b);

/// Named d=6 probe states: "psi1" the uniform superposition, "psi2" the
/// four-component state (|0> + i|2> - i|3> - |4>)/2.
QuditState named_probe_state(const std::string& name);

}  // namespace qtom
