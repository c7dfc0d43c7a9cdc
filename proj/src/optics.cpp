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

#include "qtom/optics.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace qtom {

double sinc(double u) {
  if (std::abs(u) < 1e-8) return 1.0 - u * u / 6.0;
  return std::sin(u) / u;
}

OpticalConfig::OpticalConfig(double a, double s, double f, double lambda, int d)
    : slit_width(a), slit_separation(s), focal_length(f), wavelength(lambda),
      dim(d) {
  if (!(a > 0.0) || !(a < s)) {
    throw validation_error("optical config requires 0 < slit_width < separation");
  }
  if (!(f > 0.0)) throw validation_error("focal length must be positive");
  if (!(lambda > 0.0)) throw validation_error("wavelength must be positive");
  if (d < 2) throw validation_error("dimension must be at least 2");
}

double OpticalConfig::wavenumber() const {
  return 2.0 * std::numbers::pi / wavelength;
}

OpticalConfig OpticalConfig::default_for(int d) {
  return OpticalConfig(50e-6, 100e-6, 0.15, 405e-9, d);
}

double intensity_at(const OpticalConfig& config, const QuditState& prepared,
                    const Eigen::VectorXcd& projector, double x) {
  const int d = config.dim;
  if (prepared.dim() != d || static_cast<int>(projector.size()) != d) {
    throw validation_error("intensity_at: dimension mismatch");
  }
  const double k = config.wavenumber();
  const double phase_step = config.slit_separation * k * x / config.focal_length;
  cxd amp(0.0, 0.0);
  for (int l = 0; l < d; ++l) {
    amp += prepared[l] * std::conj(projector[l]) *
           std::polar(1.0, double(l) * phase_step);
  }
  const double env = sinc(k * x * config.slit_width / (2.0 * config.focal_length));
  return env * env * std::norm(amp);
}

std::vector<double> multiplex_positions(const OpticalConfig& config) {
  const double spacing = config.focal_length * config.wavelength /
                         (config.slit_separation * double(config.dim));
  std::vector<double> xs(static_cast<std::size_t>(config.dim));
  for (int m = 0; m < config.dim; ++m) {
    xs[static_cast<std::size_t>(m)] = spacing * double(m);
  }
  return xs;
}

std::vector<double> envelope_factors(const OpticalConfig& config) {
  const double ratio = config.slit_width / config.slit_separation;
  std::vector<double> factors(static_cast<std::size_t>(config.dim));
  for (int m = 0; m < config.dim; ++m) {
    const double u =
        std::numbers::pi * ratio * double(m) / double(config.dim);
    const double s = sinc(u);
    factors[static_cast<std::size_t>(m)] = s * s;
  }
  for (double f : factors) {
    if (f < 1e-6) {
      throw numerical_error(
          "envelope_factors: factor below 1e-6, calibration is ill-conditioned");
    }
  }
  return factors;
}

namespace {

InterferencePattern render_weighted(const OpticalConfig& config,
                                    const std::vector<QuditState>& states,
                                    const std::vector<double>& weights,
                                    const Eigen::VectorXcd& projector,
                                    int samples_per_period) {
  if (samples_per_period < 8) {
    throw validation_error("render_pattern: samples_per_period must be >= 8");
  }
  const int d = config.dim;
  const std::vector<double> xs = multiplex_positions(config);
  const double spacing = xs[1];
  const double step = spacing / double(samples_per_period);

  // Anchor the grid on x = 0 so every readout position x_m = m * spacing is
  // exactly the grid point with index m * samples_per_period + offset.
  const int margin = (samples_per_period + 1) / 2;
  const int i_min = -margin;
  const int i_max = (d - 1) * samples_per_period + margin;

  auto mixed_intensity = [&](double x) {
    double total = 0.0;
    for (std::size_t k = 0; k < states.size(); ++k) {
      total += weights[k] * intensity_at(config, states[k], projector, x);
    }
    return total;
  };

  InterferencePattern pattern{config, {}, {}, {}, xs, {}, 0.0};
  pattern.x_grid.reserve(static_cast<std::size_t>(i_max - i_min + 1));
  pattern.intensities.reserve(static_cast<std::size_t>(i_max - i_min + 1));
  for (int i = i_min; i <= i_max; ++i) {
    const double x = double(i) * step;
    pattern.x_grid.push_back(x);
    pattern.intensities.push_back(mixed_intensity(x));
  }
  pattern.multiplex_indices.resize(static_cast<std::size_t>(d));
  pattern.multiplex_intensities.resize(static_cast<std::size_t>(d));
  double multiplex_sum = 0.0;
  for (int m = 0; m < d; ++m) {
    pattern.multiplex_indices[static_cast<std::size_t>(m)] =
        m * samples_per_period + margin;
    const double exact = mixed_intensity(xs[static_cast<std::size_t>(m)]);
    pattern.multiplex_intensities[static_cast<std::size_t>(m)] = exact;
    multiplex_sum += exact;
  }
  double grid_sum = 0.0;
  for (double v : pattern.intensities) grid_sum += v;
  pattern.multiplex_power_fraction = grid_sum > 0.0 ? multiplex_sum / grid_sum : 0.0;
  return pattern;
}

}  // namespace

InterferencePattern render_pattern(const OpticalConfig& config,
                                   const QuditState& prepared,
                                   const Eigen::VectorXcd& projector,
                                   int samples_per_period) {
  return render_weighted(config, {prepared}, {1.0}, projector,
                         samples_per_period);
}

InterferencePattern render_pattern(const OpticalConfig& config,
                                   const DensityMatrix& rho,
                                   const Eigen::VectorXcd& projector,
                                   int samples_per_period) {
  if (rho.dim() != config.dim) {
    throw validation_error("render_pattern: dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix());
  std::vector<QuditState> states;
  std::vector<double> weights;
  for (int k = 0; k < rho.dim(); ++k) {
    const double w = es.eigenvalues()(k);
    if (w <= kEigenvalueTol) continue;
    states.push_back(QuditState::normalized(es.eigenvectors().col(k)));
    weights.push_back(w);
  }
  if (states.empty()) {
    throw numerical_error("render_pattern: state has no positive weight");
  }
  return render_weighted(config, states, weights, projector,
                         samples_per_period);
}

std::vector<double> extract_probabilities(const InterferencePattern& pattern) {
  const int d = pattern.config.dim;
  const std::vector<double> env = envelope_factors(pattern.config);
  std::vector<double> probs(static_cast<std::size_t>(d), 0.0);
  double total = 0.0;
  for (int m = 0; m < d; ++m) {
    const double corrected =
        pattern.multiplex_intensities[static_cast<std::size_t>(m)] /
        env[static_cast<std::size_t>(m)];
    // The phase twist accumulated at +x_m is conjugate to the twist that
    // defines basis element m, so position m reads out element (d - m) % d.
    probs[static_cast<std::size_t>((d - m) % d)] = corrected;
    total += corrected;
  }
  if (!(total > 0.0)) {
    throw numerical_error(
        "extract_probabilities: pattern is dark at every readout position");
  }
  for (double& p : probs) p /= total;
  return probs;
}

std::vector<double> canonical_readout(const QuditState& prepared,
                                      const std::vector<double>& efficiencies) {
  const int d = prepared.dim();
  if (static_cast<int>(efficiencies.size()) != d) {
    throw validation_error("canonical_readout: dimension mismatch");
  }
  for (double eta : efficiencies) {
    if (!(eta > 0.0)) {
      throw validation_error("canonical_readout: efficiencies must be positive");
    }
  }
  // Raw slit intensities, then the flat-mask calibration that divides the
  // per-slit efficiency back out.
  std::vector<double> corrected(static_cast<std::size_t>(d));
  double total = 0.0;
  for (int l = 0; l < d; ++l) {
    const double raw = efficiencies[static_cast<std::size_t>(l)] *
                       std::norm(prepared[l]);
    const double calib = efficiencies[static_cast<std::size_t>(l)] / double(d);
    corrected[static_cast<std::size_t>(l)] = raw / calib;
    total += corrected[static_cast<std::size_t>(l)];
  }
  if (!(total > 0.0)) {
    throw numerical_error("canonical_readout: zero total intensity");
  }
  for (double& p : corrected) p /= total;
  return corrected;
}

}  // namespace qtom
