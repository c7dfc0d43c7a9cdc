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

#include <vector>

#include "qtom/core.hpp"
#include "qtom/types.hpp"

namespace qtom {

/// sin(u)/u with the removable singularity filled in; u in radians.
double sinc(double u);

/// Slit-array and imaging geometry. All lengths in meters.
struct OpticalConfig {
  double slit_width;      // a
  double slit_separation; // s, center to center
  double focal_length;    // f
  double wavelength;      // lambda
  int dim;                // d, number of slits

  OpticalConfig(double a, double s, double f, double lambda, int d);

  double wavenumber() const;  // k = 2 pi / lambda

  /// a = 50 um, s = 100 um, f = 0.15 m, lambda = 405 nm.
  static OpticalConfig default_for(int d);
};

/// Far-field intensity of the prepared state filtered by `projector` at
/// focal-plane position x:
///   I(x) = sinc^2(k x a / 2f) |sum_l c_l conj(b_l) exp(i l s k x / f)|^2.
/// At x = 0 this is exactly |<b|psi>|^2.
double intensity_at(const OpticalConfig& config, const QuditState& prepared,
                    const Eigen::VectorXcd& projector, double x);

/// The d readout positions x_m = f lambda m / (s d), m = 0..d-1: the central
/// maximum plus the d-1 minima of the equal-amplitude pattern.
std::vector<double> multiplex_positions(const OpticalConfig& config);

/// Diffraction-envelope attenuation sinc^2(pi (a/s) (m/d)) at each readout
/// position. Factor 0 is exactly 1. Throws numerical_error if any factor
/// falls below 1e-6 (calibration would amplify noise unboundedly).
std::vector<double> envelope_factors(const OpticalConfig& config);

/// A sampled pattern plus the exact intensities at the readout positions.
/// The grid exists for export and plotting; probability extraction uses the
/// analytic multiplex intensities, so grid resolution never touches the
/// tomography path.
struct InterferencePattern {
  OpticalConfig config;
  std::vector<double> x_grid;               // strictly increasing
  std::vector<double> intensities;          // same length as x_grid
  std::vector<int> multiplex_indices;       // grid index of each x_m
  std::vector<double> multiplex_positions;  // exact x_m
  std::vector<double> multiplex_intensities;  // I(x_m), analytic
  double multiplex_power_fraction;  // sum of multiplex I / sum of grid I
};

/// Sample the pattern on a uniform grid covering
/// [-x_1/2, x_(d-1) + x_1/2] with `samples_per_period` points per readout
/// spacing (>= 8). Every readout position lands exactly on a grid point.
InterferencePattern render_pattern(const OpticalConfig& config,
                                   const QuditState& prepared,
                                   const Eigen::VectorXcd& projector,
                                   int samples_per_period);

/// Mixed-state pattern: intensity is linear in rho, so this is the
/// eigenvalue-weighted sum of the eigenstate patterns.
InterferencePattern render_pattern(const OpticalConfig& config,
                                   const DensityMatrix& rho,
                                   const Eigen::VectorXcd& projector,
                                   int samples_per_period);

/// Envelope-corrected probabilities of projecting onto each element of the
/// basis generated by the pattern's projector seed. Position m carries the
/// outcome whose phase twist is conjugate, i.e. basis element (d-m) mod d;
/// the result is reported in basis-element order so that entry m equals
/// |<Phi_m|Psi>|^2. Output sums to 1.
std::vector<double> extract_probabilities(const InterferencePattern& pattern);

/// Per-slit readout for the canonical basis (the one basis that cannot be
/// multiplexed along the pattern). Models the grating scheme as raw
/// intensities eta_l |c_l|^2 corrected by a flat-state calibration run, so
/// the efficiencies cancel and the result is |c_l|^2 up to normalization.
std::vector<double> canonical_readout(const QuditState& prepared,
                                      const std::vector<double>& efficiencies);

}  // namespace qtom
