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
#include <optional>

#include "qtom/bases.hpp"
#include "qtom/core.hpp"
#include "qtom/optics.hpp"

namespace qtom {

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Projection probabilities, one row per experimental setting (basis),
/// one column per outcome. Every row is a complete projective measurement
/// and sums to 1.
struct ProbabilityTable {
  int dim = 0;
  Eigen::MatrixXd rows;  // (d+1) x d
  std::optional<CountMatrix> counts;  // raw photocounts, when sampled
  int settings_used = 0;  // d+1 multiplexed, d(d+1) traditional

  /// Throws validation_error unless rows are (d+1) x d probability vectors
  /// (entries in [0,1], row sums 1 within 1e-9).
  void validate() const;
};

/// Born probabilities p_m^J = Tr(rho |Phi_m^J><Phi_m^J|) for every basis in
/// the set. Rows sum to 1 within 1e-12.
ProbabilityTable forward_probabilities(const DensityMatrix& rho,
                                       const TomographySet& set);

struct InversionResult {
  Eigen::MatrixXcd estimate;  // Hermitized, possibly indefinite
  double residual_norm;       // || M vec(rho) - p ||_2
};

/// Least-squares solve of the overdetermined system p = M vec(rho). Rows of
/// the table are renormalized to sum 1 first (the per-setting normalization
/// applied to measured data). The estimate is Hermitized but not projected.
/// Throws numerical_error if M is rank-deficient.
InversionResult linear_inversion(const ProbabilityTable& table,
                                 const TomographySet& set);

/// linear_inversion followed by project_to_physical. Returns the inversion
/// estimate unchanged (up to rounding) when it is already physical.
DensityMatrix reconstruct(const ProbabilityTable& table,
                          const TomographySet& set);

/// One-projector-per-setting baseline: for each basis element the intensity
/// is read at the pattern center only, then normalized within the basis.
/// Noiselessly identical to forward_probabilities, but uses d(d+1) settings
/// instead of d+1.
ProbabilityTable traditional_scheme(const DensityMatrix& rho,
                                    const TomographySet& set,
                                    const OpticalConfig& config);

}  // namespace qtom
