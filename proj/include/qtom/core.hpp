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

#include "qtom/types.hpp"

namespace qtom {

/// Pure qudit state: a normalized vector of d complex slit transmissivities.
class QuditState {
 public:
  /// Requires dim >= 2 and unit norm within kNormTol.
  explicit QuditState(Eigen::VectorXcd amplitudes);

  /// Rescales `raw` to unit norm first; rejects the zero vector.
  static QuditState normalized(const Eigen::VectorXcd& raw);

  int dim() const { return static_cast<int>(amps_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  cxd operator[](Eigen::Index l) const { return amps_[l]; }

 private:
  Eigen::VectorXcd amps_;
};

/// d x d Hermitian, unit-trace operator. Positive semidefiniteness is not
/// enforced at construction (linear inversion legitimately produces
/// indefinite estimates before projection); callers that need it use
/// project_to_physical or min_eigenvalue.
class DensityMatrix {
 public:
  /// Requires dim >= 2, Hermiticity within kHermitianTol elementwise and
  /// trace 1 within kTraceTol.
  explicit DensityMatrix(Eigen::MatrixXcd elements);

  static DensityMatrix maximally_mixed(int d);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  cxd operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  double min_eigenvalue() const;

 private:
  Eigen::MatrixXcd m_;
};

/// rho = |psi><psi|, i.e. rho_ij = c_i conj(c_j). Rank one, trace one.
DensityMatrix density_from_pure(const QuditState& state);

/// Uhlmann fidelity F = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
/// Symmetric, 1 iff rho == sigma, and equal to <psi|rho|psi> when sigma is
/// the pure state |psi><psi|. Both inputs must be physical (PSD within
/// tolerance, unit trace).
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Nearest physical state by spectral clipping: Hermitize, clip negative
/// eigenvalues to zero, renormalize the trace. Idempotent on inputs that
/// are already physical. Throws numerical_error if nothing survives the
/// clipping (entirely non-positive spectrum).
DensityMatrix project_to_physical(const Eigen::MatrixXcd& estimate);

}  // namespace qtom
