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

#include "qtom/core.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qtom {

namespace {

void check_dim(int d) {
  if (d < 2) {
    throw validation_error("dimension must be at least 2, got " +
                           std::to_string(d));
  }
}

// PSD square root via spectral decomposition. Eigenvalues below the
// relative noise floor are treated as exact zeros; otherwise solver
// residue of order 1e-17 turns into 1e-8-scale sqrt contributions and
// ruins the accuracy of fidelities involving rank-deficient states.
Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
  if (es.info() != Eigen::Success) {
    throw numerical_error("eigendecomposition failed");
  }
  Eigen::VectorXd lam = es.eigenvalues();
  const double floor = 1e-14 * std::max(lam.maxCoeff(), 0.0);
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    lam(i) = lam(i) > floor ? std::sqrt(lam(i)) : 0.0;
  }
  return es.eigenvectors() * lam.asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace

QuditState::QuditState(Eigen::VectorXcd amplitudes)
    : amps_(std::move(amplitudes)) {
  check_dim(dim());
  const double norm2 = amps_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTol) {
    throw validation_error("state is not normalized: |psi|^2 = " +
                           std::to_string(norm2));
  }
}

QuditState QuditState::normalized(const Eigen::VectorXcd& raw) {
  check_dim(static_cast<int>(raw.size()));
  const double norm = raw.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw validation_error("cannot normalize a zero or non-finite vector");
  }
  return QuditState(raw / norm);
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd elements) : m_(std::move(elements)) {
  if (m_.rows() != m_.cols()) {
    throw validation_error("density matrix must be square");
  }
  check_dim(dim());
  const double herm_err = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err > kHermitianTol) {
    throw validation_error("matrix is not Hermitian: max |rho - rho^+| = " +
                           std::to_string(herm_err));
  }
  const cxd tr = m_.trace();
  if (std::abs(tr - cxd(1.0, 0.0)) > kTraceTol) {
    throw validation_error("matrix trace is not 1");
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int d) {
  check_dim(d);
  return DensityMatrix(Eigen::MatrixXcd::Identity(d, d) / double(d));
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

DensityMatrix density_from_pure(const QuditState& state) {
  const Eigen::VectorXcd& c = state.amplitudes();
  return DensityMatrix(c * c.adjoint());
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw validation_error("fidelity: dimension mismatch");
  }
  // Inputs must be physical; allow a little slack beyond the projection
  // floor for matrices assembled from long Monte Carlo sums.
  constexpr double psd_slack = 1e-8;
  if (rho.min_eigenvalue() < -psd_slack || sigma.min_eigenvalue() < -psd_slack) {
    throw validation_error("fidelity: input is not positive semidefinite");
  }
  // Tr sqrt(sqrt(rho) sigma sqrt(rho)) equals the nuclear norm of
  // sqrt(sigma) sqrt(rho); the SVD route is symmetric in the arguments and
  // accurate for near-singular inputs.
  const Eigen::MatrixXcd product = psd_sqrt(sigma.matrix()) * psd_sqrt(rho.matrix());
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(product);
  const double root_sum = svd.singularValues().sum();
  return root_sum * root_sum;
}

DensityMatrix project_to_physical(const Eigen::MatrixXcd& estimate) {
  if (estimate.rows() != estimate.cols()) {
    throw validation_error("project_to_physical: matrix must be square");
  }
  if (!estimate.allFinite()) {
    throw validation_error("project_to_physical: matrix has non-finite entries");
  }
  const Eigen::MatrixXcd herm = 0.5 * (estimate + estimate.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  if (es.info() != Eigen::Success) {
    throw numerical_error("project_to_physical: eigendecomposition failed");
  }
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  const double total = lam.sum();
  if (!(total > 0.0)) {
    throw numerical_error(
        "project_to_physical: no positive spectral weight remains");
  }
  lam /= total;
  Eigen::MatrixXcd rho = es.eigenvectors() * lam.asDiagonal() *
                         es.eigenvectors().adjoint();
  // Eliminate rounding residue so the DensityMatrix invariants hold exactly.
  rho = 0.5 * (rho + rho.adjoint().eval());
  rho *= 1.0 / rho.trace().real();
  return DensityMatrix(std::move(rho));
}

}  // namespace qtom
