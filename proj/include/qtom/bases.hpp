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

#include <array>
#include <cstdint>
#include <vector>

#include "qtom/rng.hpp"
#include "qtom/types.hpp"

namespace qtom {

/// Powers omega^0 .. omega^(d-1) of the first d-th root of unity
/// omega = exp(i 2 pi / d).
std::vector<cxd> root_of_unity_powers(int d);

/// True when every component satisfies |b_l|^2 = 1/d within tol.
bool is_flat_seed(const Eigen::VectorXcd& seed, double tol = kFlatSeedTol);

/// Rescale every component to modulus exactly 1/sqrt(d), preserving phases.
/// Used for seed vectors quoted to finite precision.
Eigen::VectorXcd reflattened(const Eigen::VectorXcd& seed);

/// One projective measurement basis. Element m has components
/// b_l * omega^(m*l), which is an orthonormal family whenever the seed b
/// has flat amplitudes |b_l|^2 = 1/d.
class MeasurementBasis {
 public:
  int dim() const { return static_cast<int>(seed_.size()); }
  int label() const { return label_; }
  const Eigen::VectorXcd& seed() const { return seed_; }

  /// Row m = element |Phi_m>.
  const Eigen::MatrixXcd& vectors() const { return vectors_; }
  Eigen::VectorXcd element(int m) const { return vectors_.row(m).transpose(); }

  /// Max deviation of the Gram matrix from the identity.
  double gram_error() const;

  friend MeasurementBasis generate_basis(const Eigen::VectorXcd& seed, int label);
  friend MeasurementBasis canonical_basis(int d);

 private:
  MeasurementBasis(int label, Eigen::VectorXcd seed, Eigen::MatrixXcd vectors)
      : label_(label), seed_(std::move(seed)), vectors_(std::move(vectors)) {}

  int label_;
  Eigen::VectorXcd seed_;
  Eigen::MatrixXcd vectors_;
};

/// Build the d-element basis spanned by twisting a flat-amplitude seed with
/// root-of-unity phases. Rejects seeds violating |b_l|^2 = 1/d.
MeasurementBasis generate_basis(const Eigen::VectorXcd& seed, int label);

/// The logical basis {|l>}, label 0. Its seed is not flat; it is measured
/// through the per-slit readout rather than the interference pattern.
MeasurementBasis canonical_basis(int d);

/// Flat-amplitude seed (1/sqrt(d)) * exp(i theta_l) with phases uniform
/// on [0, 2 pi).
Eigen::VectorXcd random_flat_seed(int d, Rng& rng);

/// Stack the d(d+1) x d^2 measurement matrix: row (J, m) against vec(rho)
/// (row-major, column index i*d + j) yields Tr(rho |Phi_m^J><Phi_m^J|).
Eigen::MatrixXcd measurement_matrix(const std::vector<MeasurementBasis>& bases);

/// sigma_max / sigma_min of a rectangular matrix. Returns +inf when
/// sigma_min < 1e-14 * sigma_max.
double condition_number(const Eigen::MatrixXcd& m);

/// An informationally complete set of d+1 bases plus its measurement matrix.
struct TomographySet {
  int dim = 0;
  std::vector<MeasurementBasis> bases;  // [0] canonical, [J] from seed J
  Eigen::MatrixXcd measurement;         // d(d+1) x d^2
  double condition = 0.0;
  std::uint64_t rng_seed = 0;
  std::vector<double> trial_log;  // per-trial condition numbers (build only)

  const MeasurementBasis& basis(int j) const { return bases.at(j); }
  int settings() const { return dim + 1; }
};

/// Assemble a set from explicit seeds for J = 1..d (canonical basis is
/// implied). Throws numerical_error if the measurement matrix is singular.
TomographySet make_tomography_set(int d,
                                  const std::vector<Eigen::VectorXcd>& seeds,
                                  std::uint64_t rng_seed);

/// Draw `trials` candidate sets (canonical + uniform-seed Fourier basis +
/// d-1 random flat seeds each) and keep the one with the smallest condition
/// number; ties break toward the earliest trial. Deterministic in `seed`.
TomographySet build_tomography_set(int d, int trials, std::uint64_t seed);

/// The six published d=6 seed vectors, quoted to three decimals.
const std::array<std::array<cxd, 6>, 6>& paper_d6_raw_seeds();

/// Bundled d=6 set built from paper_d6_raw_seeds(). The quoted values are
/// re-flattened to exact modulus 1/sqrt(6) before basis generation, since
/// three-decimal rounding breaks orthonormality at the 1e-3 level.
TomographySet load_paper_bases_d6();

}  // namespace qtom
