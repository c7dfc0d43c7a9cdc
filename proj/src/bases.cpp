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

#include "qtom/bases.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/SVD>

namespace qtom {

std::vector<cxd> root_of_unity_powers(int d) {
  if (d < 2) {
    throw validation_error("root_of_unity_powers: dimension must be >= 2");
  }
  std::vector<cxd> pow(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    pow[static_cast<std::size_t>(k)] =
        std::polar(1.0, 2.0 * std::numbers::pi * double(k) / double(d));
  }
  return pow;
}

bool is_flat_seed(const Eigen::VectorXcd& seed, double tol) {
  const int d = static_cast<int>(seed.size());
  if (d < 2) return false;
  const double target = 1.0 / double(d);
  for (int l = 0; l < d; ++l) {
    if (std::abs(std::norm(seed[l]) - target) > tol) return false;
  }
  return true;
}

Eigen::VectorXcd reflattened(const Eigen::VectorXcd& seed) {
  const int d = static_cast<int>(seed.size());
  if (d < 2) {
    throw validation_error("reflattened: dimension must be >= 2");
  }
  const double target = 1.0 / std::sqrt(double(d));
  Eigen::VectorXcd out(d);
  for (int l = 0; l < d; ++l) {
    const double mod = std::abs(seed[l]);
    if (!(mod > 0.0)) {
      throw validation_error("reflattened: zero component has no phase");
    }
    out[l] = seed[l] * (target / mod);
  }
  return out;
}

double MeasurementBasis::gram_error() const {
  const Eigen::MatrixXcd gram = vectors_.conjugate() * vectors_.transpose();
  return (gram - Eigen::MatrixXcd::Identity(dim(), dim())).cwiseAbs().maxCoeff();
}

MeasurementBasis generate_basis(const Eigen::VectorXcd& seed, int label) {
  const int d = static_cast<int>(seed.size());
  if (d < 2) {
    throw validation_error("generate_basis: dimension must be >= 2");
  }
  if (!is_flat_seed(seed)) {
    throw validation_error(
        "generate_basis: seed amplitudes are not flat (|b_l|^2 != 1/d)");
  }
  const std::vector<cxd> omega = root_of_unity_powers(d);
  Eigen::MatrixXcd vectors(d, d);
  for (int m = 0; m < d; ++m) {
    for (int l = 0; l < d; ++l) {
      vectors(m, l) = seed[l] * omega[static_cast<std::size_t>((m * l) % d)];
    }
  }
  return MeasurementBasis(label, seed, std::move(vectors));
}

MeasurementBasis canonical_basis(int d) {
  if (d < 2) {
    throw validation_error("canonical_basis: dimension must be >= 2");
  }
  Eigen::VectorXcd seed = Eigen::VectorXcd::Zero(d);
  seed[0] = cxd(1.0, 0.0);
  return MeasurementBasis(0, std::move(seed), Eigen::MatrixXcd::Identity(d, d));
}

Eigen::VectorXcd random_flat_seed(int d, Rng& rng) {
  if (d < 2) {
    throw validation_error("random_flat_seed: dimension must be >= 2");
  }
  const double mod = 1.0 / std::sqrt(double(d));
  Eigen::VectorXcd seed(d);
  for (int l = 0; l < d; ++l) {
    seed[l] = std::polar(mod, rng.uniform(0.0, 2.0 * std::numbers::pi));
  }
  return seed;
}

Eigen::MatrixXcd measurement_matrix(const std::vector<MeasurementBasis>& bases) {
  if (bases.empty()) {
    throw validation_error("measurement_matrix: no bases given");
  }
  const int d = bases.front().dim();
  if (static_cast<int>(bases.size()) != d + 1) {
    throw validation_error("measurement_matrix: expected d+1 bases");
  }
  Eigen::MatrixXcd m(d * (d + 1), d * d);
  for (int j = 0; j <= d; ++j) {
    const MeasurementBasis& basis = bases[static_cast<std::size_t>(j)];
    if (basis.dim() != d) {
      throw validation_error("measurement_matrix: dimension mismatch");
    }
    for (int row = 0; row < d; ++row) {
      // p = sum_ij conj(Phi_i) rho_ij Phi_j, with vec(rho) row-major.
      for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k) {
          m(j * d + row, i * d + k) =
              std::conj(basis.vectors()(row, i)) * basis.vectors()(row, k);
        }
      }
    }
  }
  return m;
}

double condition_number(const Eigen::MatrixXcd& m) {
  if (m.size() == 0 || m.cwiseAbs().maxCoeff() == 0.0) {
    throw validation_error("condition_number: matrix is empty or zero");
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (smin < 1e-14 * smax) {
    return std::numeric_limits<double>::infinity();
  }
  return smax / smin;
}

TomographySet make_tomography_set(int d,
                                  const std::vector<Eigen::VectorXcd>& seeds,
                                  std::uint64_t rng_seed) {
  if (static_cast<int>(seeds.size()) != d) {
    throw validation_error("make_tomography_set: expected d seed vectors");
  }
  TomographySet set;
  set.dim = d;
  set.rng_seed = rng_seed;
  set.bases.reserve(static_cast<std::size_t>(d) + 1);
  set.bases.push_back(canonical_basis(d));
  for (int j = 1; j <= d; ++j) {
    set.bases.push_back(generate_basis(seeds[static_cast<std::size_t>(j - 1)], j));
  }
  set.measurement = measurement_matrix(set.bases);
  set.condition = condition_number(set.measurement);
  if (!std::isfinite(set.condition)) {
    throw numerical_error("make_tomography_set: measurement matrix is singular");
  }
  return set;
}

TomographySet build_tomography_set(int d, int trials, std::uint64_t seed) {
  if (d < 2) {
    throw validation_error("build_tomography_set: dimension must be >= 2");
  }
  if (trials < 1) {
    throw validation_error("build_tomography_set: trials must be >= 1");
  }
  Rng rng(seed);
  const Eigen::VectorXcd uniform_seed =
      Eigen::VectorXcd::Constant(d, cxd(1.0 / std::sqrt(double(d)), 0.0));

  bool found = false;
  TomographySet best;
  std::vector<double> trial_log;
  trial_log.reserve(static_cast<std::size_t>(trials));

  for (int t = 0; t < trials; ++t) {
    std::vector<Eigen::VectorXcd> seeds;
    seeds.reserve(static_cast<std::size_t>(d));
    seeds.push_back(uniform_seed);
    for (int j = 2; j <= d; ++j) {
      seeds.push_back(random_flat_seed(d, rng));
    }
    std::vector<MeasurementBasis> bases;
    bases.push_back(canonical_basis(d));
    for (int j = 1; j <= d; ++j) {
      bases.push_back(generate_basis(seeds[static_cast<std::size_t>(j - 1)], j));
    }
    Eigen::MatrixXcd m = measurement_matrix(bases);
    const double cond = condition_number(m);
    trial_log.push_back(cond);
    if (!std::isfinite(cond)) continue;
    // Strict less-than keeps the earliest among equal candidates.
    if (!found || cond < best.condition) {
      found = true;
      best.dim = d;
      best.bases = std::move(bases);
      best.measurement = std::move(m);
      best.condition = cond;
    }
  }
  if (!found) {
    throw numerical_error(
        "build_tomography_set: every trial produced a singular system");
  }
  best.rng_seed = seed;
  best.trial_log = std::move(trial_log);
  return best;
}

const std::array<std::array<cxd, 6>, 6>& paper_d6_raw_seeds() {
  // Published seed vectors for the d=6 set, real/imaginary parts quoted to
  // three decimals. J=1 is the uniform seed; the rest were drawn at random
  // and kept for their condition number.
  static const std::array<std::array<cxd, 6>, 6> seeds = {{
      {{{0.408, 0.000}, {0.408, 0.000}, {0.408, 0.000},
        {0.408, 0.000}, {0.408, 0.000}, {0.408, 0.000}}},
      {{{0.203, 0.354}, {0.043, 0.406}, {0.010, 0.408},
        {0.396, -0.100}, {0.406, 0.042}, {-0.302, 0.274}}},
      {{{-0.400, 0.082}, {-0.359, 0.194}, {0.301, -0.276},
        {-0.408, 0.016}, {0.380, 0.148}, {0.364, -0.185}}},
      {{{-0.218, -0.345}, {-0.001, -0.408}, {-0.406, 0.043},
        {-0.015, 0.408}, {0.038, 0.407}, {-0.332, -0.238}}},
      {{{-0.392, 0.115}, {0.071, -0.402}, {0.034, 0.407},
        {0.209, -0.351}, {0.121, -0.390}, {-0.402, 0.070}}},
      {{{0.149, 0.380}, {-0.037, 0.407}, {0.076, -0.401},
        {0.352, -0.207}, {0.408, 0.012}, {-0.050, -0.405}}},
  }};
  return seeds;
}

TomographySet load_paper_bases_d6() {
  const auto& raw = paper_d6_raw_seeds();
  std::vector<Eigen::VectorXcd> seeds;
  seeds.reserve(6);
  for (const auto& row : raw) {
    Eigen::VectorXcd seed(6);
    for (int l = 0; l < 6; ++l) seed[l] = row[static_cast<std::size_t>(l)];
    seeds.push_back(reflattened(seed));
  }
  return make_tomography_set(6, seeds, 0);
}

}  // namespace qtom
