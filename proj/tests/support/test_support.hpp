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
//
// Test-only helpers: random state generators and independent oracles.
// Nothing here may call the code paths it is used to check: singular values
// come from a hand-rolled one-sided Jacobi, Born probabilities from direct
// inner products.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "qtom/bases.hpp"
#include "qtom/core.hpp"
#include "qtom/rng.hpp"

namespace qtom::test {

inline double gaussian(Rng& rng) {
  const double u1 = 1.0 - rng.uniform();  // (0, 1]
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

inline QuditState random_pure_state(int d, Rng& rng) {
  Eigen::VectorXcd c(d);
  for (int l = 0; l < d; ++l) c[l] = cxd(gaussian(rng), gaussian(rng));
  return QuditState::normalized(c);
}

/// Full-rank random density matrix from a Ginibre draw G: rho = GG^+/tr.
inline DensityMatrix random_density_matrix(int d, Rng& rng) {
  Eigen::MatrixXcd g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = cxd(gaussian(rng), gaussian(rng));
  }
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho = 0.5 * (rho + rho.adjoint().eval());
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

/// Direct inner-product oracle: |<Phi_m|psi>|^2 for every element of a basis.
inline std::vector<double> born_probabilities(const QuditState& psi,
                                              const MeasurementBasis& basis) {
  std::vector<double> p(static_cast<std::size_t>(basis.dim()));
  for (int m = 0; m < basis.dim(); ++m) {
    cxd amp(0.0, 0.0);
    for (int l = 0; l < basis.dim(); ++l) {
      amp += std::conj(basis.vectors()(m, l)) * psi[l];
    }
    p[static_cast<std::size_t>(m)] = std::norm(amp);
  }
  return p;
}

/// Singular values by one-sided complex Jacobi, descending. Independent of
/// the Eigen-based implementation path.
inline std::vector<double> jacobi_singular_values(Eigen::MatrixXcd a) {
  const int n = static_cast<int>(a.cols());
  bool changed = true;
  for (int sweep = 0; sweep < 60 && changed; ++sweep) {
    changed = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cxd gamma = (a.col(p).adjoint() * a.col(q)).value();
        const double alpha = a.col(p).squaredNorm();
        const double beta = a.col(q).squaredNorm();
        if (std::abs(gamma) <= 1e-14 * std::sqrt(alpha * beta) + 1e-300) {
          continue;
        }
        changed = true;
        const double zeta = (beta - alpha) / (2.0 * std::abs(gamma));
        const double t = zeta >= 0.0
                             ? 1.0 / (zeta + std::sqrt(1.0 + zeta * zeta))
                             : -1.0 / (-zeta + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const cxd s = std::polar(c * t, std::arg(gamma));
        const Eigen::VectorXcd ap = a.col(p), aq = a.col(q);
        a.col(p) = c * ap - std::conj(s) * aq;
        a.col(q) = s * ap + c * aq;
      }
    }
  }
  std::vector<double> sv(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) sv[static_cast<std::size_t>(i)] = a.col(i).norm();
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

/// Kolmogorov-Smirnov distance of samples (already mapped to [0,1]) from
/// the uniform distribution.
inline double ks_statistic(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double u = samples[i];
    d = std::max(d, (double(i) + 1.0) / n - u);
    d = std::max(d, u - double(i) / n);
  }
  return d;
}

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qtom::test
