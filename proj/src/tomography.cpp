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

#include "qtom/tomography.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace qtom {

void ProbabilityTable::validate() const {
  if (dim < 2 || rows.rows() != dim + 1 || rows.cols() != dim) {
    throw validation_error("probability table must be (d+1) x d with d >= 2");
  }
  for (int j = 0; j <= dim; ++j) {
    double sum = 0.0;
    for (int m = 0; m < dim; ++m) {
      const double p = rows(j, m);
      if (!(p >= 0.0) || p > 1.0 + 1e-12) {
        throw validation_error("probability table entry outside [0, 1]");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw validation_error("probability table row does not sum to 1");
    }
  }
}

ProbabilityTable forward_probabilities(const DensityMatrix& rho,
                                       const TomographySet& set) {
  const int d = set.dim;
  if (rho.dim() != d) {
    throw validation_error("forward_probabilities: dimension mismatch");
  }
  ProbabilityTable table;
  table.dim = d;
  table.settings_used = d + 1;
  table.rows.resize(d + 1, d);
  for (int j = 0; j <= d; ++j) {
    const Eigen::MatrixXcd& vecs = set.basis(j).vectors();
    for (int m = 0; m < d; ++m) {
      const Eigen::VectorXcd phi = vecs.row(m).transpose();
      const double p = (phi.adjoint() * rho.matrix() * phi).value().real();
      table.rows(j, m) = p < 0.0 ? 0.0 : p;  // clip -1e-17 class residue
    }
  }
  return table;
}

InversionResult linear_inversion(const ProbabilityTable& table,
                                 const TomographySet& set) {
  table.validate();
  const int d = set.dim;
  if (table.dim != d) {
    throw validation_error("linear_inversion: dimension mismatch");
  }
  const Eigen::MatrixXcd& m = set.measurement;

  // Per-setting renormalization, as applied to measured intensity data.
  Eigen::VectorXcd p(d * (d + 1));
  for (int j = 0; j <= d; ++j) {
    const double row_sum = table.rows.row(j).sum();
    for (int i = 0; i < d; ++i) {
      p(j * d + i) = cxd(table.rows(j, i) / row_sum, 0.0);
    }
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(m);
  if (qr.rank() < d * d) {
    throw numerical_error(
        "linear_inversion: measurement set is not informationally complete");
  }
  const Eigen::VectorXcd x = qr.solve(p);
  const double residual = (m * x - p).norm();

  Eigen::MatrixXcd estimate(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      estimate(i, j) = x(i * d + j);
    }
  }
  estimate = 0.5 * (estimate + estimate.adjoint().eval());
  return InversionResult{std::move(estimate), residual};
}

DensityMatrix reconstruct(const ProbabilityTable& table,
                          const TomographySet& set) {
  return project_to_physical(linear_inversion(table, set).estimate);
}

ProbabilityTable traditional_scheme(const DensityMatrix& rho,
                                    const TomographySet& set,
                                    const OpticalConfig& config) {
  const int d = set.dim;
  if (rho.dim() != d || config.dim != d) {
    throw validation_error("traditional_scheme: dimension mismatch");
  }
  // Decompose once; the center intensity of a mixed state is the weighted
  // sum over any eigen-ensemble.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix());
  std::vector<QuditState> states;
  std::vector<double> weights;
  for (int k = 0; k < d; ++k) {
    const double w = es.eigenvalues()(k);
    if (w <= kEigenvalueTol) continue;
    states.push_back(QuditState::normalized(es.eigenvectors().col(k)));
    weights.push_back(w);
  }
  ProbabilityTable table;
  table.dim = d;
  table.settings_used = d * (d + 1);
  table.rows.resize(d + 1, d);
  for (int j = 0; j <= d; ++j) {
    double row_sum = 0.0;
    for (int m = 0; m < d; ++m) {
      const Eigen::VectorXcd projector = set.basis(j).element(m);
      double intensity = 0.0;
      for (std::size_t k = 0; k < states.size(); ++k) {
        intensity += weights[k] * intensity_at(config, states[k], projector, 0.0);
      }
      table.rows(j, m) = intensity;
      row_sum += intensity;
    }
    if (!(row_sum > 0.0)) {
      throw numerical_error("traditional_scheme: dark basis row");
    }
    table.rows.row(j) /= row_sum;
  }
  return table;
}

}  // namespace qtom
