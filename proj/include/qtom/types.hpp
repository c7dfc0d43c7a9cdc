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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qtom {

using cxd = std::complex<double>;

/// Bad input: wrong dimensions, broken invariants, malformed files.
/// Mapped to exit code 2 by the CLI.
struct validation_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A computation that cannot proceed: singular systems, degenerate
/// patterns, all-negative spectra. Mapped to exit code 3 by the CLI.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tolerances shared across modules.
inline constexpr double kNormTol = 1e-12;       // state normalization
inline constexpr double kHermitianTol = 1e-12;  // elementwise Hermiticity
inline constexpr double kTraceTol = 1e-12;      // unit trace
inline constexpr double kEigenvalueTol = 1e-10; // physicality floor
inline constexpr double kFlatSeedTol = 1e-9;    // |b_l|^2 = 1/d check

}  // namespace qtom
