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
#include <string>

#include <json.hpp>

#include "qtom/experiments.hpp"

namespace qtom {

// States and density matrices share one schema:
//   {"dim": d, "re": ..., "im": ...}
// with flat length-d arrays for states and row-major d x d nested arrays
// for density matrices.
nlohmann::json state_to_json(const QuditState& state);
nlohmann::json density_to_json(const DensityMatrix& rho);

/// True when "re" holds nested arrays (a matrix) rather than scalars.
bool json_holds_density(const nlohmann::json& j);

QuditState state_from_json(const nlohmann::json& j);
DensityMatrix density_from_json(const nlohmann::json& j);

/// Load either form as a density matrix; pure states are lifted via
/// density_from_pure. State vectors are renormalized on load.
DensityMatrix density_or_state_from_json(const nlohmann::json& j);

// Tomography sets: {"dim", "rng_seed", "condition_number",
// "seeds": [{"label", "re": [...], "im": [...]}, ...]} for J = 1..d; the
// canonical basis J=0 is implied. Loading regenerates the bases and the
// measurement matrix from the seeds.
nlohmann::json set_to_json(const TomographySet& set);
TomographySet set_from_json(const nlohmann::json& j);

/// FNV-1a 64 over the set's canonical (compact, sorted-key) JSON dump.
std::string set_hash(const TomographySet& set);

// Probability tables: CSV with header "p0,...,p{d-1}", one row per setting
// in basis order, plus a JSON sidecar with the counts and the hash of the
// set the table was measured against.
std::string table_to_csv(const ProbabilityTable& table);
ProbabilityTable table_from_csv(const std::string& csv);
nlohmann::json table_sidecar_json(const ProbabilityTable& table,
                                  const std::string& set_hash_hex,
                                  std::uint64_t rng_seed,
                                  std::int64_t photons_per_setting);

// Patterns: CSV with header "x_m,intensity", one row per grid point, plus a
// sidecar listing the readout positions, envelope factors, exact readout
// intensities and the multiplexed-power diagnostic.
std::string pattern_to_csv(const InterferencePattern& pattern);
nlohmann::json pattern_sidecar_json(const InterferencePattern& pattern);

nlohmann::json report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const nlohmann::json& j);

std::uint64_t fnv1a64(std::string_view bytes);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace qtom
