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

#include "qtom/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qtom {

namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json require(const json& j, const char* key) {
  if (!j.contains(key)) {
    throw validation_error(std::string("missing JSON key: ") + key);
  }
  return j.at(key);
}

}  // namespace

json state_to_json(const QuditState& state) {
  json re = json::array(), im = json::array();
  for (int l = 0; l < state.dim(); ++l) {
    re.push_back(state[l].real());
    im.push_back(state[l].imag());
  }
  return json{{"dim", state.dim()}, {"re", re}, {"im", im}};
}

json density_to_json(const DensityMatrix& rho) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < rho.dim(); ++i) {
    json re_row = json::array(), im_row = json::array();
    for (int j = 0; j < rho.dim(); ++j) {
      re_row.push_back(rho(i, j).real());
      im_row.push_back(rho(i, j).imag());
    }
    re.push_back(re_row);
    im.push_back(im_row);
  }
  return json{{"dim", rho.dim()}, {"re", re}, {"im", im}};
}

bool json_holds_density(const json& j) {
  const json re = require(j, "re");
  // A density matrix is d x d nested with d >= 2; a single nested row is a
  // state vector written in matrix form.
  return re.is_array() && re.size() > 1 && re.front().is_array();
}

QuditState state_from_json(const json& j) {
  const int d = require(j, "dim").get<int>();
  json re = require(j, "re"), im = require(j, "im");
  // Accept a single-row nested form as well as flat arrays.
  if (!re.empty() && re.front().is_array() && re.size() == 1) {
    re = re.front();
    im = im.front();
  }
  if (static_cast<int>(re.size()) != d || static_cast<int>(im.size()) != d) {
    throw validation_error("state JSON: re/im length does not match dim");
  }
  Eigen::VectorXcd c(d);
  for (int l = 0; l < d; ++l) {
    c[l] = cxd(re.at(l).get<double>(), im.at(l).get<double>());
  }
  return QuditState::normalized(c);
}

DensityMatrix density_from_json(const json& j) {
  const int d = require(j, "dim").get<int>();
  const json re = require(j, "re"), im = require(j, "im");
  if (static_cast<int>(re.size()) != d || static_cast<int>(im.size()) != d) {
    throw validation_error("density JSON: row count does not match dim");
  }
  Eigen::MatrixXcd m(d, d);
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(re.at(i).size()) != d ||
        static_cast<int>(im.at(i).size()) != d) {
      throw validation_error("density JSON: column count does not match dim");
    }
    for (int k = 0; k < d; ++k) {
      m(i, k) = cxd(re.at(i).at(k).get<double>(), im.at(i).at(k).get<double>());
    }
  }
  return DensityMatrix(std::move(m));
}

DensityMatrix density_or_state_from_json(const json& j) {
  if (json_holds_density(j)) return density_from_json(j);
  return density_from_pure(state_from_json(j));
}

json set_to_json(const TomographySet& set) {
  json seeds = json::array();
  for (int j = 1; j <= set.dim; ++j) {
    const MeasurementBasis& basis = set.basis(j);
    json re = json::array(), im = json::array();
    for (int l = 0; l < set.dim; ++l) {
      re.push_back(basis.seed()[l].real());
      im.push_back(basis.seed()[l].imag());
    }
    seeds.push_back(json{{"label", j}, {"re", re}, {"im", im}});
  }
  return json{{"dim", set.dim},
              {"rng_seed", set.rng_seed},
              {"condition_number", set.condition},
              {"seeds", seeds}};
}

TomographySet set_from_json(const json& j) {
  const int d = require(j, "dim").get<int>();
  const json seeds_json = require(j, "seeds");
  if (static_cast<int>(seeds_json.size()) != d) {
    throw validation_error("set JSON: expected d seed vectors");
  }
  std::vector<Eigen::VectorXcd> seeds(static_cast<std::size_t>(d));
  std::vector<bool> seen(static_cast<std::size_t>(d), false);
  for (const json& entry : seeds_json) {
    const int label = require(entry, "label").get<int>();
    if (label < 1 || label > d) {
      throw validation_error("set JSON: seed label out of range");
    }
    const json re = require(entry, "re"), im = require(entry, "im");
    if (static_cast<int>(re.size()) != d || static_cast<int>(im.size()) != d) {
      throw validation_error("set JSON: seed length does not match dim");
    }
    Eigen::VectorXcd seed(d);
    for (int l = 0; l < d; ++l) {
      seed[l] = cxd(re.at(l).get<double>(), im.at(l).get<double>());
    }
    seeds[static_cast<std::size_t>(label - 1)] = std::move(seed);
    seen[static_cast<std::size_t>(label - 1)] = true;
  }
  for (bool s : seen) {
    if (!s) throw validation_error("set JSON: missing seed label");
  }
  const std::uint64_t rng_seed =
      j.contains("rng_seed") ? j.at("rng_seed").get<std::uint64_t>() : 0;
  return make_tomography_set(d, seeds, rng_seed);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::string set_hash(const TomographySet& set) {
  const std::string canonical = set_to_json(set).dump();
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical)));
  return buf;
}

std::string table_to_csv(const ProbabilityTable& table) {
  std::ostringstream os;
  for (int m = 0; m < table.dim; ++m) {
    os << (m ? "," : "") << "p" << m;
  }
  os << "\n";
  for (int j = 0; j <= table.dim; ++j) {
    for (int m = 0; m < table.dim; ++m) {
      os << (m ? "," : "") << format_double(table.rows(j, m));
    }
    os << "\n";
  }
  return os.str();
}

ProbabilityTable table_from_csv(const std::string& csv) {
  std::istringstream is(csv);
  std::string line;
  if (!std::getline(is, line)) {
    throw validation_error("table CSV: empty file");
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw validation_error("table CSV: non-numeric cell '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw validation_error("table CSV: no data rows");
  const int d = static_cast<int>(rows.front().size());
  if (static_cast<int>(rows.size()) != d + 1) {
    throw validation_error("table CSV: expected d+1 rows of d outcomes");
  }
  ProbabilityTable table;
  table.dim = d;
  table.settings_used = d + 1;
  table.rows.resize(d + 1, d);
  for (int j = 0; j <= d; ++j) {
    if (static_cast<int>(rows[static_cast<std::size_t>(j)].size()) != d) {
      throw validation_error("table CSV: ragged rows");
    }
    for (int m = 0; m < d; ++m) {
      table.rows(j, m) = rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)];
    }
  }
  table.validate();
  return table;
}

json table_sidecar_json(const ProbabilityTable& table,
                        const std::string& set_hash_hex,
                        std::uint64_t rng_seed,
                        std::int64_t photons_per_setting) {
  json counts = json::array();
  if (table.counts) {
    for (int j = 0; j < table.counts->rows(); ++j) {
      json row = json::array();
      for (int m = 0; m < table.counts->cols(); ++m) {
        row.push_back((*table.counts)(j, m));
      }
      counts.push_back(row);
    }
  }
  return json{{"dim", table.dim},
              {"settings_used", table.settings_used},
              {"set_hash", set_hash_hex},
              {"rng_seed", rng_seed},
              {"photons_per_setting", photons_per_setting},
              {"counts", counts}};
}

std::string pattern_to_csv(const InterferencePattern& pattern) {
  std::ostringstream os;
  os << "x_m,intensity\n";
  for (std::size_t i = 0; i < pattern.x_grid.size(); ++i) {
    os << format_double(pattern.x_grid[i]) << ","
       << format_double(pattern.intensities[i]) << "\n";
  }
  return os.str();
}

json pattern_sidecar_json(const InterferencePattern& pattern) {
  const std::vector<double> env = envelope_factors(pattern.config);
  return json{{"dim", pattern.config.dim},
              {"multiplex_positions_m", pattern.multiplex_positions},
              {"multiplex_indices", pattern.multiplex_indices},
              {"multiplex_intensities", pattern.multiplex_intensities},
              {"envelope_factors", env},
              {"multiplex_power_fraction", pattern.multiplex_power_fraction}};
}

json report_to_json(const ExperimentReport& report) {
  json counts = json::array();
  for (int j = 0; j < report.counts.rows(); ++j) {
    json row = json::array();
    for (int m = 0; m < report.counts.cols(); ++m) {
      row.push_back(report.counts(j, m));
    }
    counts.push_back(row);
  }
  return json{{"scheme", report.scheme},
              {"dim", report.dim},
              {"settings_used", report.settings_used},
              {"condition_number", report.condition},
              {"rng_seed", report.rng_seed},
              {"photons_per_setting", report.photons_per_setting},
              {"monte_carlo_runs", report.monte_carlo_runs},
              {"ensemble_samples", report.ensemble_samples},
              {"fidelities", report.fidelities},
              {"fidelity_mean", report.fidelity_mean},
              {"fidelity_ci95", report.fidelity_ci95},
              {"target", density_to_json(report.target)},
              {"reconstructed", density_to_json(report.reconstructed)},
              {"counts", counts}};
}

ExperimentReport report_from_json(const json& j) {
  const json counts_json = require(j, "counts");
  CountMatrix counts(static_cast<int>(counts_json.size()),
                     counts_json.empty()
                         ? 0
                         : static_cast<int>(counts_json.front().size()));
  for (int r = 0; r < counts.rows(); ++r) {
    for (int c = 0; c < counts.cols(); ++c) {
      counts(r, c) = counts_json.at(r).at(c).get<std::int64_t>();
    }
  }
  return ExperimentReport{require(j, "scheme").get<std::string>(),
                          require(j, "dim").get<int>(),
                          require(j, "settings_used").get<int>(),
                          require(j, "condition_number").get<double>(),
                          require(j, "rng_seed").get<std::uint64_t>(),
                          require(j, "photons_per_setting").get<std::int64_t>(),
                          require(j, "monte_carlo_runs").get<int>(),
                          require(j, "ensemble_samples").get<int>(),
                          require(j, "fidelities").get<std::vector<double>>(),
                          require(j, "fidelity_mean").get<double>(),
                          require(j, "fidelity_ci95").get<double>(),
                          density_from_json(require(j, "target")),
                          density_from_json(require(j, "reconstructed")),
                          std::move(counts)};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw validation_error("cannot open file: " + path);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw validation_error("cannot write file: " + path);
  }
  out << content;
}

}  // namespace qtom
