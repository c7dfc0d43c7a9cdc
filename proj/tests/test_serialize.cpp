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

#include <doctest.h>

#include "qtom/serialize.hpp"
#include "support/test_support.hpp"

using namespace qtom;
using nlohmann::json;

TEST_CASE("state and density JSON round trips") {
  Rng rng(61);
  const QuditState psi = test::random_pure_state(5, rng);
  const json js = state_to_json(psi);
  CHECK_FALSE(json_holds_density(js));
  const QuditState back = state_from_json(js);
  CHECK(back.amplitudes().isApprox(psi.amplitudes(), 1e-15));

  const DensityMatrix rho = test::random_density_matrix(4, rng);
  const json jr = density_to_json(rho);
  CHECK(json_holds_density(jr));
  const DensityMatrix rho_back = density_from_json(jr);
  CHECK(test::max_abs_diff(rho_back.matrix(), rho.matrix()) == 0.0);

  // The combined loader lifts pure states to projectors.
  const DensityMatrix lifted = density_or_state_from_json(js);
  CHECK(test::max_abs_diff(lifted.matrix(),
                           density_from_pure(psi).matrix()) < 1e-15);
}

TEST_CASE("state JSON accepts the one-row nested form") {
  const json nested{{"dim", 2},
                    {"re", json::array({json::array({1.0, 0.0})})},
                    {"im", json::array({json::array({0.0, 0.0})})}};
  CHECK_FALSE(json_holds_density(nested));
  const QuditState psi = state_from_json(nested);
  CHECK(psi[0] == cxd(1.0, 0.0));
  CHECK(psi[1] == cxd(0.0, 0.0));
}

TEST_CASE("state JSON validation errors") {
  CHECK_THROWS_AS(state_from_json(json{{"dim", 3}, {"re", {1.0, 0.0}}, {"im", {0.0, 0.0}}}),
                  validation_error);
  CHECK_THROWS_AS(state_from_json(json{{"dim", 3}}), validation_error);
  CHECK_THROWS_AS(density_from_json(json{{"dim", 2},
                                         {"re", {{1.0, 0.0}, {0.0, 0.0}}},
                                         {"im", {{0.0, 0.5}, {0.5, 0.0}}}}),
                  validation_error);  // not Hermitian
}

TEST_CASE("tomography set JSON round trip preserves seeds exactly") {
  const TomographySet set = build_tomography_set(4, 10, 99);
  const json j = set_to_json(set);
  const TomographySet back = set_from_json(j);
  CHECK(back.dim == set.dim);
  CHECK(back.rng_seed == set.rng_seed);
  CHECK(back.condition == doctest::Approx(set.condition).epsilon(1e-12));
  for (int b = 0; b <= 4; ++b) {
    CHECK(back.basis(b).vectors() == set.basis(b).vectors());
  }
  CHECK(set_hash(back) == set_hash(set));

  json broken = j;
  broken["seeds"][0]["label"] = 9;
  CHECK_THROWS_AS(set_from_json(broken), validation_error);
}

TEST_CASE("paper set serializes with flat seeds that reload") {
  const TomographySet paper = load_paper_bases_d6();
  const TomographySet back = set_from_json(set_to_json(paper));
  CHECK(back.condition == doctest::Approx(paper.condition).epsilon(1e-12));
}

TEST_CASE("probability table CSV round trip is exact") {
  Rng rng(63);
  const TomographySet set = build_tomography_set(3, 5, 7);
  const ProbabilityTable table =
      forward_probabilities(test::random_density_matrix(3, rng), set);
  const std::string csv = table_to_csv(table);
  CHECK(csv.rfind("p0,p1,p2\n", 0) == 0);
  const ProbabilityTable back = table_from_csv(csv);
  CHECK(back.dim == 3);
  CHECK((back.rows - table.rows).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(table_from_csv("p0,p1\n0.5,0.5\nnope,1\n"), validation_error);
  CHECK_THROWS_AS(table_from_csv("p0,p1\n0.9,0.3\n0.5,0.5\n0.5,0.5\n"),
                  validation_error);
  CHECK_THROWS_AS(table_from_csv(""), validation_error);
}

TEST_CASE("table sidecar carries counts and the set hash") {
  const TomographySet set = build_tomography_set(2, 5, 3);
  ProbabilityTable table;
  table.dim = 2;
  table.settings_used = 3;
  table.rows = Eigen::MatrixXd::Constant(3, 2, 0.5);
  CountMatrix counts(3, 2);
  counts << 50, 50, 49, 51, 52, 48;
  table.counts = counts;
  const json sidecar = table_sidecar_json(table, set_hash(set), 42, 100);
  CHECK(sidecar.at("set_hash") == set_hash(set));
  CHECK(sidecar.at("counts")[2][1] == 48);
  CHECK(sidecar.at("photons_per_setting") == 100);
}

TEST_CASE("pattern CSV and sidecar") {
  const OpticalConfig c = OpticalConfig::default_for(6);
  const QuditState psi =
      QuditState::normalized(Eigen::VectorXcd::Constant(6, cxd(1.0, 0.0)));
  const InterferencePattern pattern =
      render_pattern(c, psi, psi.amplitudes(), 8);
  const std::string csv = pattern_to_csv(pattern);
  CHECK(csv.rfind("x_m,intensity\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : csv) lines += ch == '\n' ? 1 : 0;
  CHECK(lines == pattern.x_grid.size() + 1);

  const json sidecar = pattern_sidecar_json(pattern);
  CHECK(sidecar.at("multiplex_positions_m").size() == 6);
  CHECK(sidecar.at("envelope_factors")[0] == 1.0);
  CHECK(sidecar.at("multiplex_power_fraction").get<double>() > 0.0);
}

TEST_CASE("experiment report JSON round trip") {
  ExperimentConfig config;
  config.dim = 6;
  config.photons_per_setting = 500;
  config.monte_carlo_runs = 2;
  config.rng_seed = 7;
  config.optical = OpticalConfig::default_for(6);
  config.bases_source = BasesSource::paper_d6();
  const ExperimentReport report =
      run_multiplexed_experiment(config, named_probe_state("psi1"));
  const json j = report_to_json(report);
  const ExperimentReport back = report_from_json(j);
  CHECK(back.scheme == report.scheme);
  CHECK(back.fidelity_mean == report.fidelity_mean);
  CHECK(back.counts == report.counts);
  CHECK(test::max_abs_diff(back.reconstructed.matrix(),
                           report.reconstructed.matrix()) == 0.0);
  CHECK(report_to_json(back).dump() == j.dump());
}

TEST_CASE("fnv1a64 reference vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("file helpers") {
  const std::string path = "serialize_test_tmp.txt";
  write_text_file(path, "hello\n");
  CHECK(read_text_file(path) == "hello\n");
  CHECK_THROWS_AS(read_text_file("does_not_exist_anywhere.txt"),
                  validation_error);
  std::remove(path.c_str());
}
