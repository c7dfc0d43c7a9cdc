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

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtom/serialize.hpp"

namespace {

using nlohmann::json;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

qtom::TomographySet load_set(const std::string& path) {
  return qtom::set_from_json(json::parse(qtom::read_text_file(path)));
}

json load_json(const std::string& path) {
  return json::parse(qtom::read_text_file(path));
}

void cmd_gen_bases(int dim, int trials, std::uint64_t seed,
                   const std::string& out) {
  const qtom::TomographySet set = qtom::build_tomography_set(dim, trials, seed);
  qtom::write_text_file(out, qtom::set_to_json(set).dump(2) + "\n");
  std::cout << "wrote " << out << " (d=" << dim << ", condition number "
            << set.condition << " from " << trials << " trials)\n";
}

void cmd_paper_bases(const std::string& out) {
  const qtom::TomographySet set = qtom::load_paper_bases_d6();
  qtom::write_text_file(out, qtom::set_to_json(set).dump(2) + "\n");
  std::cout << "wrote " << out << " (bundled d=6 set, condition number "
            << set.condition << ")\n";
}

void cmd_simulate(const std::string& set_path, const std::string& state_path,
                  std::int64_t photons, std::uint64_t seed,
                  const std::string& out) {
  const qtom::TomographySet set = load_set(set_path);
  const qtom::DensityMatrix rho =
      qtom::density_or_state_from_json(load_json(state_path));
  qtom::ProbabilityTable table = qtom::forward_probabilities(rho, set);
  if (photons > 0) {
    qtom::Rng rng(seed);
    qtom::CountMatrix counts(set.dim + 1, set.dim);
    for (int j = 0; j <= set.dim; ++j) {
      std::vector<double> row(static_cast<std::size_t>(set.dim));
      for (int m = 0; m < set.dim; ++m) row[std::size_t(m)] = table.rows(j, m);
      const std::vector<std::int64_t> c = qtom::sample_counts(row, photons, rng);
      for (int m = 0; m < set.dim; ++m) {
        counts(j, m) = c[std::size_t(m)];
        table.rows(j, m) = double(c[std::size_t(m)]) / double(photons);
      }
    }
    table.counts = counts;
  }
  qtom::write_text_file(out, qtom::table_to_csv(table));
  qtom::write_text_file(
      out + ".json",
      qtom::table_sidecar_json(table, qtom::set_hash(set), seed, photons).dump(2) +
          "\n");
  std::cout << "wrote " << out << " and " << out << ".json ("
            << (photons > 0 ? std::to_string(photons) + " photons/setting"
                            : std::string("noiseless"))
            << ")\n";
}

void cmd_reconstruct(const std::string& set_path, const std::string& table_path,
                     const std::string& out) {
  const qtom::TomographySet set = load_set(set_path);
  const qtom::ProbabilityTable table =
      qtom::table_from_csv(qtom::read_text_file(table_path));
  if (std::filesystem::exists(table_path + ".json")) {
    const json sidecar = load_json(table_path + ".json");
    if (sidecar.contains("set_hash") &&
        sidecar.at("set_hash").get<std::string>() != qtom::set_hash(set)) {
      throw qtom::validation_error(
          "table sidecar references a different tomography set");
    }
  }
  const qtom::InversionResult inversion = qtom::linear_inversion(table, set);
  const qtom::DensityMatrix rho = qtom::project_to_physical(inversion.estimate);
  json j = qtom::density_to_json(rho);
  j["residual_norm"] = inversion.residual_norm;
  j["set_hash"] = qtom::set_hash(set);
  qtom::write_text_file(out, j.dump(2) + "\n");
  std::cout << "wrote " << out << " (residual norm " << inversion.residual_norm
            << ", min eigenvalue " << rho.min_eigenvalue() << ")\n";
}

void cmd_pattern(const std::string& set_path, const std::string& state_path,
                 int basis_label, int samples, const std::string& out) {
  const qtom::TomographySet set = load_set(set_path);
  if (basis_label < 1 || basis_label > set.dim) {
    throw qtom::validation_error(
        "basis label must be in 1..d; the canonical basis (0) is read "
        "per slit, not from the interference pattern");
  }
  const json state_json = load_json(state_path);
  const qtom::OpticalConfig optical = qtom::OpticalConfig::default_for(set.dim);
  const Eigen::VectorXcd projector = set.basis(basis_label).seed();
  const qtom::InterferencePattern pattern =
      qtom::json_holds_density(state_json)
          ? qtom::render_pattern(optical, qtom::density_from_json(state_json),
                                 projector, samples)
          : qtom::render_pattern(optical, qtom::state_from_json(state_json),
                                 projector, samples);
  qtom::write_text_file(out, qtom::pattern_to_csv(pattern));
  qtom::write_text_file(out + ".json",
                        qtom::pattern_sidecar_json(pattern).dump(2) + "\n");
  std::cout << "wrote " << out << " and " << out << ".json ("
            << pattern.x_grid.size() << " grid points)\n";
}

void print_report_summary(const std::string& name,
                          const qtom::ExperimentReport& r) {
  std::cout << name << ": mean fidelity " << r.fidelity_mean << " +/- "
            << r.fidelity_ci95 << " (95% CI, " << r.monte_carlo_runs
            << " runs), " << r.settings_used << " settings, "
            << r.photons_per_setting << " photons/setting, condition number "
            << r.condition << "\n";
}

void cmd_reproduce_paper(const std::string& state, std::int64_t photons,
                         int runs, std::uint64_t seed, int ensemble_samples,
                         bool traditional, const std::string& out) {
  std::vector<std::string> states;
  if (state.empty()) {
    states = {"psi1", "psi2", "rho3"};
  } else {
    states = {state};
  }
  qtom::ExperimentConfig config;
  config.dim = 6;
  config.photons_per_setting = photons;
  config.monte_carlo_runs = runs;
  config.ensemble_samples = ensemble_samples;
  config.rng_seed = seed;
  config.optical = qtom::OpticalConfig::default_for(6);
  config.bases_source = qtom::BasesSource::paper_d6();

  json all;
  for (const std::string& name : states) {
    qtom::ExperimentTarget target =
        name == "rho3" ? qtom::ExperimentTarget(qtom::RandomPhaseEnsemble{})
                       : qtom::ExperimentTarget(qtom::named_probe_state(name));
    const qtom::ExperimentReport report =
        traditional ? qtom::run_traditional_experiment(config, target)
                    : qtom::run_multiplexed_experiment(config, target);
    print_report_summary(name, report);
    all[name] = qtom::report_to_json(report);
  }
  if (!out.empty()) {
    qtom::write_text_file(out, all.dump(2) + "\n");
    std::cout << "wrote " << out << "\n";
  } else {
    std::cout << all.dump(2) << "\n";
  }
}

// Accepts either a bare report or a single-state reproduce-paper container.
qtom::ExperimentReport load_report(const std::string& path) {
  const json j = load_json(path);
  if (j.contains("scheme")) return qtom::report_from_json(j);
  if (j.is_object() && j.size() == 1) {
    return qtom::report_from_json(j.begin().value());
  }
  throw qtom::validation_error(
      path + ": expected one experiment report (rerun with --state NAME)");
}

void cmd_compare(const std::string& multiplexed_path,
                 const std::string& traditional_path) {
  const qtom::ExperimentReport a = load_report(multiplexed_path);
  const qtom::ExperimentReport b = load_report(traditional_path);
  std::cout << qtom::compare_report(a, b).to_text();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiplexed projective-measurement tomography for spatial "
               "photonic qudits"};
  app.require_subcommand(1);

  // gen-bases
  int dim = 6;
  int trials = 100;
  std::uint64_t seed = 0;
  std::string out;
  CLI::App* gen = app.add_subcommand(
      "gen-bases", "Search random flat seeds for a well-conditioned set");
  gen->add_option("--dim", dim, "qudit dimension d")->required();
  gen->add_option("--trials", trials, "candidate sets to draw (default 100)");
  gen->add_option("--seed", seed, "RNG seed")->required();
  gen->add_option("--out", out, "output set JSON path")->required();
  gen->callback([&] { cmd_gen_bases(dim, trials, seed, out); });

  // bases --paper-d6
  bool paper_d6 = false;
  std::string bases_out;
  CLI::App* bases = app.add_subcommand(
      "bases", "Emit a bundled tomography set");
  bases->add_flag("--paper-d6", paper_d6,
                  "the published d=6 set (re-flattened seeds)");
  bases->add_option("--out", bases_out, "output set JSON path")->required();
  bases->callback([&] {
    if (!paper_d6) {
      throw qtom::validation_error("bases: specify --paper-d6");
    }
    cmd_paper_bases(bases_out);
  });

  // simulate
  std::string set_path, state_path, table_out;
  std::int64_t photons = 100000;
  std::uint64_t sim_seed = 0;
  CLI::App* sim = app.add_subcommand(
      "simulate", "Forward-simulate a measured probability table");
  sim->add_option("--set", set_path, "tomography set JSON")->required();
  sim->add_option("--state", state_path, "state JSON (pure or density)")
      ->required();
  sim->add_option("--photons", photons,
                  "photons per setting; 0 for a noiseless table");
  sim->add_option("--seed", sim_seed, "RNG seed")->required();
  sim->add_option("--out", table_out, "output table CSV path")->required();
  sim->callback(
      [&] { cmd_simulate(set_path, state_path, photons, sim_seed, table_out); });

  // reconstruct
  std::string rec_set, rec_table, rec_out;
  CLI::App* rec = app.add_subcommand(
      "reconstruct", "Linear inversion + physicality projection");
  rec->add_option("--set", rec_set, "tomography set JSON")->required();
  rec->add_option("--table", rec_table, "measured table CSV")->required();
  rec->add_option("--out", rec_out, "output density JSON path")->required();
  rec->callback([&] { cmd_reconstruct(rec_set, rec_table, rec_out); });

  // pattern
  std::string pat_set, pat_state, pat_out;
  int pat_basis = 1;
  int pat_samples = 64;
  CLI::App* pat = app.add_subcommand(
      "pattern", "Export the interference pattern of a projected state");
  pat->add_option("--set", pat_set, "tomography set JSON")->required();
  pat->add_option("--state", pat_state, "state JSON (pure or density)")
      ->required();
  pat->add_option("--basis", pat_basis, "basis label J in 1..d")->required();
  pat->add_option("--samples", pat_samples,
                  "grid samples per readout spacing (default 64)");
  pat->add_option("--out", pat_out, "output pattern CSV path")->required();
  pat->callback(
      [&] { cmd_pattern(pat_set, pat_state, pat_basis, pat_samples, pat_out); });

  // reproduce-paper
  std::string rep_state;
  std::int64_t rep_photons = 100000;
  int rep_runs = 100;
  std::uint64_t rep_seed = 2026;
  int rep_ensemble = 1000;
  bool rep_traditional = false;
  std::string rep_out;
  CLI::App* rep = app.add_subcommand(
      "reproduce-paper",
      "Run the bundled d=6 experiments and report fidelities");
  rep->add_option("--state", rep_state, "psi1 | psi2 | rho3 (default: all)")
      ->check(CLI::IsMember({"psi1", "psi2", "rho3"}));
  rep->add_option("--photons", rep_photons, "photons per setting");
  rep->add_option("--runs", rep_runs, "Monte Carlo runs");
  rep->add_option("--seed", rep_seed, "RNG seed");
  rep->add_option("--ensemble-samples", rep_ensemble,
                  "masks averaged for rho3");
  rep->add_flag("--traditional", rep_traditional,
                "use the one-projector-per-setting baseline (42 settings)");
  rep->add_option("--out", rep_out, "report JSON path (default: stdout)");
  rep->callback([&] {
    cmd_reproduce_paper(rep_state, rep_photons, rep_runs, rep_seed,
                        rep_ensemble, rep_traditional, rep_out);
  });

  // compare
  std::string cmp_mult, cmp_trad;
  CLI::App* cmp = app.add_subcommand(
      "compare", "Tabulate two experiment reports side by side");
  cmp->add_option("--multiplexed", cmp_mult, "multiplexed report JSON")
      ->required();
  cmp->add_option("--traditional", cmp_trad, "traditional report JSON")
      ->required();
  cmp->callback([&] { cmd_compare(cmp_mult, cmp_trad); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  } catch (const qtom::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kExitValidation;
  } catch (const qtom::numerical_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
