// Copyright 2026 The strobe-tomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// strobe-tomo: stroboscopic tomography resources and reconstruction for
// GKLS master equations.
//
// Exit codes: 0 ok, 2 bad input, 3 numerical failure, 4 observable search
// exhausted, 5 state is not a density matrix, 6 rank-deficient design.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "strobe/io.hpp"

namespace {

using namespace strobe;
using io::json;

enum ExitCode : int {
  kOk = 0,
  kBadInput = 2,
  kNumerical = 3,
  kSearchExhausted = 4,
  kInvalidState = 5,
  kRankDeficient = 6,
};

struct ModelSource {
  std::string path;
  std::optional<double> gamma1;
  std::optional<double> gamma2;
};

struct LoadedModel {
  LindbladModel model;
  ToleranceConfig tol;
};

ToleranceConfig apply_environment(ToleranceConfig tol) {
  const ToleranceConfig env = ToleranceConfig::from_environment();
  if (std::getenv("STROBE_TOMO_TOLERANCE") != nullptr) tol.rank_rtol = env.rank_rtol;
  return tol;
}

// A model file may also be an analysis report, which carries the model and
// the tolerances it was produced with.
LoadedModel load_model(const ModelSource& src) {
  if (src.gamma1 || src.gamma2) {
    if (!src.path.empty()) throw ParseError("give either a model file or --gamma1/--gamma2, not both");
    if (!src.gamma1 || !src.gamma2) throw ParseError("--gamma1 and --gamma2 must be given together");
    try {
      return {laser_cooling_model(*src.gamma1, *src.gamma2), apply_environment({})};
    } catch (const ValidationError& e) {
      throw ParseError(e.what());
    }
  }
  if (src.path.empty()) throw ParseError("no model: pass a model file or --gamma1/--gamma2");
  const json doc = io::read_json_file(src.path);
  ToleranceConfig tol;
  const json* body = &doc;
  if (doc.is_object() && doc.contains("model")) {
    body = &doc.at("model");
    if (doc.contains("tolerances")) tol = io::tolerances_from_json(doc.at("tolerances"));
  }
  tol = apply_environment(tol);
  try {
    return {io::model_from_json(*body, tol), tol};
  } catch (const ParseError& e) {
    throw ParseError(src.path + ": " + e.what());
  }
}

void add_model_options(CLI::App* cmd, ModelSource& src) {
  cmd->add_option("model", src.path, "Model JSON file (or an analysis report)");
  cmd->add_option("--gamma1", src.gamma1, "Laser-cooling rate for |1><2|");
  cmd->add_option("--gamma2", src.gamma2, "Laser-cooling rate for |3><2|");
}

std::string format_complex(Complex z) {
  std::ostringstream os;
  os << std::setprecision(12) << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

void print_matrix(std::ostream& os, const ComplexMatrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    os << "  [";
    for (Index j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << std::setw(14) << format_complex(m(i, j));
    os << "]\n";
  }
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    io::write_text_file(path, content);
  }
}

int cmd_analyze(const ModelSource& src, bool as_json) {
  const auto [model, tol] = load_model(src);
  const SpectralReport report = spectral_report(build_generator(model), tol);
  if (as_json) {
    std::cout << io::report_to_json(report, model, tol).dump(2) << "\n";
    return kOk;
  }
  std::cout << "Hilbert-space dimension N = " << report.dim << " (generator " << report.dim * report.dim << "x"
            << report.dim * report.dim << ")\n";
  std::cout << "distinct eigenvalues:\n";
  for (const auto& c : report.distinct_eigenvalues) {
    std::cout << "  " << std::setw(24) << std::left << format_complex(c.value) << std::right
              << " algebraic " << c.algebraic_multiplicity << "  geometric " << c.geometric_multiplicity << "\n";
  }
  std::cout << "minimal polynomial coefficients (ascending):";
  for (Index k = 0; k < report.min_poly.size(); ++k) std::cout << " " << format_complex(report.min_poly(k));
  std::cout << "\n";
  const MeasurementBudget budget = measurement_budget(report);
  std::cout << "index of cyclicity eta            = " << budget.eta << "\n"
            << "minimal polynomial degree mu      = " << budget.mu << "\n"
            << "stroboscopic budget eta*mu        = " << budget.total << " (" << budget.eta
            << " observables x at most " << budget.mu << " instants)\n"
            << "static tomography observables     = " << report.static_observable_count << "\n";
  return kOk;
}

int cmd_find_observables(const ModelSource& src, std::uint64_t seed, int max_attempts, const std::string& out) {
  const auto [model, tol] = load_model(src);
  const Superoperator gen = build_generator(model);
  const SpectralReport report = spectral_report(gen, tol);
  const ObservableSet set = find_observables(gen, report, seed, max_attempts, tol);
  const VerificationResult check = verify_observables(gen, set, report.mu, tol);
  const std::string body = io::observables_to_json(set).dump(2) + "\n";
  if (out.empty() || out == "-") {
    std::cout << body;
    std::cerr << "observables: " << set.size() << ", achieved rank " << check.achieved_rank << " of "
              << check.required_rank << "\n";
  } else {
    io::write_text_file(out, body);
    std::cout << "wrote " << set.size() << " observables to " << out << "\n"
              << "achieved rank " << check.achieved_rank << " of " << check.required_rank
              << (check.ok ? " (spanning)" : " (NOT spanning)") << "\n";
  }
  return kOk;
}

int cmd_simulate(const std::string& model_path, const std::string& state_path, const std::string& obs_path,
                 double sigma, std::uint64_t seed, const std::string& out) {
  const auto [model, tol] = load_model({model_path, std::nullopt, std::nullopt});
  const DensityMatrix rho0 = io::state_from_json(io::read_json_file(state_path));
  const ObservableSet set = io::observables_from_json(io::read_json_file(obs_path), tol);
  const SpectralReport report = spectral_report(build_generator(model), tol);
  const TimeGrid grid = default_time_grid(report, report.mu);
  const MeasurementRecord record = simulate_measurements(model, rho0, set, grid, sigma, seed);
  std::ostringstream csv;
  io::write_record_csv(csv, record);
  write_output(out, csv.str());
  return kOk;
}

int cmd_reconstruct(const std::string& model_path, const std::string& obs_path, const std::string& record_path,
                    const std::string& truth_path, bool no_project, bool as_json) {
  const auto [model, tol] = load_model({model_path, std::nullopt, std::nullopt});
  const ObservableSet set = io::observables_from_json(io::read_json_file(obs_path), tol);
  std::ifstream in(record_path);
  if (!in) throw ParseError(record_path + ": cannot open file");
  const MeasurementRecord record = io::read_record_csv(in, set.size());
  std::optional<DensityMatrix> truth;
  if (!truth_path.empty()) truth = io::state_from_json(io::read_json_file(truth_path));

  ReconstructionOptions options;
  options.project = !no_project;
  options.tol = tol;
  const ReconstructionResult result = reconstruct(model, set, record, options, truth);

  if (as_json) {
    std::cout << io::reconstruction_to_json(result).dump(2) << "\n";
    return kOk;
  }
  std::cout << "reconstructed initial state" << (result.projected ? " (projected)" : " (raw)") << ":\n";
  print_matrix(std::cout, result.rho_hat);
  std::cout << std::setprecision(6) << "min eigenvalue     = " << min_hermitian_eigenvalue(result.rho_hat) << "\n"
            << "residual norm      = " << result.residual_norm << "\n"
            << "design rank        = " << result.design_rank << "\n"
            << "condition number   = " << result.design_condition << "\n";
  if (result.frobenius_error) {
    std::cout << "frobenius error    = " << *result.frobenius_error << "\n"
              << "trace distance     = " << *result.trace_distance << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stroboscopic tomography for GKLS master equations"};
  app.set_version_flag("--version", std::string(io::kToolVersion));
  app.require_subcommand(1);

  ModelSource analyze_src;
  bool analyze_json = false;
  auto* analyze = app.add_subcommand("analyze", "Spectrum, eta, mu and measurement budget of a generator");
  add_model_options(analyze, analyze_src);
  auto* json_flag = analyze->add_flag("--json", analyze_json, "Emit the JSON report document");
  analyze->add_flag("--text", "Emit a human-readable report (default)")->excludes(json_flag);

  ModelSource find_src;
  std::uint64_t find_seed = 0;
  int max_attempts = 1000;
  std::string find_out;
  auto* find = app.add_subcommand("find-observables", "Search for a minimal spanning observable set");
  add_model_options(find, find_src);
  find->add_option("--seed", find_seed, "Random seed")->capture_default_str();
  find->add_option("--max-attempts", max_attempts, "Number of random candidate sets")->capture_default_str();
  find->add_option("--out", find_out, "Output observables JSON (default stdout)");

  std::string sim_model, sim_state, sim_obs, sim_out;
  double sim_sigma = 0.0;
  std::uint64_t sim_seed = 0;
  auto* simulate = app.add_subcommand("simulate", "Simulate a stroboscopic measurement record (CSV)");
  simulate->add_option("model", sim_model, "Model JSON file")->required();
  simulate->add_option("state", sim_state, "Initial density matrix JSON file")->required();
  simulate->add_option("observables", sim_obs, "Observables JSON file")->required();
  simulate->add_option("--sigma", sim_sigma, "Gaussian noise standard deviation")->capture_default_str();
  simulate->add_option("--seed", sim_seed, "Random seed")->capture_default_str();
  simulate->add_option("--out", sim_out, "Output CSV (default stdout)");

  std::string rec_model, rec_obs, rec_record, rec_truth;
  bool no_project = false;
  bool rec_json = false;
  auto* recon = app.add_subcommand("reconstruct", "Reconstruct the initial state from a measurement record");
  recon->add_option("model", rec_model, "Model JSON file")->required();
  recon->add_option("observables", rec_obs, "Observables JSON file")->required();
  recon->add_option("record", rec_record, "Measurement record CSV")->required();
  recon->add_option("--truth", rec_truth, "True initial state JSON, for error reporting");
  recon->add_flag("--no-project", no_project, "Report the raw linear-inversion estimate");
  recon->add_flag("--json", rec_json, "Emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (*analyze) return cmd_analyze(analyze_src, analyze_json);
    if (*find) return cmd_find_observables(find_src, find_seed, max_attempts, find_out);
    if (*simulate) return cmd_simulate(sim_model, sim_state, sim_obs, sim_sigma, sim_seed, sim_out);
    if (*recon) return cmd_reconstruct(rec_model, rec_obs, rec_record, rec_truth, no_project, rec_json);
  } catch (const StateError& e) {
    std::cerr << "error: invalid state: " << e.what() << "\n";
    return kInvalidState;
  } catch (const RankDeficiency& e) {
    std::cerr << "error: " << e.what() << " (achieved rank " << e.achieved_rank() << " vs required "
              << e.required_rank() << ")\n";
    return kRankDeficient;
  } catch (const SearchExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSearchExhausted;
  } catch (const NumericalError& e) {
    std::cerr << "error: numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
