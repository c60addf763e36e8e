// Experiment harness for the RT-symmetric spin-chain library: exposes the
// surface predictor, detection sweeps, the long-range sufficiency check,
// the entanglement/parity scan and single-point spectra as subcommands
// with JSON/CSV output.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "nhchain/analytic.hpp"
#include "nhchain/eig.hpp"
#include "nhchain/model.hpp"
#include "nhchain/observables.hpp"
#include "nhchain/parallel.hpp"
#include "nhchain/serde.hpp"

namespace {

using namespace nhchain;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CliFlags {
  std::optional<std::string> config_path;
  std::optional<std::string> kind;
  std::optional<int> n;
  std::optional<double> coupling_j;
  std::optional<double> gamma;
  std::optional<double> lambda1;
  std::optional<double> lambda2;
  std::optional<double> delta;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> tol;
  std::optional<double> step;
  std::optional<double> start;
  std::optional<double> stop;
  std::optional<std::string> sweep_param;
  std::optional<std::string> out;
  std::optional<double> delta_eval;
  int points = 101;
  unsigned workers = default_worker_count();
};

void add_common_flags(CLI::App* cmd, CliFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON run configuration file");
  cmd->add_option("--kind", flags.kind,
                  "model kind: iatxy|ixyz|iatxy_lr|ixyz_lr|hermitian_atxy|hermitian_xyz");
  cmd->add_option("--n", flags.n, "number of spins (even)");
  cmd->add_option("--j", flags.coupling_j, "coupling constant J");
  cmd->add_option("--gamma", flags.gamma, "anisotropy magnitude");
  cmd->add_option("--lambda1", flags.lambda1, "uniform field h1/J");
  cmd->add_option("--lambda2", flags.lambda2, "alternating field h2/J");
  cmd->add_option("--delta", flags.delta, "z coupling for XYZ kinds");
  cmd->add_option("--alpha", flags.alpha, "power-law exponent (long-range kinds)");
  cmd->add_option("--beta", flags.beta, "inverse temperature (default 200)");
  cmd->add_option("--tol", flags.tol, "relative reality tolerance (default 1e-7)");
  cmd->add_option("--step", flags.step, "grid step (default 0.05)");
  cmd->add_option("--start", flags.start, "sweep start");
  cmd->add_option("--stop", flags.stop, "sweep stop");
  cmd->add_option("--sweep-param", flags.sweep_param,
                  "swept control parameter: lambda2|delta");
  cmd->add_option("--out", flags.out, "output path (default stdout)");
  cmd->add_option("--delta-eval", flags.delta_eval,
                  "offset above the predicted surface for entangle (default 1e-3)");
  cmd->add_option("--workers", flags.workers, "worker threads for sweeps");
}

RunConfig merge_config(const CliFlags& flags) {
  RunConfig cfg;
  bool have_model = false;
  if (flags.config_path) {
    std::ifstream in(*flags.config_path);
    if (!in) throw SpecError("config: cannot open '" + *flags.config_path + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw SpecError("config: invalid JSON (" + std::string(e.what()) + ")");
    }
    cfg = run_config_from_json(j);
    have_model = true;
  }
  if (flags.kind) {
    cfg.model.kind = model_kind_from_string(*flags.kind);
    have_model = true;
  }
  if (!have_model) throw SpecError("kind: required (flag --kind or --config)");
  if (flags.n) cfg.model.n_sites = *flags.n;
  if (flags.coupling_j) cfg.model.coupling_j = *flags.coupling_j;
  if (flags.gamma) cfg.model.gamma = *flags.gamma;
  if (flags.lambda1) cfg.model.lambda1 = *flags.lambda1;
  if (flags.lambda2) cfg.model.lambda2 = *flags.lambda2;
  if (flags.delta) cfg.model.delta = *flags.delta;
  if (flags.alpha) cfg.model.alpha = *flags.alpha;
  if (!cfg.model.is_long_range()) cfg.model.alpha.reset();

  if (flags.start || flags.stop || flags.step || flags.sweep_param) {
    SweepConfig sweep =
        cfg.sweep.value_or(SweepConfig{"", 0.0, 0.0, 0.05});
    if (flags.sweep_param) sweep.param = *flags.sweep_param;
    if (flags.start) sweep.start = *flags.start;
    if (flags.stop) sweep.stop = *flags.stop;
    if (flags.step) sweep.step = *flags.step;
    cfg.sweep = sweep;
  }
  if (flags.tol) cfg.tolerance = *flags.tol;
  if (cfg.tolerance <= 0) throw SpecError("tol: must be > 0");
  if (flags.beta) cfg.beta = *flags.beta;
  if (cfg.beta <= 0) throw SpecError("beta: must be > 0");
  if (flags.out) cfg.output_path = *flags.out;
  if (flags.delta_eval) cfg.delta_eval = *flags.delta_eval;
  cfg.model.validate();
  return cfg;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SpecError("output_path: cannot open '" + path + "'");
  out << content;
}

double control_of(const ModelSpec& model) {
  return model.is_xyz() ? model.delta : model.lambda2;
}

SurfacePrediction predict_for(const ModelSpec& model, double control) {
  return reality_threshold(
      model.kind, control, model.gamma, model.alpha,
      model.is_long_range() ? std::optional<int>(model.n_sites) : std::nullopt);
}

std::vector<double> control_grid(const SweepConfig& sweep) {
  if (!(sweep.step > 0.0)) throw SpecError("sweep.step: must be > 0");
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double value = sweep.start + i * sweep.step;
    if (value > sweep.stop + 1e-9) break;
    grid.push_back(value);
  }
  if (grid.empty()) throw SpecError("sweep: empty range");
  return grid;
}

int cmd_predict(const RunConfig& cfg) {
  const SurfacePrediction pred = predict_for(cfg.model, control_of(cfg.model));
  write_output(cfg.output_path, surface_prediction_to_json(pred).dump(2) + "\n");
  return kExitOk;
}

int cmd_scan(const RunConfig& cfg, unsigned workers) {
  if (!cfg.sweep) throw SpecError("sweep: required for scan");
  const std::string expected_param = cfg.model.is_xyz() ? "delta" : "lambda2";
  if (!cfg.sweep->param.empty() && cfg.sweep->param != expected_param) {
    throw SpecError("sweep.param: must be '" + expected_param + "' for kind " +
                    to_string(cfg.model.kind));
  }
  const std::vector<double> grid = control_grid(*cfg.sweep);

  std::vector<std::optional<SweepRecord>> slots(grid.size());
  std::vector<std::string> errors(grid.size());
  parallel_for(grid.size(), workers, [&](std::size_t i) {
    ModelSpec tmpl = cfg.model;
    if (tmpl.is_xyz()) {
      tmpl.delta = grid[i];
    } else {
      tmpl.lambda2 = grid[i];
    }
    try {
      const double predicted = predict_for(tmpl, grid[i]).value;
      const OnsetWindow window = default_onset_window(predicted);
      slots[i] = detect_onset(tmpl,
                              tmpl.is_xyz() ? SweepParam::Lambda : SweepParam::Lambda1,
                              window.start, window.stop, cfg.sweep->step,
                              cfg.tolerance);
    } catch (const NumericalError& e) {
      errors[i] = e.what();
    }
  });

  std::vector<SweepRecord> records;
  std::string failure;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) {
      failure = errors[i].empty() ? "record not computed" : errors[i];
      break;
    }
    records.push_back(*slots[i]);
  }
  std::string csv = sweep_records_to_csv(records, cfg.model, cfg.tolerance);
  if (!failure.empty()) {
    csv += "# INCOMPLETE: " + failure + "\n";
    write_output(cfg.output_path, csv);
    std::cerr << "scan failed: " << failure << "\n";
    return kExitNumerical;
  }
  write_output(cfg.output_path, csv);
  return kExitOk;
}

int cmd_verify_longrange(const RunConfig& cfg, int n_points) {
  const double step = cfg.sweep ? cfg.sweep->step : 0.05;
  const SufficiencyReport report =
      verify_sufficiency(cfg.model, n_points, step, cfg.tolerance);
  write_output(cfg.output_path,
               sufficiency_report_to_json(report).dump(2) + "\n");
  return kExitOk;
}

int cmd_entangle(const RunConfig& cfg, unsigned workers) {
  if (cfg.model.is_xyz()) {
    throw SpecError("kind: entangle sweeps the ATXY kinds over lambda2");
  }
  if (!cfg.sweep) throw SpecError("sweep: required for entangle");
  if (!cfg.sweep->param.empty() && cfg.sweep->param != "lambda2") {
    throw SpecError("sweep.param: must be 'lambda2' for entangle");
  }
  const std::vector<double> grid = control_grid(*cfg.sweep);

  std::vector<std::optional<EntangleRow>> slots(grid.size());
  std::vector<std::string> errors(grid.size());
  parallel_for(grid.size(), workers, [&](std::size_t i) {
    ModelSpec model = cfg.model;
    model.lambda2 = grid[i];
    try {
      const SurfacePrediction pred = predict_for(model, grid[i]);
      // i-kinds are evaluated just above the surface (the eigenvectors are
      // defective exactly at it); the Hermitian reference sits right on the
      // factorization field.
      model.lambda1 =
          model.is_hermitian() ? pred.value : pred.value + cfg.delta_eval;
      const DenseOperator h = build_hamiltonian(model);
      const ThermalState state = thermal_state(h, cfg.beta, {cfg.tolerance});
      const TwoSiteState pair = partial_trace_two_site(state.rho, model.n_sites, 1, 2);
      EntangleRow row;
      row.lambda2 = grid[i];
      row.gamma = model.gamma;
      row.n_sites = model.n_sites;
      row.lambda1_eval = model.lambda1;
      row.e12 = log_negativity(pair);
      row.parity = parity_expectation(state.rho, model.n_sites);
      row.m_y = pair.m(1).real();
      row.c_xy = pair.c(0, 1).real();
      row.c_yy = pair.c(1, 1).real();
      slots[i] = row;
    } catch (const NumericalError& e) {
      errors[i] = e.what();
    }
  });

  std::vector<EntangleRow> rows;
  std::string failure;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) {
      failure = errors[i].empty() ? "row not computed" : errors[i];
      break;
    }
    rows.push_back(*slots[i]);
  }
  std::string csv = entangle_rows_to_csv(rows, cfg.model, cfg.tolerance, cfg.beta);
  if (!failure.empty()) {
    csv += "# INCOMPLETE: " + failure + "\n";
    write_output(cfg.output_path, csv);
    std::cerr << "entangle failed: " << failure << "\n";
    return kExitNumerical;
  }
  write_output(cfg.output_path, csv);
  return kExitOk;
}

int cmd_spectrum(const RunConfig& cfg) {
  const DenseOperator h = build_hamiltonian(cfg.model);
  const SpectrumReport report = diagonalize(h, cfg.tolerance);
  nlohmann::json j = spectrum_report_to_json(report);
  j["model"] = model_spec_to_json(cfg.model);
  write_output(cfg.output_path, j.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RT-symmetric non-Hermitian spin chains: surface prediction, "
               "detection sweeps, entanglement at the exceptional surface"};
  app.require_subcommand(1);

  CliFlags flags;
  CLI::App* predict = app.add_subcommand("predict", "print the predicted real-spectrum onset");
  CLI::App* scan = app.add_subcommand("scan", "detection sweep over the control parameter (CSV)");
  CLI::App* verify = app.add_subcommand("verify-longrange", "check reality on a grid above the predicted surface");
  CLI::App* entangle = app.add_subcommand("entangle", "two-site entanglement and parity along the surface (CSV)");
  CLI::App* spectrum = app.add_subcommand("spectrum", "full spectrum of a single model instance");
  for (CLI::App* cmd : {predict, scan, verify, entangle, spectrum}) {
    add_common_flags(cmd, flags);
  }
  verify->add_option("--points", flags.points, "number of grid points (default 101)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    const RunConfig cfg = merge_config(flags);
    if (predict->parsed()) return cmd_predict(cfg);
    if (scan->parsed()) return cmd_scan(cfg, flags.workers);
    if (verify->parsed()) return cmd_verify_longrange(cfg, flags.points);
    if (entangle->parsed()) return cmd_entangle(cfg, flags.workers);
    if (spectrum->parsed()) return cmd_spectrum(cfg);
    return kExitConfig;
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
