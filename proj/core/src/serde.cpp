#include "nhchain/serde.hpp"

#include <cstdio>
#include <set>
#include <sstream>

namespace nhchain {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
  if (!j.is_object()) throw SpecError(where + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) {
      throw SpecError(where + ": unknown key '" + key + "'");
    }
  }
}

double require_number(const json& j, const std::string& key, double fallback,
                      bool required = false) {
  if (!j.contains(key)) {
    if (required) throw SpecError(key + ": missing required key");
    return fallback;
  }
  if (!j.at(key).is_number()) throw SpecError(key + ": expected a number");
  return j.at(key).get<double>();
}

}  // namespace

json model_spec_to_json(const ModelSpec& spec) {
  json j{{"kind", to_string(spec.kind)},
         {"n_sites", spec.n_sites},
         {"coupling_j", spec.coupling_j},
         {"gamma", spec.gamma},
         {"lambda1", spec.lambda1},
         {"lambda2", spec.lambda2},
         {"delta", spec.delta},
         {"boundary", "periodic"}};
  if (spec.alpha) j["alpha"] = *spec.alpha;
  return j;
}

ModelSpec model_spec_from_json(const json& j) {
  reject_unknown_keys(j,
                      {"kind", "n_sites", "coupling_j", "gamma", "lambda1",
                       "lambda2", "delta", "alpha", "boundary"},
                      "model");
  if (!j.contains("kind")) throw SpecError("kind: missing required key");
  if (!j.at("kind").is_string()) throw SpecError("kind: expected a string");
  if (!j.contains("n_sites")) throw SpecError("n_sites: missing required key");
  if (!j.at("n_sites").is_number_integer()) {
    throw SpecError("n_sites: expected an integer");
  }

  ModelSpec spec;
  spec.kind = model_kind_from_string(j.at("kind").get<std::string>());
  spec.n_sites = j.at("n_sites").get<int>();
  spec.coupling_j = require_number(j, "coupling_j", 1.0);
  spec.gamma = require_number(j, "gamma", 0.0);
  spec.lambda1 = require_number(j, "lambda1", 0.0);
  spec.lambda2 = require_number(j, "lambda2", 0.0);
  spec.delta = require_number(j, "delta", 0.0);
  if (j.contains("alpha")) {
    if (!j.at("alpha").is_number()) throw SpecError("alpha: expected a number");
    spec.alpha = j.at("alpha").get<double>();
  }
  if (j.contains("boundary")) {
    if (!j.at("boundary").is_string() ||
        j.at("boundary").get<std::string>() != "periodic") {
      throw SpecError("boundary: only 'periodic' is supported");
    }
  }
  spec.validate();
  return spec;
}

json surface_prediction_to_json(const SurfacePrediction& pred) {
  json inputs{{"lambda2_or_delta", pred.inputs.lambda2_or_delta},
              {"gamma", pred.inputs.gamma}};
  if (pred.inputs.alpha) inputs["alpha"] = *pred.inputs.alpha;
  if (pred.inputs.n_sites) inputs["n_sites"] = *pred.inputs.n_sites;
  return json{{"value", pred.value},
              {"hermitian_value",
               pred.hermitian_value ? json(*pred.hermitian_value) : json(nullptr)},
              {"kind", to_string(pred.kind)},
              {"inputs", inputs}};
}

json spectrum_report_to_json(const SpectrumReport& report) {
  json values = json::array();
  for (cxd v : report.eigenvalues) values.push_back({v.real(), v.imag()});
  return json{{"eigenvalues", values},
              {"max_abs_imag", report.max_abs_imag},
              {"scale", report.scale},
              {"is_real", report.is_real},
              {"tol_used", report.tol_used}};
}

json sweep_record_to_json(const SweepRecord& record) {
  return json{{"control", record.control},
              {"predicted", record.predicted},
              {"detected", record.detected ? json(*record.detected) : json(nullptr)},
              {"difference",
               record.difference ? json(*record.difference) : json(nullptr)},
              {"n_sites", record.n_sites},
              {"gamma", record.gamma},
              {"step", record.step}};
}

json sufficiency_report_to_json(const SufficiencyReport& report) {
  json points = json::array();
  for (const auto& p : report.points) {
    points.push_back({{"field", p.field},
                      {"max_abs_imag", p.max_abs_imag},
                      {"is_real", p.is_real}});
  }
  return json{{"sufficient", report.all_real}, {"points", points}};
}

json run_config_to_json(const RunConfig& config) {
  json j{{"model", model_spec_to_json(config.model)},
         {"tolerance", config.tolerance},
         {"beta", config.beta},
         {"output_path", config.output_path},
         {"seed", config.seed},
         {"delta_eval", config.delta_eval}};
  if (config.sweep) {
    j["sweep"] = json{{"param", config.sweep->param},
                      {"start", config.sweep->start},
                      {"stop", config.sweep->stop},
                      {"step", config.sweep->step}};
  }
  return j;
}

RunConfig run_config_from_json(const json& j) {
  reject_unknown_keys(j,
                      {"model", "sweep", "tolerance", "beta", "output_path",
                       "seed", "delta_eval"},
                      "config");
  if (!j.contains("model")) throw SpecError("model: missing required key");

  RunConfig config;
  config.model = model_spec_from_json(j.at("model"));
  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    reject_unknown_keys(s, {"param", "start", "stop", "step"}, "sweep");
    SweepConfig sweep;
    if (!s.contains("param") || !s.at("param").is_string()) {
      throw SpecError("sweep.param: expected a string");
    }
    sweep.param = s.at("param").get<std::string>();
    const std::set<std::string> params{"lambda1", "lambda", "lambda2", "delta"};
    if (!params.contains(sweep.param)) {
      throw SpecError("sweep.param: unknown parameter '" + sweep.param + "'");
    }
    sweep.start = require_number(s, "start", 0.0, true);
    sweep.stop = require_number(s, "stop", 0.0, true);
    sweep.step = require_number(s, "step", 0.0, true);
    config.sweep = sweep;
  }
  config.tolerance = require_number(j, "tolerance", kDefaultRealityTol);
  if (config.tolerance <= 0) throw SpecError("tolerance: must be > 0");
  config.beta = require_number(j, "beta", 200.0);
  if (config.beta <= 0) throw SpecError("beta: must be > 0");
  if (j.contains("output_path")) {
    if (!j.at("output_path").is_string()) {
      throw SpecError("output_path: expected a string");
    }
    config.output_path = j.at("output_path").get<std::string>();
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer()) {
      throw SpecError("seed: expected an integer");
    }
    config.seed = j.at("seed").get<long>();
  }
  config.delta_eval = require_number(j, "delta_eval", 1e-3);
  return config;
}

std::string format_csv_double(double value) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

namespace {

std::string metadata_line(const ModelSpec& model, double tol,
                          const std::string& extra) {
  std::ostringstream os;
  os << "# nhchain " << kVersion << " model=" << model_spec_to_json(model).dump()
     << " tol=" << format_csv_double(tol);
  if (!extra.empty()) os << " " << extra;
  os << "\n";
  return os.str();
}

}  // namespace

std::string sweep_records_to_csv(std::span<const SweepRecord> records,
                                 const ModelSpec& model, double tol) {
  std::ostringstream os;
  const double step = records.empty() ? 0.0 : records.front().step;
  os << metadata_line(model, tol, "step=" + format_csv_double(step));
  os << "control,predicted,detected,difference,n_sites,gamma,step\n";
  for (const auto& r : records) {
    os << format_csv_double(r.control) << "," << format_csv_double(r.predicted)
       << "," << (r.detected ? format_csv_double(*r.detected) : "") << ","
       << (r.difference ? format_csv_double(*r.difference) : "") << ","
       << r.n_sites << "," << format_csv_double(r.gamma) << ","
       << format_csv_double(r.step) << "\n";
  }
  return os.str();
}

std::string entangle_rows_to_csv(std::span<const EntangleRow> rows,
                                 const ModelSpec& model, double tol,
                                 double beta) {
  std::ostringstream os;
  os << metadata_line(model, tol, "beta=" + format_csv_double(beta));
  os << "lambda2,gamma,n_sites,lambda1_eval,E12,parity,m_y,C_xy,C_yy\n";
  for (const auto& r : rows) {
    os << format_csv_double(r.lambda2) << "," << format_csv_double(r.gamma)
       << "," << r.n_sites << "," << format_csv_double(r.lambda1_eval) << ","
       << format_csv_double(r.e12) << "," << format_csv_double(r.parity) << ","
       << format_csv_double(r.m_y) << "," << format_csv_double(r.c_xy) << ","
       << format_csv_double(r.c_yy) << "\n";
  }
  return os.str();
}

}  // namespace nhchain
