#pragma once

#include <optional>
#include <span>
#include <string>

#include <json.hpp>

#include "nhchain/analytic.hpp"
#include "nhchain/eig.hpp"
#include "nhchain/types.hpp"

namespace nhchain {

/// One experiment description: model + sweep bounds + run knobs.
/// Parsed strictly; unknown or ill-typed keys raise SpecError naming the key.
struct SweepConfig {
  std::string param;  // "lambda1" | "lambda" | "lambda2" | "delta"
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
};

struct RunConfig {
  ModelSpec model;
  std::optional<SweepConfig> sweep;
  double tolerance = kDefaultRealityTol;
  double beta = 200.0;
  std::string output_path;
  long seed = 0;
  double delta_eval = 1e-3;  // offset from the predicted surface for entangle
};

nlohmann::json model_spec_to_json(const ModelSpec& spec);
ModelSpec model_spec_from_json(const nlohmann::json& j);

nlohmann::json surface_prediction_to_json(const SurfacePrediction& pred);

nlohmann::json spectrum_report_to_json(const SpectrumReport& report);

nlohmann::json sweep_record_to_json(const SweepRecord& record);

nlohmann::json sufficiency_report_to_json(const SufficiencyReport& report);

nlohmann::json run_config_to_json(const RunConfig& config);
RunConfig run_config_from_json(const nlohmann::json& j);

/// Floats in CSV output carry 12 significant digits.
std::string format_csv_double(double value);

/// `# nhchain <version> model=<json> tol=<tol> step=<step>` metadata line,
/// a header row, then one row per record. Missing detections print as
/// empty fields.
std::string sweep_records_to_csv(std::span<const SweepRecord> records,
                                 const ModelSpec& model, double tol);

struct EntangleRow {
  double lambda2 = 0.0;
  double gamma = 0.0;
  int n_sites = 0;
  double lambda1_eval = 0.0;
  double e12 = 0.0;
  double parity = 0.0;
  double m_y = 0.0;
  double c_xy = 0.0;
  double c_yy = 0.0;
};

std::string entangle_rows_to_csv(std::span<const EntangleRow> rows,
                                 const ModelSpec& model, double tol,
                                 double beta);

}  // namespace nhchain
