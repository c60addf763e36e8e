#include <doctest.h>

#include <string>

#include "nhchain/serde.hpp"

using namespace nhchain;
using nlohmann::json;

TEST_CASE("model spec json round trip") {
  const json j = json::parse(R"({
    "kind": "iatxy_lr", "n_sites": 8, "coupling_j": 1.0, "gamma": 0.5,
    "lambda1": 0.1, "lambda2": 0.4, "delta": 0.0, "alpha": 1.0,
    "boundary": "periodic"
  })");
  const ModelSpec spec = model_spec_from_json(j);
  CHECK(spec.kind == ModelKind::IATXY_LR);
  CHECK(spec.n_sites == 8);
  CHECK(spec.alpha == 1.0);
  const ModelSpec again = model_spec_from_json(model_spec_to_json(spec));
  CHECK(model_spec_to_json(again) == model_spec_to_json(spec));
}

TEST_CASE("unknown keys are rejected by name") {
  const json j = json::parse(R"({"kind": "iatxy", "n_sites": 4, "extra": 1})");
  try {
    model_spec_from_json(j);
    FAIL_CHECK("expected SpecError");
  } catch (const SpecError& e) {
    CHECK(std::string(e.what()).find("extra") != std::string::npos);
  }
}

TEST_CASE("missing required keys are rejected") {
  CHECK_THROWS_AS(model_spec_from_json(json::parse(R"({"n_sites": 4})")),
                  SpecError);
  CHECK_THROWS_AS(model_spec_from_json(json::parse(R"({"kind": "iatxy"})")),
                  SpecError);
  CHECK_THROWS_AS(model_spec_from_json(json::parse(
                      R"({"kind": "nonsense", "n_sites": 4})")),
                  SpecError);
}

TEST_CASE("parsed specs are validated") {
  const json j = json::parse(R"({"kind": "iatxy", "n_sites": 7})");
  CHECK_THROWS_AS(model_spec_from_json(j), SpecError);
}

TEST_CASE("run config round trip and validation") {
  const json j = json::parse(R"({
    "model": {"kind": "ixyz", "n_sites": 10, "gamma": 0.5},
    "sweep": {"param": "delta", "start": 0.0, "stop": 1.0, "step": 0.05},
    "tolerance": 1e-7, "beta": 200.0, "output_path": "out.csv", "seed": 3
  })");
  const RunConfig config = run_config_from_json(j);
  CHECK(config.model.kind == ModelKind::IXYZ);
  CHECK(config.sweep.has_value());
  CHECK(config.sweep->param == "delta");
  CHECK(config.beta == 200.0);
  const RunConfig again = run_config_from_json(run_config_to_json(config));
  CHECK(run_config_to_json(again) == run_config_to_json(config));

  CHECK_THROWS_AS(run_config_from_json(json::parse(R"({"sweep": {}})")),
                  SpecError);
  CHECK_THROWS_AS(
      run_config_from_json(json::parse(
          R"({"model": {"kind": "iatxy", "n_sites": 4}, "what": 1})")),
      SpecError);
  CHECK_THROWS_AS(
      run_config_from_json(json::parse(
          R"({"model": {"kind": "iatxy", "n_sites": 4}, "tolerance": -1})")),
      SpecError);
  CHECK_THROWS_AS(
      run_config_from_json(json::parse(
          R"({"model": {"kind": "iatxy", "n_sites": 4},
              "sweep": {"param": "nope", "start": 0, "stop": 1, "step": 0.1}})")),
      SpecError);
}

TEST_CASE("csv floats carry 12 significant digits") {
  CHECK(format_csv_double(1.0 / 3.0) == "0.333333333333");
  CHECK(format_csv_double(1.2247448713915890) == "1.22474487139");
  CHECK(format_csv_double(0.0) == "0");
}

TEST_CASE("sweep csv has metadata, header and one row per record") {
  ModelSpec spec;
  spec.kind = ModelKind::IATXY;
  spec.n_sites = 6;
  spec.gamma = 0.5;
  SweepRecord a{0.0, 1.118, 1.1, -0.018, 6, 0.5, 0.05};
  SweepRecord none{0.5, 1.224, std::nullopt, std::nullopt, 6, 0.5, 0.05};
  const std::vector<SweepRecord> records{a, none};
  const std::string csv = sweep_records_to_csv(records, spec, 1e-7);

  CHECK(csv.find("# nhchain") == 0);
  CHECK(csv.find("model={") != std::string::npos);
  CHECK(csv.find("control,predicted,detected,difference,n_sites,gamma,step\n") !=
        std::string::npos);
  CHECK(csv.find("0.5,1.224,,,6,0.5,0.05\n") != std::string::npos);
}

TEST_CASE("surface prediction json uses null for a missing hermitian value") {
  const SurfacePrediction imaginary_only =
      reality_threshold(ModelKind::IATXY, 0.0, 2.0);
  const json j = surface_prediction_to_json(imaginary_only);
  CHECK(j.at("hermitian_value").is_null());
  CHECK(j.at("kind") == "iatxy");
  CHECK(j.at("value").get<double>() == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("sweep record json uses null for missing detections") {
  SweepRecord none{0.5, 1.2, std::nullopt, std::nullopt, 6, 0.5, 0.05};
  const json j = sweep_record_to_json(none);
  CHECK(j.at("detected").is_null());
  CHECK(j.at("difference").is_null());
}
