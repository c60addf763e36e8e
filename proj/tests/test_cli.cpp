#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "nhchain/analytic.hpp"

using nlohmann::json;

namespace {

struct CliResult {
  int exit_code;
  std::string output;
};

std::string cli_path() {
  const char* env = std::getenv("NHCHAIN_CLI");
  REQUIRE_MESSAGE(env != nullptr, "NHCHAIN_CLI must point at the binary");
  return env;
}

CliResult run_cli(const std::string& args) {
  const std::string command = cli_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  std::array<char, 4096> buffer;
  std::size_t got;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    output.append(buffer.data(), got);
  }
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = std::string("/tmp/nhchain_test_") + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("predict iatxy closed form") {
  const CliResult r = run_cli("predict --kind iatxy --gamma 0.5 --lambda2 0.5");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j.at("value").get<double>() ==
        doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));
  CHECK(j.at("kind") == "iatxy");
}

TEST_CASE("predict ixyz closed form") {
  const CliResult r = run_cli("predict --kind ixyz --gamma 1.0 --delta 0");
  REQUIRE(r.exit_code == 0);
  CHECK(json::parse(r.output).at("value").get<double>() ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("predict long-range picks up the lattice sum") {
  const CliResult r =
      run_cli("predict --kind iatxy_lr --alpha 1 --n 8 --gamma 0.5 --lambda2 0");
  REQUIRE(r.exit_code == 0);
  const double expected = std::sqrt(1.25) * nhchain::lattice_sum(1.0, 8);
  CHECK(json::parse(r.output).at("value").get<double>() ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("scan emits csv and is byte-deterministic") {
  const std::string args =
      "scan --kind iatxy --n 6 --gamma 0.5 --start 0 --stop 0.2 --step 0.1";
  const CliResult first = run_cli(args);
  REQUIRE(first.exit_code == 0);
  CHECK(first.output.find("# nhchain") == 0);
  CHECK(first.output.find("control,predicted,detected,difference,n_sites,gamma,step") !=
        std::string::npos);
  // three control points, each with a detection
  int rows = 0;
  std::istringstream lines(first.output);
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] != '#' && line.find("control") != 0) {
      ++rows;
      CHECK(line.find(",,") == std::string::npos);
    }
  }
  CHECK(rows == 3);

  const CliResult second = run_cli(args);
  REQUIRE(second.exit_code == 0);
  CHECK(first.output == second.output);
}

TEST_CASE("scan with an empty sweep range is a usage error") {
  const CliResult r =
      run_cli("scan --kind iatxy --n 6 --gamma 0.5 --start 1.0 --stop 0.5 --step 0.1");
  CHECK(r.exit_code == 2);
}

TEST_CASE("scan rejects a mismatched sweep parameter") {
  const CliResult r = run_cli(
      "scan --kind iatxy --n 6 --gamma 0.5 --sweep-param delta --start 0 "
      "--stop 0.2 --step 0.1");
  CHECK(r.exit_code == 2);
}

TEST_CASE("spectrum classifies a broken-phase point") {
  const CliResult r =
      run_cli("spectrum --kind iatxy --n 4 --gamma 0.8 --lambda1 0 --lambda2 0");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j.at("is_real") == false);
  CHECK(j.at("eigenvalues").size() == 16);
}

TEST_CASE("verify-longrange reports sufficiency") {
  const CliResult r = run_cli(
      "verify-longrange --kind ixyz_lr --n 8 --alpha 1 --gamma 0.5 "
      "--delta 0.5 --points 101");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j.at("sufficient") == true);
  CHECK(j.at("points").size() == 101);
  for (const auto& p : j.at("points")) {
    CHECK(p.at("is_real") == true);
    CHECK(p.at("max_abs_imag").get<double>() >= 0.0);
  }
}

TEST_CASE("entangle contrasts the non-Hermitian and Hermitian surfaces") {
  const CliResult nh = run_cli(
      "entangle --kind iatxy --n 6 --gamma 0.5 --start 0.5 --stop 0.5 --step 0.05");
  REQUIRE(nh.exit_code == 0);
  std::istringstream lines(nh.output);
  std::string line, data;
  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] != '#' && line.find("lambda2") != 0) data = line;
  }
  REQUIRE(!data.empty());
  double lambda2, gamma, lambda1_eval, e12;
  int n;
  REQUIRE(std::sscanf(data.c_str(), "%lf,%lf,%d,%lf,%lf", &lambda2, &gamma, &n,
                      &lambda1_eval, &e12) == 5);
  CHECK(e12 > 0.0);

  const CliResult herm = run_cli(
      "entangle --kind hermitian_atxy --n 6 --gamma 0.5 --start 0.5 --stop 0.5 "
      "--step 0.05");
  REQUIRE(herm.exit_code == 0);
  std::istringstream herm_lines(herm.output);
  data.clear();
  while (std::getline(herm_lines, line)) {
    if (!line.empty() && line[0] != '#' && line.find("lambda2") != 0) data = line;
  }
  REQUIRE(std::sscanf(data.c_str(), "%lf,%lf,%d,%lf,%lf", &lambda2, &gamma, &n,
                      &lambda1_eval, &e12) == 5);
  // residual from the ground-doublet overlap at this size; far below the
  // non-Hermitian value
  CHECK(e12 <= 5e-3);
}

TEST_CASE("config file drives a run and flags override it") {
  const std::string config = write_temp("config.json", R"({
    "model": {"kind": "iatxy", "n_sites": 4, "gamma": 0.25, "lambda2": 0.5},
    "tolerance": 1e-7
  })");
  const CliResult from_file = run_cli("predict --config " + config);
  REQUIRE(from_file.exit_code == 0);
  CHECK(json::parse(from_file.output).at("value").get<double>() ==
        doctest::Approx(std::sqrt(1.0 + 0.25 + 0.0625)));

  const CliResult overridden = run_cli("predict --config " + config + " --gamma 0.5");
  REQUIRE(overridden.exit_code == 0);
  CHECK(json::parse(overridden.output).at("value").get<double>() ==
        doctest::Approx(std::sqrt(1.5)));
}

TEST_CASE("unknown config keys are a usage error") {
  const std::string config = write_temp("bad_config.json", R"({
    "model": {"kind": "iatxy", "n_sites": 4},
    "typo_key": 1
  })");
  CHECK(run_cli("predict --config " + config).exit_code == 2);
}

TEST_CASE("missing kind is a usage error") {
  CHECK(run_cli("predict --gamma 0.5").exit_code == 2);
}
