// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "ctcsim/statespec.hpp"
#include "test_util.hpp"

using namespace ctcsim;
using namespace ctcsim::testutil;
using nlohmann::json;

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

CmdResult run_cli(const std::string& args, const std::string& env = "") {
  const char* bin = std::getenv("CTCSIM_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "CTCSIM_BIN must point at the ctcsim binary");
  static int counter = 0;
  const auto dir = std::filesystem::temp_directory_path();
  const auto out_path = dir / ("ctcsim_out_" + std::to_string(counter) + ".txt");
  const auto err_path = dir / ("ctcsim_err_" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string cmd = env + (env.empty() ? "" : " ") + std::string(bin) +
                          " " + args + " > " + out_path.string() + " 2> " +
                          err_path.string();
  const int status = std::system(cmd.c_str());
  CmdResult result;
  result.exit_code = WEXITSTATUS(status);
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  std::filesystem::remove(out_path);
  std::filesystem::remove(err_path);
  return result;
}

Matrix matrix_from(const json& rows) {
  Matrix m(rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < rows[i].size(); ++j) {
      m(i, j) = Complex(rows[i][j][0].get<double>(),
                        rows[i][j][1].get<double>());
    }
  }
  return m;
}

}  // namespace

TEST_CASE("evolve: D-CTC with the maximum entropy rule") {
  const CmdResult result = run_cli(
      "evolve --theory dctc --catalog unproven_theorem --input '|00>' "
      "--rule max-entropy");
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(result.out);
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = expected(3, 3) = 0.5;
  CHECK(frobenius_distance(matrix_from(doc["rho_f"]), expected) < 1e-9);
  CHECK(frobenius_distance(matrix_from(doc["tau"]),
                           Matrix::Identity(2, 2) / 2.0) < 1e-9);
  CHECK(doc["diagnostics"]["entropy_tau"].get<double>() ==
        doctest::Approx(std::log(2.0)).epsilon(1e-9));

  // The emitted report round-trips through the parser and revalidates.
  CHECK_NOTHROW(RunReport::from_json(result.out));
}

TEST_CASE("evolve: P-CTC paradox exits with code 2") {
  const CmdResult result = run_cli(
      "evolve --theory pctc --catalog traceless_paradox --input '|0>'");
  CHECK(result.exit_code == 2);
  const json doc = json::parse(result.out);
  CHECK(doc["paradox"].get<bool>());
  CHECK(doc["theory"] == "pctc");
}

TEST_CASE("evolve: T-CTC closed form and unicode kets") {
  const CmdResult result = run_cli(
      "evolve --theory tctc --catalog unproven_theorem --input '|00\xE2\x9F\xA9'");
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(result.out);
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = expected(3, 3) = 0.5;
  expected(0, 3) = expected(3, 0) = 0.25;
  CHECK(frobenius_distance(matrix_from(doc["rho_f"]), expected) < 1e-9);

  // Ket sugar covers +/- including the unicode minus sign.
  const CmdResult plus_minus = run_cli(
      "evolve --theory pctc --catalog unproven_theorem "
      "--input '|+\xE2\x88\x92>'");
  CHECK(plus_minus.exit_code == 0);
  const json pm_doc = json::parse(plus_minus.out);
  CHECK(pm_doc["diagnostics"]["paradox"].get<double>() == 0.0);
}

TEST_CASE("evolve: density-matrix input goes through purification") {
  const CmdResult result = run_cli(
      "evolve --theory tctc --catalog distinguishing "
      "--input '[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]'");
  REQUIRE(result.exit_code == 0);
  CHECK_NOTHROW(RunReport::from_json(result.out));
  const json doc = json::parse(result.out);
  CHECK(doc["diagnostics"]["purification_rank"].get<double>() == 2.0);
}

TEST_CASE("evolve: validation failures exit with code 1") {
  CHECK(run_cli("evolve --theory dctc --catalog nonsense --input '|0>'")
            .exit_code == 1);
  CHECK(run_cli("evolve --theory dctc --catalog swap --input '|x>'")
            .exit_code == 1);
  CHECK(run_cli("evolve --theory nonsense --catalog swap --input '|0>'")
            .exit_code == 1);
  // Dimension cap from the environment.
  CHECK(run_cli("evolve --theory dctc --catalog unproven_theorem "
                "--input '|00>' --rule max-entropy",
                "CTC_SIM_MAX_QUBITS=2")
            .exit_code == 1);
}

TEST_CASE("evolve: Monte-Carlo reports are deterministic") {
  const std::string args =
      "evolve --theory tctc-mc --catalog unproven_theorem --input '|00>' "
      "--samples 20000 --seed 7";
  const CmdResult first = run_cli(args + " --threads 1");
  const CmdResult second = run_cli(args + " --threads 1");
  const CmdResult threaded = run_cli(args + " --threads 3");
  REQUIRE(first.exit_code == 0);
  CHECK(first.out == second.out);
  CHECK(first.out == threaded.out);

  const json doc = json::parse(first.out);
  CHECK(doc["diagnostics"]["seed"].get<double>() == 7.0);
  CHECK(doc["diagnostics"]["samples"].get<double>() == 20000.0);
  CHECK(doc["diagnostics"]["std_error"].get<double>() > 0.0);
}

TEST_CASE("evolve: circuit files and --out") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto circuit_path = dir / "ctcsim_circuit.json";
  const auto report_path = dir / "ctcsim_report.json";
  {
    std::ofstream out(circuit_path);
    out << R"({"n":1,"m":1,"gates":[{"name":"SWAP","targets":[0,1]}]})";
  }
  const CmdResult result = run_cli("evolve --theory pctc --circuit " +
                                   circuit_path.string() + " --input '|1>' " +
                                   "--out " + report_path.string());
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(slurp(report_path));
  Matrix expected = Matrix::Zero(2, 2);
  expected(1, 1) = 1.0;
  CHECK(frobenius_distance(matrix_from(doc["rho_f"]), expected) < 1e-10);
  std::filesystem::remove(circuit_path);
  std::filesystem::remove(report_path);
}

TEST_CASE("fixed-points subcommand") {
  const CmdResult result = run_cli(
      "fixed-points --catalog unproven_theorem --input '|00>' --noise 0.1");
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(result.out);
  CHECK(doc["subspace_dim"].get<int>() == 2);
  CHECK(frobenius_distance(matrix_from(doc["max_entropy"]),
                           Matrix::Identity(2, 2) / 2.0) < 1e-9);
  CHECK(frobenius_distance(matrix_from(doc["noisy"]),
                           Matrix::Identity(2, 2) / 2.0) < 1e-8);
  CHECK(doc["directions"].size() == 1);

  const CmdResult unique =
      run_cli("fixed-points --catalog distinguishing --input '|0>'");
  REQUIRE(unique.exit_code == 0);
  const json unique_doc = json::parse(unique.out);
  CHECK(unique_doc["subspace_dim"].get<int>() == 1);
  Matrix proj0 = Matrix::Zero(2, 2);
  proj0(0, 0) = 1.0;
  CHECK(frobenius_distance(matrix_from(unique_doc["representative"]), proj0) <
        1e-9);
}

TEST_CASE("iterate subcommand") {
  const CmdResult cycling = run_cli(
      "iterate --catalog ecm_counterexample --input '|0>' --sigma0 '|0>'");
  REQUIRE(cycling.exit_code == 0);
  const json cycle_doc = json::parse(cycling.out);
  CHECK(cycle_doc["verdict"] == "cycle");
  CHECK(cycle_doc["period"].get<int>() == 2);

  const CmdResult snapped = run_cli(
      "iterate --catalog swap --input '|0>' --sigma0 '|1>'");
  REQUIRE(snapped.exit_code == 0);
  const json snap_doc = json::parse(snapped.out);
  CHECK(snap_doc["verdict"] == "converged");
  CHECK(snap_doc["converged_at"].get<int>() == 1);
  Matrix proj0 = Matrix::Zero(2, 2);
  proj0(0, 0) = 1.0;
  CHECK(frobenius_distance(matrix_from(snap_doc["limit"]), proj0) < 1e-10);

  const CmdResult fixed = run_cli(
      "iterate --catalog unproven_theorem --input '|00>' "
      "--sigma0 '[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]'");
  REQUIRE(fixed.exit_code == 0);
  CHECK(json::parse(fixed.out)["verdict"] == "converged");
}

TEST_CASE("moments subcommand") {
  const CmdResult result = run_cli("moments --dim 2 --samples 30000 --seed 5");
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(result.out);
  const double ratio = doc["gaussian"]["ratio"].get<double>();
  const double se = doc["gaussian"]["ratio_std_error"].get<double>();
  CHECK(std::abs(ratio - 2.0) <= 5.0 * se);
  const double second =
      doc["gaussian"]["second_moment"]["mean"][0].get<double>();
  const double second_se =
      doc["gaussian"]["second_moment"]["std_error"].get<double>();
  CHECK(std::abs(second - 0.5) <= 5.0 * second_se);
  CHECK(doc["hurwitz"]["ratio"].get<double>() > 1.0);
}

TEST_CASE("verify --quick passes") {
  const CmdResult result = run_cli("verify --quick");
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("FAIL") == std::string::npos);
  CHECK(result.out.find("all criteria passed") != std::string::npos);
}
