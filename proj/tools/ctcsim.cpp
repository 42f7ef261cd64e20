// SPDX-License-Identifier: Apache-2.0
//
// ctcsim: evolve quantum states through standard form time-travel circuits
// under the D-CTC, P-CTC, and T-CTC theories (plus the weighted-D-CTC and
// partial-trace transition variants).
//
// Exit codes: 0 success, 1 validation/parse failure, 2 dynamical
// consistency paradox, 3 verification failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ctcsim/analysis.hpp"
#include "ctcsim/error.hpp"
#include "ctcsim/statespec.hpp"
#include "ctcsim/verify.hpp"

namespace {

using namespace ctcsim;
using nlohmann::json;

constexpr int kExitValidation = 1;
constexpr int kExitParadox = 2;
constexpr int kExitVerify = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError("cannot open file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string maybe_from_file(const std::string& text) {
  if (!text.empty() && text[0] == '@') {
    return read_file(text.substr(1));
  }
  return text;
}

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw ValidationError("cannot write file: " + out_path);
  }
  out << payload << "\n";
}

struct CircuitOptions {
  std::string file;
  std::string catalog_name;

  StandardFormCircuit load() const {
    if (!catalog_name.empty()) return catalog(catalog_name);
    if (!file.empty()) return parse_circuit(read_file(file));
    throw ValidationError("one of --circuit or --catalog is required");
  }
};

void add_circuit_options(CLI::App* cmd, CircuitOptions& options) {
  auto* file = cmd->add_option("--circuit", options.file,
                               "circuit JSON file ({n, m, gates})");
  auto* name = cmd->add_option("--catalog", options.catalog_name,
                               "built-in circuit name");
  file->excludes(name);
}

DctcRule parse_rule(const std::string& text) {
  if (text.empty() || text == "max-entropy") return DctcRule::max_entropy();
  if (text == "representative") return DctcRule::representative();
  if (text.rfind("noise=", 0) == 0) {
    return DctcRule::noise_rule(std::stod(text.substr(6)));
  }
  throw ValidationError(
      "unknown rule '" + text +
      "' (expected max-entropy, representative, or noise=P)");
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

int cmd_evolve(const CircuitOptions& circuit_options,
               const std::string& input_text, const std::string& theory,
               const std::string& rule_text, const std::string& weighting_text,
               int grid_points, long long samples, std::uint64_t seed,
               int workers, const std::string& out_path) {
  const StandardFormCircuit circuit = circuit_options.load();
  const StateSpec input = StateSpec::parse(maybe_from_file(input_text));

  RunReport report;
  report.theory = theory;
  report.circuit = circuit;

  try {
    if (theory == "dctc") {
      const TheoryOutcome outcome =
          dctc_evolve(circuit, input.as_density(), parse_rule(rule_text));
      report.rho_f = outcome.rho_f;
      report.tau = outcome.tau;
      report.diagnostics = outcome.diagnostics;
      if (outcome.entropy_tau) {
        report.diagnostics["entropy_tau"] = *outcome.entropy_tau;
      }
    } else if (theory == "weighted-dctc") {
      const Weighting weighting = (weighting_text == "transition")
                                      ? Weighting::Transition
                                      : Weighting::Uniform;
      const TheoryOutcome outcome = weighted_dctc_evolve(
          circuit, input.as_density(), weighting, grid_points);
      report.rho_f = outcome.rho_f;
      report.tau = outcome.tau;
      report.diagnostics = outcome.diagnostics;
      if (outcome.entropy_tau) {
        report.diagnostics["entropy_tau"] = *outcome.entropy_tau;
      }
    } else if (theory == "pctc") {
      const TheoryOutcome outcome = pctc_evolve(circuit, input.as_density());
      report.rho_f = outcome.rho_f;
      report.diagnostics = outcome.diagnostics;
      report.diagnostics["paradox"] = 0.0;
      if (outcome.normalizer) {
        report.diagnostics["normalizer"] = *outcome.normalizer;
      }
    } else if (theory == "tctc") {
      const TheoryOutcome outcome =
          input.is_pure() ? tctc_evolve(circuit, input.as_pure())
                          : tctc_evolve_density(circuit, input.as_density());
      report.rho_f = outcome.rho_f;
      report.diagnostics = outcome.diagnostics;
      if (outcome.normalizer) {
        report.diagnostics["normalizer"] = *outcome.normalizer;
      }
    } else if (theory == "tctc-mc" || theory == "ptrace-tctc") {
      const MCEstimate estimate =
          (theory == "tctc-mc")
              ? tctc_evolve_mc(circuit, input.as_pure(), samples, seed,
                               workers)
              : ptrace_variant_evolve(circuit, input.as_pure(), samples, seed,
                                      workers);
      report.rho_f = DensityOperator::validated(estimate.mean, 1e-6, 1e-6,
                                                1e-6);
      report.diagnostics["std_error"] = estimate.std_error;
      report.diagnostics["samples"] = double(estimate.samples);
      report.diagnostics["seed"] = double(estimate.seed);
    } else {
      throw ValidationError("unknown theory '" + theory + "'");
    }
  } catch (const ParadoxError& e) {
    emit(paradox_report_json(theory, circuit, e.what(), e.residual_trace),
         out_path);
    return kExitParadox;
  }
  report.diagnostics["entropy_rho_f"] = von_neumann_entropy(report.rho_f);
  emit(report.to_json(), out_path);
  return 0;
}

int cmd_fixed_points(const CircuitOptions& circuit_options,
                     const std::string& input_text, double noise,
                     const std::string& out_path) {
  const StandardFormCircuit circuit = circuit_options.load();
  const StateSpec input = StateSpec::parse(maybe_from_file(input_text));
  const Superoperator channel =
      consistency_channel(circuit, input.as_density());
  const FixedPointSet fps = fixed_point_set(channel);
  const DensityOperator max_entropy = max_entropy_fixed_point(fps);

  json doc;
  doc["circuit"] = json::parse(circuit_to_json(circuit));
  doc["subspace_dim"] = fps.subspace_dim;
  doc["representative"] = matrix_json(fps.representative.mat);
  doc["representative_entropy"] = von_neumann_entropy(fps.representative);
  doc["directions"] = json::array();
  for (const Matrix& b : fps.directions) {
    doc["directions"].push_back(matrix_json(b));
  }
  doc["max_entropy"] = matrix_json(max_entropy.mat);
  doc["max_entropy_entropy"] =
      von_neumann_entropy(max_entropy);
  if (noise > 0.0) {
    const DensityOperator noisy = noisy_fixed_point(channel, noise);
    doc["noisy"] = matrix_json(noisy.mat);
    doc["noisy_entropy"] = von_neumann_entropy(noisy);
    doc["noise"] = noise;
  }
  emit(doc.dump(2), out_path);
  return 0;
}

int cmd_iterate(const CircuitOptions& circuit_options,
                const std::string& input_text, const std::string& sigma0_text,
                int max_iter, double tol, const std::string& out_path) {
  const StandardFormCircuit circuit = circuit_options.load();
  const StateSpec input = StateSpec::parse(maybe_from_file(input_text));
  const StateSpec sigma0 = StateSpec::parse(maybe_from_file(sigma0_text));
  const Superoperator channel =
      consistency_channel(circuit, input.as_density());
  const IterationReport report =
      iterate_channel(channel, sigma0.as_density(), max_iter, tol);

  json doc;
  doc["circuit"] = json::parse(circuit_to_json(circuit));
  doc["iterations"] = report.trajectory.size() - 1;
  switch (report.verdict) {
    case IterationReport::Verdict::Converged:
      doc["verdict"] = "converged";
      doc["converged_at"] = report.converged_at;
      doc["limit"] = matrix_json(report.limit->mat);
      break;
    case IterationReport::Verdict::Cycle:
      doc["verdict"] = "cycle";
      doc["period"] = report.period;
      break;
    case IterationReport::Verdict::NoVerdict:
      doc["verdict"] = "no_verdict";
      break;
  }
  doc["trajectory"] = json::array();
  for (const Matrix& sigma : report.trajectory) {
    doc["trajectory"].push_back(matrix_json(sigma));
  }
  emit(doc.dump(2), out_path);
  return 0;
}

int cmd_moments(Index dim, long long samples, std::uint64_t seed,
                const std::string& out_path) {
  const MomentReport gauss =
      moment_integrals(dim, samples, seed, CvSampler::Gaussian);
  const MomentReport hurwitz =
      moment_integrals(dim, samples, mix_seed(seed, 1), CvSampler::Hurwitz);

  auto scalar = [](const ScalarEstimate& e) {
    json j;
    j["mean"] = {e.mean.real(), e.mean.imag()};
    j["std_error"] = e.std_error;
    j["samples"] = e.samples;
    return j;
  };
  auto sampler_block = [&](const MomentReport& r) {
    json j;
    j["I_abab"] = scalar(r.i_abab);
    j["I_aabb"] = scalar(r.i_aabb);
    j["I_aaaa"] = scalar(r.i_aaaa);
    j["mixed_I_0100"] = scalar(r.mixed);
    j["second_moment"] = scalar(r.second);
    j["ratio"] = r.ratio;
    j["ratio_std_error"] = r.ratio_std_error;
    return j;
  };
  json doc;
  doc["dim"] = dim;
  doc["gaussian"] = sampler_block(gauss);
  doc["hurwitz"] = sampler_block(hurwitz);
  doc["ratio_minus_two_in_std_errors"] =
      std::abs(gauss.ratio - 2.0) / gauss.ratio_std_error;
  emit(doc.dump(2), out_path);
  return 0;
}

int cmd_verify(bool quick) {
  const std::vector<CriterionResult> results = run_acceptance(quick);
  std::cout << format_results(results);
  return all_passed(results) ? 0 : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"standard form time-travel circuit simulator"};
  app.require_subcommand(1);

  // evolve
  auto* evolve = app.add_subcommand("evolve", "run one theory on one circuit");
  CircuitOptions evolve_circuit;
  add_circuit_options(evolve, evolve_circuit);
  std::string theory, input_text, rule_text, weighting_text = "uniform";
  int grid_points = 101;
  std::string out_path;
  long long samples = 100000;
  std::uint64_t seed = 1;
  int workers = 1;
  evolve->add_option("--theory", theory,
                     "dctc|pctc|tctc|tctc-mc|weighted-dctc|ptrace-tctc")
      ->required();
  evolve->add_option("--input", input_text, "input state (ket/JSON/@file)")
      ->required();
  evolve->add_option("--rule", rule_text,
                     "dctc rule: max-entropy|representative|noise=P");
  evolve->add_option("--weighting", weighting_text,
                     "weighted-dctc weighting: uniform|transition");
  evolve->add_option("--grid", grid_points,
                     "weighted-dctc quadrature points per direction");
  evolve->add_option("--samples", samples, "Monte-Carlo sample count");
  evolve->add_option("--seed", seed, "Monte-Carlo seed");
  evolve->add_option("--threads", workers, "Monte-Carlo worker threads");
  evolve->add_option("--out", out_path, "write the report to a file");

  // fixed-points
  auto* fixed = app.add_subcommand("fixed-points",
                                   "fixed-point family of the D-CTC channel");
  CircuitOptions fixed_circuit;
  add_circuit_options(fixed, fixed_circuit);
  std::string fixed_input;
  double fixed_noise = 0.0;
  std::string fixed_out;
  fixed->add_option("--input", fixed_input, "CR input state")->required();
  fixed->add_option("--noise", fixed_noise,
                    "also solve the depolarizing-noise condition at p");
  fixed->add_option("--out", fixed_out, "write the report to a file");

  // iterate
  auto* iterate = app.add_subcommand(
      "iterate", "equivalent-circuit iteration of the consistency channel");
  CircuitOptions iterate_circuit;
  add_circuit_options(iterate, iterate_circuit);
  std::string iterate_input, sigma0_text;
  int max_iter = 256;
  double tol = 1e-10;
  std::string iterate_out;
  iterate->add_option("--input", iterate_input, "CR input state")->required();
  iterate->add_option("--sigma0", sigma0_text, "initial CV state guess")
      ->required();
  iterate->add_option("--max-iter", max_iter, "iteration cap");
  iterate->add_option("--tol", tol, "Frobenius tolerance");
  iterate->add_option("--out", iterate_out, "write the report to a file");

  // moments
  auto* moments = app.add_subcommand(
      "moments", "Haar moment integrals and the sampler cross-check");
  Index dim = 2;
  long long moment_samples = 100000;
  std::uint64_t moment_seed = 1;
  std::string moments_out;
  moments->add_option("--dim", dim, "CV dimension");
  moments->add_option("--samples", moment_samples, "sample count");
  moments->add_option("--seed", moment_seed, "seed");
  moments->add_option("--out", moments_out, "write the report to a file");

  // verify
  auto* verify = app.add_subcommand("verify", "run the verification suite");
  bool quick = false;
  verify->add_flag("--quick", quick, "reduced sample counts");

  CLI11_PARSE(app, argc, argv);

  try {
    if (evolve->parsed()) {
      return cmd_evolve(evolve_circuit, input_text, theory, rule_text,
                        weighting_text, grid_points, samples, seed, workers,
                        out_path);
    }
    if (fixed->parsed()) {
      return cmd_fixed_points(fixed_circuit, fixed_input, fixed_noise,
                              fixed_out);
    }
    if (iterate->parsed()) {
      return cmd_iterate(iterate_circuit, iterate_input, sigma0_text, max_iter,
                         tol, iterate_out);
    }
    if (moments->parsed()) {
      return cmd_moments(dim, moment_samples, moment_seed, moments_out);
    }
    if (verify->parsed()) {
      return cmd_verify(quick);
    }
  } catch (const ParadoxError& e) {
    std::cerr << "paradox: " << e.what() << "\n";
    return kExitParadox;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
