// SPDX-License-Identifier: Apache-2.0
#include "ctcsim/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "ctcsim/analysis.hpp"
#include "ctcsim/error.hpp"

namespace ctcsim {

namespace {

constexpr std::uint64_t kSuiteSeed = 0x5eedc7c51a6ull;

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << what;
    }
  }
};

Matrix unproven_theorem_tctc_expected() {
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 0.5;
  expected(0, 3) = 0.25;
  expected(3, 0) = 0.25;
  expected(3, 3) = 0.5;
  return expected;
}

Matrix half_mixture_00_11() {
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 0.5;
  expected(3, 3) = 0.5;
  return expected;
}

bool is_diagonal(const Matrix& m, double tol) {
  Matrix off = m;
  off.diagonal().setZero();
  return off.cwiseAbs().maxCoeff() <= tol;
}

CriterionResult timed(int id, const std::string& name, double limit_seconds,
                      const std::function<void(Check&)>& body) {
  CriterionResult result;
  result.id = id;
  result.name = name;
  result.limit_seconds = limit_seconds;
  Check check;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(check);
  } catch (const std::exception& e) {
    check.require(false, std::string("exception: ") + e.what());
  }
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (result.seconds >= limit_seconds) {
    check.require(false, "runtime limit exceeded");
  }
  result.pass = check.ok;
  result.detail = check.detail.str();
  return result;
}

void criterion_unproven_theorem_dctc(Check& check) {
  const StandardFormCircuit circuit = catalog("unproven_theorem");
  const DensityOperator input =
      DensityOperator::pure(PureState::basis(4, 0));
  const FixedPointSet fps =
      fixed_point_set(consistency_channel(circuit, input));
  check.require(fps.subspace_dim == 2, "fixed family is not span-dim 2");
  check.require(fps.directions.size() == 1, "expected one family direction");
  for (const Matrix& b : fps.directions) {
    check.require(is_diagonal(b, 1e-9), "family direction is not diagonal");
  }
  check.require(is_diagonal(fps.representative.mat, 1e-9),
                "representative is not diagonal");

  const DensityOperator tau = max_entropy_fixed_point(fps);
  check.require(
      frobenius_distance(tau.mat, Matrix::Identity(2, 2) / 2.0) < 1e-9,
      "max-entropy tau is not 1/2 (alpha != 1/2)");
  const TheoryOutcome outcome =
      dctc_evolve(circuit, input, DctcRule::max_entropy());
  check.require(
      frobenius_distance(outcome.rho_f.mat, half_mixture_00_11()) < 1e-9,
      "rho_f is not the even |00>/|11> mixture");
}

void criterion_unproven_theorem_pctc(Check& check) {
  const TheoryOutcome outcome = pctc_evolve(
      catalog("unproven_theorem"), DensityOperator::pure(PureState::basis(4, 0)));
  Vector expected = Vector::Zero(4);
  expected(0) = expected(3) = 1.0 / std::sqrt(2.0);
  const double fid =
      fidelity(outcome.rho_f, DensityOperator{expected * expected.adjoint()});
  check.detail << "fidelity " << fid;
  check.require(fid > 1.0 - 1e-10, "fidelity with (|00>+|11>)/sqrt2 too low");
}

void criterion_unproven_theorem_tctc(Check& check, long long samples) {
  const StandardFormCircuit circuit = catalog("unproven_theorem");
  const PureState input = PureState::basis(4, 0);
  const TheoryOutcome closed = tctc_evolve(circuit, input);
  check.require(
      (closed.rho_f.mat - unproven_theorem_tctc_expected()).cwiseAbs()
              .maxCoeff() < 1e-9,
      "closed form differs from the expected matrix");

  const MCEstimate mc =
      tctc_evolve_mc(circuit, input, samples, mix_seed(kSuiteSeed, 3));
  const double frob = frobenius_distance(mc.mean, closed.rho_f.mat);
  const DensityOperator mc_density =
      DensityOperator::validated(mc.mean, 1e-8, 1e-8, 1e-8);
  const double dist = trace_distance(mc_density, closed.rho_f);
  check.detail << "mc frobenius " << frob << " (5 se = " << 5 * mc.std_error
               << "), trace distance " << dist;
  check.require(frob <= 5.0 * mc.std_error + 1e-12,
                "Monte-Carlo oracle outside 5 std errors");
  check.require(dist < 0.02, "Monte-Carlo trace distance >= 0.02");
}

void criterion_distinguishing(Check& check) {
  const StandardFormCircuit circuit = catalog("distinguishing");
  const PureState zero = PureState::basis(2, 0);
  const PureState one = PureState::basis(2, 1);
  Vector minus_v(2), plus_v(2);
  const double s = 1.0 / std::sqrt(2.0);
  minus_v << s, -s;
  plus_v << s, s;
  const PureState minus = PureState::normalized(minus_v);
  const PureState plus = PureState::normalized(plus_v);

  const DctcRule rule = DctcRule::max_entropy();
  const Matrix out_zero =
      dctc_evolve(circuit, DensityOperator::pure(zero), rule).rho_f.mat;
  const Matrix out_minus =
      dctc_evolve(circuit, DensityOperator::pure(minus), rule).rho_f.mat;
  Matrix proj0 = Matrix::Zero(2, 2), proj1 = Matrix::Zero(2, 2);
  proj0(0, 0) = 1.0;
  proj1(1, 1) = 1.0;
  check.require(frobenius_distance(out_zero, proj0) < 1e-10,
                "D-CTC |0> does not map to |0><0|");
  check.require(frobenius_distance(out_minus, proj1) < 1e-10,
                "D-CTC |-> does not map to |1><1|");

  Matrix expected_p(2, 2);
  expected_p << 1, 0, s, -s;  // |0><0| + |1><-|
  check.require(
      frobenius_distance(pctc_operator(circuit).mat, expected_p) < 1e-10,
      "P operator differs from |0><0| + |1><-|");

  const Matrix out_plus =
      pctc_evolve(circuit, DensityOperator::pure(plus)).rho_f.mat;
  const Matrix out_one =
      pctc_evolve(circuit, DensityOperator::pure(one)).rho_f.mat;
  check.require(frobenius_distance(out_plus, proj0) < 1e-10,
                "P-CTC |+> does not map to |0>");
  check.require(frobenius_distance(out_one, proj1) < 1e-10,
                "P-CTC |1> does not map to |1>");
}

void criterion_ecm_counterexample(Check& check) {
  const StandardFormCircuit circuit = catalog("ecm_counterexample");
  const DensityOperator input =
      DensityOperator::pure(PureState::basis(2, 0));
  const Superoperator channel = consistency_channel(circuit, input);

  const IterationReport iteration =
      iterate_channel(channel, input, 64, 1e-9);
  check.require(iteration.verdict == IterationReport::Verdict::Cycle,
                "plain iteration did not cycle");
  check.require(iteration.period == 2, "cycle period is not 2");

  const Matrix half = Matrix::Identity(2, 2) / 2.0;
  const FixedPointSet fps = fixed_point_set(channel);
  check.require(fps.subspace_dim == 1, "fixed point is not unique");
  check.require(frobenius_distance(fps.representative.mat, half) < 1e-9,
                "Cesaro mean is not 1/2");

  // Independent eigenvector route to the same fixed point.
  Eigen::ComplexEigenSolver<Matrix> solver(channel.mat);
  int found = 0;
  Matrix eigen_fixed = Matrix::Zero(2, 2);
  for (Index i = 0; i < solver.eigenvalues().size(); ++i) {
    if (std::abs(solver.eigenvalues()(i) - Complex(1, 0)) <= 1e-8) {
      ++found;
      Matrix x = unvec(solver.eigenvectors().col(i), 2);
      x = 0.5 * (x + x.adjoint());
      eigen_fixed = x / x.trace().real();
    }
  }
  check.require(found == 1, "eigen-solver found a different multiplicity");
  check.require(frobenius_distance(eigen_fixed, half) < 1e-9,
                "eigen-solver fixed point is not 1/2");
}

void criterion_noise_uniqueness(Check& check) {
  const Superoperator channel = consistency_channel(
      catalog("unproven_theorem"),
      DensityOperator::pure(PureState::basis(4, 0)));
  const Matrix half = Matrix::Identity(2, 2) / 2.0;
  for (double p : {0.5, 0.1, 1e-3, 1e-7}) {
    const DensityOperator tau = noisy_fixed_point(channel, p);
    std::ostringstream what;
    what << "noisy fixed point at p = " << p << " is not 1/2";
    check.require(frobenius_distance(tau.mat, half) < 1e-8, what.str());
  }
}

void criterion_paradox_handling(Check& check) {
  const StandardFormCircuit circuit = catalog("traceless_paradox");
  for (Index basis = 0; basis < 2; ++basis) {
    bool threw = false;
    try {
      pctc_evolve(circuit, DensityOperator::pure(PureState::basis(2, basis)));
    } catch (const ParadoxError&) {
      threw = true;
    }
    check.require(threw, "computational-basis input did not raise a paradox");
  }
  const DensityOperator chi = DensityOperator::maximally_mixed(8);
  const DensityOperator input = DensityOperator::pure(PureState::basis(2, 0));
  const TheoryOutcome coarse = pctc_evolve_noisy(circuit, input, chi, 1e-3);
  const TheoryOutcome fine = pctc_evolve_noisy(circuit, input, chi, 1e-6);
  const double dist = trace_distance(coarse.rho_f, fine.rho_f);
  check.detail << "eps-independence trace distance " << dist;
  check.require(dist < 1e-9, "noisy output depends on eps");
  check.require(frobenius_distance(coarse.rho_f.mat,
                                   Matrix::Identity(2, 2) / 2.0) < 1e-9,
                "noisy output is not maximally mixed");
}

void criterion_haar_moments(Check& check, long long samples) {
  for (Index d : {Index(2), Index(4)}) {
    const MomentReport gauss = moment_integrals(
        d, samples, mix_seed(kSuiteSeed, 80 + d), CvSampler::Gaussian);
    const MomentReport hurwitz = moment_integrals(
        d, samples, mix_seed(kSuiteSeed, 90 + d), CvSampler::Hurwitz);
    std::ostringstream tag;
    tag << "d = " << d << ": ";

    check.require(std::abs(gauss.ratio - 2.0) <= 5.0 * gauss.ratio_std_error,
                  tag.str() + "fourth-moment ratio is not 2");
    check.require(std::abs(gauss.mixed.mean) <= 5.0 * gauss.mixed.std_error,
                  tag.str() + "mixed-pattern integral is not 0");
    check.require(std::abs(gauss.i_abab.mean.real() -
                           gauss.i_aabb.mean.real()) <=
                      5.0 * std::hypot(gauss.i_abab.std_error,
                                       gauss.i_aabb.std_error),
                  tag.str() + "moment classes are not equal");

    const double second_gap =
        std::abs(gauss.second.mean.real() - hurwitz.second.mean.real());
    check.require(second_gap <= 5.0 * std::hypot(gauss.second.std_error,
                                                 hurwitz.second.std_error),
                  tag.str() + "samplers disagree on the second moment");
    const double fourth_gap =
        std::abs(gauss.i_aaaa.mean.real() - hurwitz.i_aaaa.mean.real());
    check.require(fourth_gap <= 5.0 * std::hypot(gauss.i_aaaa.std_error,
                                                 hurwitz.i_aaaa.std_error),
                  tag.str() + "samplers disagree on the fourth moment");
    if (d == 2) {
      check.detail << "ratio(d=2) " << gauss.ratio << " +- "
                   << gauss.ratio_std_error << "; ";
    }
  }
}

void criterion_oracle_equivalence(Check& check, long long mc_samples,
                                  int random_pctc, int random_tctc) {
  // P-CTC protocol oracle vs the Tr_CV(U) map.
  Rng rng(mix_seed(kSuiteSeed, 40));
  for (const std::string& name : catalog_names()) {
    const StandardFormCircuit circuit = catalog(name);
    for (int rep = 0; rep < 2; ++rep) {
      const DensityOperator input =
          DensityOperator::pure(haar_state(circuit.cr_dim(), rng));
      bool direct_paradox = false, oracle_paradox = false;
      DensityOperator direct = DensityOperator::maximally_mixed(2);
      DensityOperator oracle = DensityOperator::maximally_mixed(2);
      try {
        direct = pctc_evolve(circuit, input).rho_f;
      } catch (const ParadoxError&) {
        direct_paradox = true;
      }
      try {
        oracle = pctc_protocol_oracle(circuit, input).rho_f;
      } catch (const ParadoxError&) {
        oracle_paradox = true;
      }
      check.require(direct_paradox == oracle_paradox,
                    name + ": oracle and map disagree on paradox");
      if (!direct_paradox) {
        check.require(trace_distance(direct, oracle) <= 1e-10,
                      name + ": P-CTC oracle mismatch");
      }
    }
  }
  for (int trial = 0; trial < random_pctc; ++trial) {
    Rng sub = rng.substream(100 + std::uint64_t(trial));
    const int n = 1 + int(sub.next_u64() % 2);
    const int m = 1 + int(sub.next_u64() % 2);
    const StandardFormCircuit circuit = random_circuit(n, m, sub);
    const DensityOperator input =
        DensityOperator::pure(haar_state(circuit.cr_dim(), sub));
    const double dist = trace_distance(
        pctc_evolve(circuit, input).rho_f,
        pctc_protocol_oracle(circuit, input).rho_f);
    check.require(dist <= 1e-10, "random-circuit P-CTC oracle mismatch");
  }

  // T-CTC closed form vs the Monte-Carlo integral.
  auto mc_matches = [&](const StandardFormCircuit& circuit,
                        const PureState& input, std::uint64_t seed,
                        const std::string& what) {
    const TheoryOutcome closed = tctc_evolve(circuit, input);
    const MCEstimate mc = tctc_evolve_mc(circuit, input, mc_samples, seed);
    const double frob = frobenius_distance(mc.mean, closed.rho_f.mat);
    check.require(frob <= 5.0 * mc.std_error + 1e-12,
                  what + ": T-CTC Monte-Carlo outside 5 std errors");
  };
  std::uint64_t stream = 500;
  for (const std::string& name : catalog_names()) {
    const StandardFormCircuit circuit = catalog(name);
    for (Index basis = 0; basis < circuit.cr_dim(); ++basis) {
      mc_matches(circuit, PureState::basis(circuit.cr_dim(), basis),
                 mix_seed(kSuiteSeed, stream++), name);
    }
  }
  for (int trial = 0; trial < random_tctc; ++trial) {
    Rng sub = rng.substream(900 + std::uint64_t(trial));
    const int n = 1 + int(sub.next_u64() % 2);
    const int m = 1 + int(sub.next_u64() % 2);
    const StandardFormCircuit circuit = random_circuit(n, m, sub);
    mc_matches(circuit, haar_state(circuit.cr_dim(), sub),
               mix_seed(kSuiteSeed, stream++), "random circuit");
  }
}

void criterion_bound_audit(Check& check, long long trials) {
  const BoundAuditReport report =
      bound_audit(trials, mix_seed(kSuiteSeed, 10), 1, 1);
  check.detail << report.trials << " trials, min margins: p-norm "
               << report.min_margin_p_norm << ", lambda "
               << report.min_margin_lambda << ", fidelity "
               << report.min_margin_fidelity << ", distance "
               << report.min_margin_distance;
  check.require(report.violations == 0, "bound violations observed");
  check.require(report.distance_one_only_orthogonal,
                "perfect distinguishing of non-orthogonal inputs");
}

void criterion_reduction(Check& check, int trials) {
  Rng rng(mix_seed(kSuiteSeed, 20));
  for (int trial = 0; trial <= trials; ++trial) {
    Rng sub = rng.substream(std::uint64_t(trial));
    const int n = 1 + int(sub.next_u64() % 2);
    const int m = 1;
    StandardFormCircuit circuit;
    circuit.n = n;
    circuit.m = m;
    const Matrix v = haar_unitary(Index(1) << n, sub);
    // Final trial pins the traceless-W case, which must be flagged as a
    // P-CTC paradox rather than silently wrong.
    const bool traceless_case = (trial == trials);
    const Matrix w = traceless_case ? pauli_x() : haar_unitary(2, sub);
    GateSpec gate_v{GateName::MATRIX, {}, v};
    for (int q = 0; q < n; ++q) gate_v.targets.push_back(q);
    GateSpec gate_w{GateName::MATRIX, {n}, w};
    circuit.gates = {gate_v, gate_w};

    const PureState psi = haar_state(Index(1) << n, sub);
    const Vector mapped = v * psi.amplitudes;
    const Matrix expected = mapped * mapped.adjoint();
    const DensityOperator input = DensityOperator::pure(psi);

    const Matrix dctc_out =
        dctc_evolve(circuit, input, DctcRule::max_entropy()).rho_f.mat;
    check.require(frobenius_distance(dctc_out, expected) < 1e-9,
                  "D-CTC does not reduce to V rho V^dag");
    const Matrix tctc_out = tctc_evolve(circuit, psi).rho_f.mat;
    check.require(frobenius_distance(tctc_out, expected) < 1e-9,
                  "T-CTC does not reduce to V rho V^dag");
    try {
      const Matrix pctc_out = pctc_evolve(circuit, input).rho_f.mat;
      check.require(!traceless_case,
                    "traceless W must raise a P-CTC paradox");
      check.require(frobenius_distance(pctc_out, expected) < 1e-9,
                    "P-CTC does not reduce to V rho V^dag");
    } catch (const ParadoxError&) {
      check.require(std::abs(w.trace()) < 1e-8,
                    "P-CTC paradox raised for Tr W != 0");
    }
  }
}

}  // namespace

std::vector<CriterionResult> run_acceptance(bool quick) {
  const long long mc_samples = quick ? 20000 : 100000;
  const long long audit_trials = quick ? 150 : 500;
  const int random_pctc = quick ? 15 : 50;
  const int random_tctc = quick ? 8 : 20;
  const int reduction_trials = quick ? 20 : 50;

  std::vector<CriterionResult> results;
  results.push_back(timed(1, "unproven-theorem-dctc", 1.0,
                          criterion_unproven_theorem_dctc));
  results.push_back(timed(2, "unproven-theorem-pctc", 1.0,
                          criterion_unproven_theorem_pctc));
  results.push_back(timed(3, "unproven-theorem-tctc", 30.0, [&](Check& c) {
    criterion_unproven_theorem_tctc(c, mc_samples);
  }));
  results.push_back(timed(4, "distinguishing-circuit", 1.0,
                          criterion_distinguishing));
  results.push_back(timed(5, "equivalent-circuit-counterexample", 1.0,
                          criterion_ecm_counterexample));
  results.push_back(timed(6, "depolarizing-noise-uniqueness", 1.0,
                          criterion_noise_uniqueness));
  results.push_back(timed(7, "pctc-paradox-handling", 1.0,
                          criterion_paradox_handling));
  results.push_back(timed(8, "haar-moment-identities", 60.0, [&](Check& c) {
    criterion_haar_moments(c, mc_samples);
  }));
  results.push_back(timed(9, "oracle-equivalences", 300.0, [&](Check& c) {
    criterion_oracle_equivalence(c, mc_samples, random_pctc, random_tctc);
  }));
  results.push_back(timed(10, "bound-audit", 300.0, [&](Check& c) {
    criterion_bound_audit(c, audit_trials);
  }));
  results.push_back(timed(11, "product-unitary-reduction", 30.0,
                          [&](Check& c) { criterion_reduction(c, reduction_trials); }));
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const CriterionResult& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

std::string format_results(const std::vector<CriterionResult>& results) {
  std::ostringstream out;
  for (const CriterionResult& r : results) {
    out << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "  " << r.name;
    if (!r.detail.empty()) out << "  [" << r.detail << "]";
    out << "  (" << r.seconds << "s)\n";
  }
  out << (all_passed(results) ? "all criteria passed" : "FAILURES present")
      << "\n";
  return out.str();
}

}  // namespace ctcsim
