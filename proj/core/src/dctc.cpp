// SPDX-License-Identifier: Apache-2.0
#include "ctcsim/dctc.hpp"

#include <algorithm>
#include <cmath>

#include "ctcsim/error.hpp"

namespace ctcsim {

namespace {

double hs_inner(const Matrix& a, const Matrix& b) {
  return (a.adjoint() * b).trace().real();
}

double min_eigenvalue(const Matrix& hermitian) {
  return hermitian_eigenvalues(hermitian).minCoeff();
}

// Orthonormal (Hilbert-Schmidt) basis of the Hermitian part of the span of
// the given operators, as a real vector space.
std::vector<Matrix> hermitian_basis(const std::vector<Matrix>& ops,
                                    double drop_tol = 1e-6) {
  std::vector<Matrix> basis;
  auto add = [&](Matrix candidate) {
    for (const Matrix& b : basis) {
      candidate -= hs_inner(b, candidate) * b;
    }
    const double norm = candidate.norm();
    if (norm > drop_tol) {
      basis.push_back(candidate / norm);
    }
  };
  for (const Matrix& x : ops) {
    add(0.5 * (x + x.adjoint()));
    add(Complex(0, 0.5) * (x - x.adjoint()));
  }
  return basis;
}

double family_entropy(const Matrix& tau) {
  const Eigen::VectorXd evals = hermitian_eigenvalues(tau);
  double s = 0.0;
  for (Index i = 0; i < evals.size(); ++i) {
    if (evals(i) > kEntropyEigenvalueFloor) s -= evals(i) * std::log(evals(i));
  }
  return s;
}

// Largest t >= 0 with tau0 + t*step*direction still PSD. Fixed operators
// have Hilbert-Schmidt distance at most 2 from tau0, so the search is
// capped there.
double psd_extent(const Matrix& tau0, const Matrix& direction, double sign) {
  const double cap = 2.0;
  auto feasible = [&](double t) {
    return min_eigenvalue(tau0 + sign * t * direction) >= -1e-12;
  };
  if (!feasible(0.0)) return 0.0;
  double lo = 0.0, hi = cap;
  if (feasible(cap)) return cap;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

Superoperator consistency_channel(const StandardFormCircuit& circuit,
                                  const DensityOperator& rho_i) {
  if (rho_i.dim() != circuit.cr_dim()) {
    throw ValidationError("consistency_channel: rho_i must act on the CR qubits");
  }
  const UnitaryMatrix u = compile_unitary(circuit);
  const Index dcr = circuit.cr_dim();
  const Index dcv = circuit.cv_dim();

  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      0.5 * (rho_i.mat + rho_i.mat.adjoint()));
  if (solver.info() != Eigen::Success) {
    throw Error("consistency_channel: eigensolver failure");
  }

  // Kraus operators K_{a,v} = sqrt(p_v) <a|_CR U |v>_CR acting on the CV
  // factor; the channel is sum K tau K^dag.
  std::vector<Matrix> kraus;
  for (Index v = 0; v < dcr; ++v) {
    const double p = solver.eigenvalues()(v);
    if (p <= 1e-15) continue;
    const Vector vec_in = solver.eigenvectors().col(v);
    for (Index a = 0; a < dcr; ++a) {
      Matrix k = Matrix::Zero(dcv, dcv);
      for (Index t_out = 0; t_out < dcv; ++t_out) {
        for (Index t_in = 0; t_in < dcv; ++t_in) {
          Complex sum = 0.0;
          for (Index r_in = 0; r_in < dcr; ++r_in) {
            sum += u.mat(a * dcv + t_out, r_in * dcv + t_in) * vec_in(r_in);
          }
          k(t_out, t_in) = sum;
        }
      }
      kraus.push_back(std::sqrt(p) * std::move(k));
    }
  }
  return Superoperator::from_kraus(dcv, kraus);
}

FixedPointSet fixed_point_set(const Superoperator& channel,
                              double eigenvalue_window) {
  const Index d = channel.dim;

  Eigen::ComplexEigenSolver<Matrix> solver(channel.mat);
  if (solver.info() != Eigen::Success) {
    throw Error("fixed_point_set: eigensolver failure");
  }
  std::vector<Matrix> fixed_ops;
  for (Index i = 0; i < solver.eigenvalues().size(); ++i) {
    if (std::abs(solver.eigenvalues()(i) - Complex(1.0, 0.0)) <=
        eigenvalue_window) {
      fixed_ops.push_back(unvec(solver.eigenvectors().col(i), d));
    }
  }
  if (fixed_ops.empty()) {
    throw Error("fixed_point_set: no eigenvalue-1 eigenvector found");
  }
  std::vector<Matrix> herm = hermitian_basis(fixed_ops);

  // Cesaro mean of the orbit of 1/d, accelerated by doubling:
  // mean_{2N} = (1 + S^N)/2 * mean_N. Repeated squaring amplifies the
  // rounding drift of the peripheral eigenvalues exponentially, so each
  // doubled mean is renormalized to unit trace and the effective N is
  // capped at 2^45.
  const Index d2 = d * d;
  const Vector start = vec(Matrix::Identity(d, d) / double(d));
  const Vector id_left = vec(Matrix::Identity(d, d));
  Matrix power = channel.mat;
  Matrix mean_op = Matrix::Identity(d2, d2);
  Vector mean = start;
  for (int round = 0; round < 45; ++round) {
    mean_op = 0.5 * (mean_op + power * mean_op);
    power = power * power;
    Vector next = mean_op * start;
    next /= id_left.dot(next);
    const double delta = (next - mean).norm();
    mean = next;
    if (round >= 2 && delta < 1e-10) break;
  }
  DensityOperator representative =
      DensityOperator::validated(unvec(mean, d), 1e-8, 1e-8, 1e-8);

  FixedPointSet fps;
  fps.subspace_dim = int(herm.size());
  // Traceless directions spanning the family modulo the representative.
  std::vector<Matrix> traceless;
  for (const Matrix& h : herm) {
    traceless.push_back(h - h.trace() * representative.mat);
  }
  fps.directions = hermitian_basis(traceless, 1e-8);
  fps.representative = std::move(representative);
  return fps;
}

DensityOperator max_entropy_fixed_point(const FixedPointSet& fps) {
  const size_t r = fps.directions.size();
  if (r == 0) return fps.representative;
  const Index d = fps.representative.dim();

  Eigen::VectorXd coeff = Eigen::VectorXd::Zero(r);
  auto family = [&](const Eigen::VectorXd& c) {
    Matrix tau = fps.representative.mat;
    for (size_t j = 0; j < r; ++j) tau += c(j) * fps.directions[j];
    return tau;
  };

  Matrix tau = family(coeff);
  double value = family_entropy(tau);
  double step = 1.0;
  for (int iter = 0; iter < 500; ++iter) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (tau + tau.adjoint()));
    const Eigen::VectorXd evals = solver.eigenvalues();
    const Matrix& evecs = solver.eigenvectors();

    // d/dc_j of -Tr[tau ln tau] = -Tr[B_j ln tau] for traceless B_j,
    // evaluated on the support of tau.
    Eigen::VectorXd grad(r);
    for (size_t j = 0; j < r; ++j) {
      const Matrix rotated = evecs.adjoint() * fps.directions[j] * evecs;
      double g = 0.0;
      for (Index k = 0; k < d; ++k) {
        if (evals(k) > kEntropyEigenvalueFloor) {
          g -= rotated(k, k).real() * (1.0 + std::log(evals(k)));
        }
      }
      grad(j) = g;
    }
    if (grad.cwiseAbs().maxCoeff() < 1e-7) break;

    step = std::min(2.0 * step, 1.0);
    bool accepted = false;
    while (step > 1e-14) {
      const Eigen::VectorXd trial = coeff + step * grad;
      const Matrix tau_trial = family(trial);
      if (min_eigenvalue(tau_trial) >= -1e-12) {
        const double trial_value = family_entropy(tau_trial);
        if (trial_value >= value + 1e-4 * step * grad.squaredNorm()) {
          coeff = trial;
          tau = tau_trial;
          value = trial_value;
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  return DensityOperator::validated(tau, 1e-9, 1e-9, 1e-9);
}

DensityOperator noisy_fixed_point(const Superoperator& channel, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw ValidationError("noisy_fixed_point: p must lie in (0, 1)");
  }
  const Index d = channel.dim;
  const Index d2 = d * d;
  const Matrix a = Matrix::Identity(d2, d2) - (1.0 - p) * channel.mat;
  const Vector b = (p / double(d)) * vec(Matrix::Identity(d, d));

  Eigen::FullPivLU<Matrix> lu(a);
  if (!lu.isInvertible()) {
    throw DegeneracyError(
        "noisy_fixed_point: 1/(1-p) is an eigenvalue of the channel; "
        "perturb p");
  }
  const Vector x = lu.solve(b);
  if ((a * x - b).norm() > 1e-8 * std::max(1.0, b.norm())) {
    throw DegeneracyError(
        "noisy_fixed_point: near-singular consistency system; perturb p");
  }
  // The exact solution is Hermitian with unit trace; project out the
  // conditioning drift of the solve before validating.
  Matrix tau = unvec(x, d);
  tau = 0.5 * (tau + tau.adjoint());
  tau /= tau.trace().real();
  return DensityOperator::validated(tau, 1e-9, 1e-9, 1e-7);
}

DensityOperator dctc_output_state(const StandardFormCircuit& circuit,
                                  const DensityOperator& rho_i,
                                  const DensityOperator& tau) {
  const UnitaryMatrix u = compile_unitary(circuit);
  const Matrix joint = u.mat * tensor_product(rho_i.mat, tau.mat) *
                       u.mat.adjoint();
  return DensityOperator::validated(
      partial_trace(joint, circuit.cr_dim(), circuit.cv_dim(), Keep::First),
      1e-9, 1e-9, 1e-9);
}

TheoryOutcome dctc_evolve(const StandardFormCircuit& circuit,
                          const DensityOperator& rho_i, const DctcRule& rule) {
  const Superoperator channel = consistency_channel(circuit, rho_i);

  DensityOperator tau = DensityOperator::maximally_mixed(channel.dim);
  TheoryOutcome outcome{DensityOperator::maximally_mixed(circuit.cr_dim()),
                        {}, {}, {}, {}};
  switch (rule.kind) {
    case DctcRule::Kind::MaxEntropy: {
      const FixedPointSet fps = fixed_point_set(channel);
      tau = max_entropy_fixed_point(fps);
      outcome.diagnostics["subspace_dim"] = double(fps.subspace_dim);
      break;
    }
    case DctcRule::Kind::Representative: {
      const FixedPointSet fps = fixed_point_set(channel);
      tau = fps.representative;
      outcome.diagnostics["subspace_dim"] = double(fps.subspace_dim);
      break;
    }
    case DctcRule::Kind::Noise: {
      tau = noisy_fixed_point(channel, rule.noise);
      outcome.diagnostics["noise"] = rule.noise;
      break;
    }
  }
  outcome.rho_f = dctc_output_state(circuit, rho_i, tau);
  outcome.entropy_tau = von_neumann_entropy(tau);
  outcome.tau = std::move(tau);
  return outcome;
}

IterationReport iterate_channel(const Superoperator& channel,
                                const DensityOperator& sigma0, int max_iter,
                                double tol) {
  IterationReport report;
  report.trajectory.push_back(sigma0.mat);
  for (int k = 1; k <= max_iter; ++k) {
    report.trajectory.push_back(channel.apply(report.trajectory.back()));
    const Matrix& current = report.trajectory.back();
    const int max_period = std::min(16, k);
    for (int j = 1; j <= max_period; ++j) {
      if (frobenius_distance(current, report.trajectory[k - j]) < tol) {
        if (j == 1) {
          report.verdict = IterationReport::Verdict::Converged;
          report.converged_at = k - 1;
          report.limit =
              DensityOperator::validated(current, 1e-8, 1e-8, 1e-8);
        } else {
          report.verdict = IterationReport::Verdict::Cycle;
          report.period = j;
        }
        return report;
      }
    }
  }
  return report;
}

TheoryOutcome weighted_dctc_evolve(const StandardFormCircuit& circuit,
                                   const DensityOperator& rho_i,
                                   Weighting weighting, int grid_points) {
  if (grid_points < 2) {
    throw ValidationError("weighted_dctc_evolve: grid_points must be >= 2");
  }
  const Superoperator channel = consistency_channel(circuit, rho_i);
  const FixedPointSet fps = fixed_point_set(channel);
  if (fps.subspace_dim > 3) {
    throw ValidationError(
        "weighted_dctc_evolve: fixed family has more than two directions; "
        "quadrature unsupported");
  }
  const size_t r = fps.directions.size();

  Matrix tau_mat = fps.representative.mat;
  double feasible_points = 1.0;
  if (r > 0) {
    // Per-axis PSD extents; for two directions the box is inflated to cover
    // the polytope corners and infeasible grid points carry zero weight.
    const double inflate = (r == 1) ? 1.0 : 2.0;
    std::vector<double> lo(r), hi(r);
    for (size_t j = 0; j < r; ++j) {
      hi[j] = std::min(inflate * psd_extent(fps.representative.mat,
                                            fps.directions[j], +1.0), 2.0);
      lo[j] = -std::min(inflate * psd_extent(fps.representative.mat,
                                             fps.directions[j], -1.0), 2.0);
    }
    Matrix accum = Matrix::Zero(channel.dim, channel.dim);
    double weight_sum = 0.0;
    feasible_points = 0.0;
    std::vector<int> idx(r, 0);
    const long long total = [&] {
      long long t = 1;
      for (size_t j = 0; j < r; ++j) t *= grid_points;
      return t;
    }();
    for (long long flat = 0; flat < total; ++flat) {
      long long rest = flat;
      Matrix tau_c = fps.representative.mat;
      for (size_t j = 0; j < r; ++j) {
        const int i = int(rest % grid_points);
        rest /= grid_points;
        const double c = lo[j] + (hi[j] - lo[j]) * i / double(grid_points - 1);
        tau_c += c * fps.directions[j];
      }
      if (min_eigenvalue(tau_c) < -1e-12) continue;
      const double w = (weighting == Weighting::Uniform)
                           ? 1.0
                           : (tau_c * tau_c).trace().real();
      accum += w * tau_c;
      weight_sum += w;
      feasible_points += 1.0;
    }
    if (weight_sum <= 0.0) {
      throw Error("weighted_dctc_evolve: empty quadrature domain");
    }
    tau_mat = accum / weight_sum;
  }

  DensityOperator tau = DensityOperator::validated(tau_mat, 1e-9, 1e-9, 1e-9);
  TheoryOutcome outcome{dctc_output_state(circuit, rho_i, tau), {}, {}, {}, {}};
  outcome.entropy_tau = von_neumann_entropy(tau);
  outcome.tau = std::move(tau);
  outcome.diagnostics["subspace_dim"] = double(fps.subspace_dim);
  outcome.diagnostics["grid_points"] = double(grid_points);
  outcome.diagnostics["feasible_points"] = feasible_points;
  return outcome;
}

}  // namespace ctcsim
