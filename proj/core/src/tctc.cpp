// SPDX-License-Identifier: Apache-2.0
#include "ctcsim/tctc.hpp"

#include <cmath>
#include <functional>
#include <thread>

#include "ctcsim/error.hpp"
#include "ctcsim/pctc.hpp"

namespace ctcsim {

namespace {

constexpr long long kChunkSize = 4096;

struct RawAccum {
  Matrix sum;
  Eigen::ArrayXXd sumsq;
  long long count = 0;
};

// Chunked Monte-Carlo driver. Chunk i draws from substream i of the seed
// and chunks are reduced in index order, so the result is bit-identical for
// a given (seed, samples) no matter how chunks are assigned to workers.
RawAccum run_chunked(Index rows, Index cols, long long samples,
                     std::uint64_t seed, int workers,
                     const std::function<Matrix(Rng&)>& draw) {
  if (samples < 1) {
    throw ValidationError("monte carlo: samples must be >= 1");
  }
  const long long nchunks = (samples + kChunkSize - 1) / kChunkSize;
  std::vector<RawAccum> partial(nchunks);

  auto run_chunk = [&](long long chunk) {
    Rng rng(mix_seed(seed, std::uint64_t(chunk)));
    const long long begin = chunk * kChunkSize;
    const long long count = std::min(kChunkSize, samples - begin);
    RawAccum acc{Matrix::Zero(rows, cols),
                 Eigen::ArrayXXd::Zero(rows, cols), count};
    for (long long s = 0; s < count; ++s) {
      const Matrix x = draw(rng);
      acc.sum += x;
      acc.sumsq += x.array().abs2();
    }
    partial[chunk] = std::move(acc);
  };

  if (workers <= 1 || nchunks == 1) {
    for (long long chunk = 0; chunk < nchunks; ++chunk) run_chunk(chunk);
  } else {
    std::vector<std::thread> pool;
    const int nworkers = int(std::min<long long>(workers, nchunks));
    pool.reserve(nworkers);
    for (int w = 0; w < nworkers; ++w) {
      pool.emplace_back([&, w] {
        for (long long chunk = w; chunk < nchunks; chunk += nworkers) {
          run_chunk(chunk);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  RawAccum total{Matrix::Zero(rows, cols), Eigen::ArrayXXd::Zero(rows, cols),
                 0};
  for (const RawAccum& acc : partial) {
    total.sum += acc.sum;
    total.sumsq += acc.sumsq;
    total.count += acc.count;
  }
  return total;
}

// Per-entry standard errors of the raw mean, root-sum-squared.
double raw_std_error(const RawAccum& acc, const Matrix& mean) {
  if (acc.count < 2) return 0.0;
  const double n = double(acc.count);
  const Eigen::ArrayXXd var =
      (acc.sumsq - n * mean.array().abs2()).cwiseMax(0.0) / ((n - 1.0) * n);
  return std::sqrt(var.sum());
}

MCEstimate finalize_normalized(const RawAccum& acc, std::uint64_t seed) {
  const Matrix mean_raw = acc.sum / double(acc.count);
  const double se = raw_std_error(acc, mean_raw);
  const double trace = mean_raw.trace().real();
  if (!(trace > 0.0)) {
    throw Error("monte carlo: estimate has non-positive trace");
  }
  return MCEstimate{mean_raw / trace, se / trace, acc.count, seed};
}

ScalarEstimate finalize_scalar(const RawAccum& acc) {
  const Matrix mean = acc.sum / double(acc.count);
  return ScalarEstimate{mean(0, 0), raw_std_error(acc, mean), acc.count};
}

// (1 (x) <phi|) v for v on CR (x) CV.
Vector contract_cv(const Vector& v, const Vector& phi, Index dcr, Index dcv) {
  Vector out = Vector::Zero(dcr);
  for (Index r = 0; r < dcr; ++r) {
    Complex sum = 0.0;
    for (Index a = 0; a < dcv; ++a) {
      sum += std::conj(phi(a)) * v(r * dcv + a);
    }
    out(r) = sum;
  }
  return out;
}

TheoryOutcome tctc_closed_form(const Matrix& u, const Matrix& p,
                               const Vector& psi, Index dcv) {
  const Index dext = psi.size();
  const Vector p_psi = p * psi;
  const Matrix term_postselect = p_psi * p_psi.adjoint();
  const Matrix channel_input =
      tensor_product(Matrix(psi * psi.adjoint()),
                     Matrix(Matrix::Identity(dcv, dcv) / double(dcv)));
  const Matrix term_channel = partial_trace(
      u * channel_input * u.adjoint(), dext, dcv, Keep::First);

  const Matrix raw = term_postselect + double(dcv) * term_channel;
  const double z = raw.trace().real();
  TheoryOutcome outcome{DensityOperator::validated(raw / z, 1e-9, 1e-9, 1e-9),
                        {}, z, {}, {}};
  const double p_norm_sq = p_psi.squaredNorm();
  outcome.diagnostics["lambda"] = double(dcv) / (double(dcv) + p_norm_sq);
  outcome.diagnostics["p_norm_sq"] = p_norm_sq;
  return outcome;
}

}  // namespace

PureState hurwitz_state(const HurwitzPoint& point) {
  const Index d = point.dim();
  if (d < 2 || point.phis.size() != point.thetas.size()) {
    throw ValidationError("hurwitz_state: need d-1 thetas and d-1 phis, d >= 2");
  }
  for (double t : point.thetas) {
    if (t < 0.0 || t > M_PI / 2) {
      throw ValidationError("hurwitz_state: theta outside [0, pi/2]");
    }
  }
  for (double f : point.phis) {
    if (f < 0.0 || f >= 2.0 * M_PI) {
      throw ValidationError("hurwitz_state: phi outside [0, 2 pi)");
    }
  }
  // suffix_sin[a] = prod_{b > a} sin(theta_b), 1-based angles.
  std::vector<double> suffix_sin(d + 1, 1.0);
  for (Index a = d - 1; a >= 1; --a) {
    suffix_sin[a] = suffix_sin[a + 1] * std::sin(point.thetas[a - 1]);
  }
  Vector amp(d);
  amp(0) = suffix_sin[1];
  for (Index a = 1; a < d; ++a) {
    amp(a) = std::polar(1.0, point.phis[a - 1]) *
             std::cos(point.thetas[a - 1]) * suffix_sin[a + 1];
  }
  return PureState::normalized(std::move(amp));
}

HurwitzPoint hurwitz_sample(Index dim, Rng& rng) {
  if (dim < 2) {
    throw ValidationError("hurwitz_sample: dim must be >= 2");
  }
  HurwitzPoint point;
  point.thetas.resize(dim - 1);
  point.phis.resize(dim - 1);
  for (Index a = 1; a < dim; ++a) {
    // CDF of cos(t) sin(t)^(2a-1) on [0, pi/2] is sin(t)^(2a).
    const double u = rng.uniform();
    point.thetas[a - 1] = std::asin(std::pow(u, 1.0 / (2.0 * double(a))));
    point.phis[a - 1] = 2.0 * M_PI * rng.uniform();
  }
  return point;
}

PureState sample_cv_state(Index dim, Rng& rng, CvSampler sampler) {
  if (sampler == CvSampler::Gaussian) return haar_state(dim, rng);
  return hurwitz_state(hurwitz_sample(dim, rng));
}

ScalarEstimate moment_integral(Index dim, int a, int b, int g, int d,
                               long long samples, std::uint64_t seed,
                               CvSampler sampler) {
  if (a < 0 || b < 0 || g < 0 || d < 0 || a >= dim || b >= dim || g >= dim ||
      d >= dim) {
    throw ValidationError("moment_integral: index out of range");
  }
  const RawAccum acc =
      run_chunked(1, 1, samples, seed, 1, [&](Rng& rng) -> Matrix {
        const PureState phi = sample_cv_state(dim, rng, sampler);
        Matrix z(1, 1);
        z(0, 0) = std::conj(phi.amplitudes(a)) * phi.amplitudes(b) *
                  std::conj(phi.amplitudes(d)) * phi.amplitudes(g);
        return z;
      });
  return finalize_scalar(acc);
}

ScalarEstimate second_moment(Index dim, long long samples, std::uint64_t seed,
                             CvSampler sampler) {
  const RawAccum acc =
      run_chunked(1, 1, samples, seed, 1, [&](Rng& rng) -> Matrix {
        const PureState phi = sample_cv_state(dim, rng, sampler);
        Matrix z(1, 1);
        z(0, 0) = std::norm(phi.amplitudes(0));
        return z;
      });
  return finalize_scalar(acc);
}

MomentReport moment_integrals(Index dim, long long samples, std::uint64_t seed,
                              CvSampler sampler) {
  MomentReport report;
  report.dim = dim;
  // Each class gets its own substream, so equality checks between classes
  // are statistically meaningful.
  report.i_abab =
      moment_integral(dim, 0, 1, 0, 1, samples, mix_seed(seed, 11), sampler);
  report.i_aabb =
      moment_integral(dim, 0, 0, 1, 1, samples, mix_seed(seed, 12), sampler);
  report.i_aaaa =
      moment_integral(dim, 0, 0, 0, 0, samples, mix_seed(seed, 13), sampler);
  report.mixed =
      moment_integral(dim, 0, 1, 0, 0, samples, mix_seed(seed, 14), sampler);
  report.second = second_moment(dim, samples, mix_seed(seed, 15), sampler);

  const double num = report.i_aaaa.mean.real();
  const double den = report.i_abab.mean.real();
  report.ratio = num / den;
  report.ratio_std_error =
      std::abs(report.ratio) *
      std::sqrt(std::pow(report.i_aaaa.std_error / num, 2) +
                std::pow(report.i_abab.std_error / den, 2));
  return report;
}

TheoryOutcome tctc_evolve(const StandardFormCircuit& circuit,
                          const PureState& psi_i) {
  if (psi_i.dim() != circuit.cr_dim()) {
    throw ValidationError("tctc_evolve: psi_i must live on the CR qubits");
  }
  const UnitaryMatrix u = compile_unitary(circuit);
  const CvTraceOperator p = pctc_operator(circuit);
  return tctc_closed_form(u.mat, p.mat, psi_i.amplitudes, circuit.cv_dim());
}

TheoryOutcome tctc_evolve_density(const StandardFormCircuit& circuit,
                                  const DensityOperator& rho_i) {
  if (rho_i.dim() != circuit.cr_dim()) {
    throw ValidationError("tctc_evolve_density: rho_i must live on the CR qubits");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      0.5 * (rho_i.mat + rho_i.mat.adjoint()));
  if (solver.info() != Eigen::Success) {
    throw Error("tctc_evolve_density: eigensolver failure");
  }
  std::vector<Index> kept;
  for (Index k = 0; k < rho_i.dim(); ++k) {
    if (solver.eigenvalues()(k) > 1e-12) kept.push_back(k);
  }
  const Index rank = Index(kept.size());
  const Index dcr = circuit.cr_dim();
  const Index dcv = circuit.cv_dim();

  // Purification |Psi> = sum_k sqrt(p_k) |k>_anc (x) |v_k>_CR with the
  // ancilla as the leading factor, so the interaction is 1_anc (x) U.
  Vector purified = Vector::Zero(rank * dcr);
  for (Index k = 0; k < rank; ++k) {
    purified.segment(k * dcr, dcr) =
        std::sqrt(solver.eigenvalues()(kept[k])) *
        solver.eigenvectors().col(kept[k]);
  }
  const UnitaryMatrix u = compile_unitary(circuit);
  const CvTraceOperator p = pctc_operator(circuit);
  const Matrix id_anc = Matrix::Identity(rank, rank);
  TheoryOutcome extended = tctc_closed_form(
      tensor_product(id_anc, u.mat), tensor_product(id_anc, p.mat), purified,
      dcv);

  TheoryOutcome outcome{
      DensityOperator::validated(
          partial_trace(extended.rho_f.mat, rank, dcr, Keep::Second),
          1e-9, 1e-9, 1e-9),
      {}, extended.normalizer, {}, extended.diagnostics};
  outcome.diagnostics["purification_rank"] = double(rank);
  return outcome;
}

MCEstimate tctc_evolve_mc(const StandardFormCircuit& circuit,
                          const PureState& psi_i, long long samples,
                          std::uint64_t seed, int workers, CvSampler sampler) {
  if (psi_i.dim() != circuit.cr_dim()) {
    throw ValidationError("tctc_evolve_mc: psi_i must live on the CR qubits");
  }
  const UnitaryMatrix u = compile_unitary(circuit);
  const Index dcr = circuit.cr_dim();
  const Index dcv = circuit.cv_dim();
  const RawAccum acc = run_chunked(
      dcr, dcr, samples, seed, workers, [&](Rng& rng) -> Matrix {
        const PureState phi = sample_cv_state(dcv, rng, sampler);
        const Vector joint =
            u.mat * tensor_product(psi_i.amplitudes, phi.amplitudes);
        const Vector projected = contract_cv(joint, phi.amplitudes, dcr, dcv);
        return projected * projected.adjoint();
      });
  return finalize_normalized(acc, seed);
}

MCEstimate ptrace_variant_evolve(const StandardFormCircuit& circuit,
                                 const PureState& psi_i, long long samples,
                                 std::uint64_t seed, int workers,
                                 CvSampler sampler) {
  if (psi_i.dim() != circuit.cr_dim()) {
    throw ValidationError("ptrace_variant_evolve: psi_i must live on the CR qubits");
  }
  const UnitaryMatrix u = compile_unitary(circuit);
  const Index dcr = circuit.cr_dim();
  const Index dcv = circuit.cv_dim();
  const RawAccum acc = run_chunked(
      dcr, dcr, samples, seed, workers, [&](Rng& rng) -> Matrix {
        const PureState phi = sample_cv_state(dcv, rng, sampler);
        const Vector joint =
            u.mat * tensor_product(psi_i.amplitudes, phi.amplitudes);
        // Consistency weight p(phi) = || <phi|U|psi>|phi> ||^2.
        const double weight =
            contract_cv(joint, phi.amplitudes, dcr, dcv).squaredNorm();
        Matrix reduced(dcr, dcr);
        for (Index r = 0; r < dcr; ++r) {
          for (Index rp = 0; rp < dcr; ++rp) {
            Complex sum = 0.0;
            for (Index a = 0; a < dcv; ++a) {
              sum += joint(r * dcv + a) * std::conj(joint(rp * dcv + a));
            }
            reduced(r, rp) = sum;
          }
        }
        return weight * reduced;
      });
  return finalize_normalized(acc, seed);
}

}  // namespace ctcsim
