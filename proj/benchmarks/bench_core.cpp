// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "ctcsim/analysis.hpp"

namespace {

using namespace ctcsim;

void BM_CompileUnproven(benchmark::State& state) {
  const StandardFormCircuit circuit = catalog("unproven_theorem");
  for (auto _ : state) {
    benchmark::DoNotOptimize(compile_unitary(circuit));
  }
}
BENCHMARK(BM_CompileUnproven);

void BM_CompileRandom(benchmark::State& state) {
  Rng rng(1);
  const int n = int(state.range(0));
  const StandardFormCircuit circuit = random_gate_circuit(n, n, 8, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compile_unitary(circuit));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CompileRandom)->DenseRange(1, 4);

void BM_ConsistencyChannel(benchmark::State& state) {
  Rng rng(2);
  const int m = int(state.range(0));
  const StandardFormCircuit circuit = random_circuit(2, m, rng);
  const DensityOperator rho = DensityOperator::pure(haar_state(4, rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(consistency_channel(circuit, rho));
  }
}
BENCHMARK(BM_ConsistencyChannel)->DenseRange(1, 3);

void BM_FixedPointSet(benchmark::State& state) {
  Rng rng(3);
  const StandardFormCircuit circuit = random_circuit(2, int(state.range(0)), rng);
  const Superoperator channel =
      consistency_channel(circuit, DensityOperator::pure(haar_state(4, rng)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fixed_point_set(channel));
  }
}
BENCHMARK(BM_FixedPointSet)->DenseRange(1, 3);

void BM_DctcEvolveMaxEntropy(benchmark::State& state) {
  const StandardFormCircuit circuit = catalog("unproven_theorem");
  const DensityOperator rho = DensityOperator::pure(PureState::basis(4, 0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dctc_evolve(circuit, rho, DctcRule::max_entropy()));
  }
}
BENCHMARK(BM_DctcEvolveMaxEntropy);

void BM_TctcClosedForm(benchmark::State& state) {
  Rng rng(4);
  const StandardFormCircuit circuit = random_circuit(2, 2, rng);
  const PureState psi = haar_state(4, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tctc_evolve(circuit, psi));
  }
}
BENCHMARK(BM_TctcClosedForm);

void BM_HaarSample(benchmark::State& state) {
  Rng rng(5);
  const Index d = Index(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(haar_state(d, rng));
  }
}
BENCHMARK(BM_HaarSample)->Arg(2)->Arg(4)->Arg(16);

void BM_HurwitzSample(benchmark::State& state) {
  Rng rng(6);
  const Index d = Index(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hurwitz_state(hurwitz_sample(d, rng)));
  }
}
BENCHMARK(BM_HurwitzSample)->Arg(2)->Arg(4)->Arg(16);

void BM_TctcMonteCarlo(benchmark::State& state) {
  const StandardFormCircuit circuit = catalog("unproven_theorem");
  const PureState psi = PureState::basis(4, 0);
  const long long samples = state.range(0);
  std::uint64_t seed = 7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tctc_evolve_mc(circuit, psi, samples, seed++));
  }
  state.SetItemsProcessed(state.iterations() * samples);
}
BENCHMARK(BM_TctcMonteCarlo)->Arg(1024)->Arg(16384);

void BM_PctcProtocolOracle(benchmark::State& state) {
  Rng rng(8);
  const StandardFormCircuit circuit = random_circuit(2, 2, rng);
  const DensityOperator rho = DensityOperator::pure(haar_state(4, rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pctc_protocol_oracle(circuit, rho));
  }
}
BENCHMARK(BM_PctcProtocolOracle);

}  // namespace

BENCHMARK_MAIN();
