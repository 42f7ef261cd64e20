// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

#include "ctcsim/states.hpp"

namespace ctcsim {

// Derives an independent stream seed; used for per-chunk substreams so that
// Monte-Carlo results are reproducible for a given (seed, samples) pair
// regardless of how chunks are distributed over workers.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Deterministic random source. Distributions are implemented in-house so
// results do not depend on standard-library internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  Rng substream(std::uint64_t index) const { return Rng(mix_seed(seed_, index)); }
  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }
  double uniform();  // [0, 1)
  double gauss();    // standard normal
  Complex complex_gauss();  // independent N(0,1) real and imaginary parts

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Pure state distributed by the unitarily invariant measure (normalized
// vector of independent complex Gaussians).
PureState haar_state(Index dim, Rng& rng);

// Haar-distributed unitary via QR of a complex Ginibre matrix with the
// phase-fixed R diagonal.
Matrix haar_unitary(Index dim, Rng& rng);

// Random full-rank density operator (Hilbert-Schmidt ensemble, G G^dag
// normalized).
DensityOperator random_density(Index dim, Rng& rng);

}  // namespace ctcsim
