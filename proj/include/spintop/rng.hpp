#pragma once

#include <cstdint>
#include <utility>

namespace spintop {

/// Deterministic per-trajectory random stream (xoshiro256++ core, state
/// derived from a (master seed, grid index, trajectory index) key via
/// splitmix64). Streams with distinct keys are statistically independent,
/// and a stream's output depends only on its key, never on scheduling.
class RandomStream {
 public:
  RandomStream() : RandomStream(0, 0, 0) {}
  RandomStream(std::uint64_t master_seed, std::uint64_t grid_index,
               std::uint64_t trajectory_index);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1) with 53 bits of resolution.
  double uniform();

  /// Uniform double in (0, 1] (safe as a log argument).
  double uniform_pos();

  /// One pair of independent standard normals (Box-Muller). Each call
  /// consumes exactly two uniforms, so stream alignment is reproducible.
  std::pair<double, double> gauss_pair();

  /// Single standard normal; consumes two uniforms like gauss_pair().
  double gauss();

  /// Index sampled with probability weights[i] / sum(weights).
  /// Weights must be non-negative with a positive sum.
  int sample_discrete(const double* weights, int n);

 private:
  std::uint64_t s_[4];
};

}  // namespace spintop
