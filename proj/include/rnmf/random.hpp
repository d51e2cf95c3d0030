#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace rnmf {

/// Mixes a stream id into a seed (splitmix64 finalizer) so that independent
/// consumers of one user seed get decorrelated engines.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Seeded random source. Draws are built from raw mt19937_64 output rather
/// than <random> distributions, so sequences are identical across standard
/// library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open_closed() { return 1.0 - uniform(); }

  /// Uniform integer on [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// `count` distinct indices from [0, n), in draw order (partial Fisher-Yates).
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count);

 private:
  std::mt19937_64 engine_;
};

}  // namespace rnmf
