#pragma once

#include <cstdint>
#include <string>

#include "rnmf/dataset.hpp"

namespace rnmf {

enum class NoiseKind { none, block_occlusion, salt_pepper };

std::string to_string(NoiseKind kind);
/// Accepts "none", "block" / "block_occlusion", "salt_pepper".
NoiseKind parse_noise_kind(const std::string& name);

struct NoiseSpec {
  NoiseKind kind = NoiseKind::none;
  int block_size = 10;
  double fill_value = 0.5;
  double fraction = 0.4;
  double salt_ratio = 0.45;
  std::uint64_t seed = 0;

  static NoiseSpec none() { return {}; }
  static NoiseSpec block(int size, double fill, std::uint64_t seed);
  static NoiseSpec salt_pepper(double fraction, double salt_ratio, std::uint64_t seed);
};

/// Corrupted data plus a 0/1 mask of the pixels that were replaced.
struct Corruption {
  DenseMatrix corrupted;
  DenseMatrix mask;
};

/// Sets one block_size x block_size square per column to fill_value. The
/// top-left corner is uniform over all valid positions, drawn per column.
Corruption add_block_occlusion(const Dataset& ds, const NoiseSpec& spec);

/// Replaces exactly round(fraction * m) distinct pixels per column;
/// round(salt_ratio * count) of them become 1.0, the rest 0.0.
Corruption add_salt_pepper(const Dataset& ds, const NoiseSpec& spec);

/// Dispatches on spec.kind; kind none returns the data with an all-zero mask.
Corruption apply_noise(const Dataset& ds, const NoiseSpec& spec);

}  // namespace rnmf
