#include "rnmf/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rnmf/random.hpp"

namespace rnmf {

std::string to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::none: return "none";
    case NoiseKind::block_occlusion: return "block";
    case NoiseKind::salt_pepper: return "salt_pepper";
  }
  return "unknown";
}

NoiseKind parse_noise_kind(const std::string& name) {
  if (name == "none" || name == "no_noise") return NoiseKind::none;
  if (name == "block" || name == "block_occlusion") return NoiseKind::block_occlusion;
  if (name == "salt_pepper" || name == "salt_and_pepper") return NoiseKind::salt_pepper;
  throw std::invalid_argument("unknown noise kind '" + name + "'");
}

NoiseSpec NoiseSpec::block(int size, double fill, std::uint64_t seed) {
  NoiseSpec s;
  s.kind = NoiseKind::block_occlusion;
  s.block_size = size;
  s.fill_value = fill;
  s.seed = seed;
  return s;
}

NoiseSpec NoiseSpec::salt_pepper(double fraction, double salt_ratio, std::uint64_t seed) {
  NoiseSpec s;
  s.kind = NoiseKind::salt_pepper;
  s.fraction = fraction;
  s.salt_ratio = salt_ratio;
  s.seed = seed;
  return s;
}

Corruption add_block_occlusion(const Dataset& ds, const NoiseSpec& spec) {
  if (spec.kind != NoiseKind::block_occlusion) throw std::invalid_argument("add_block_occlusion: wrong noise kind");
  if (spec.block_size < 1 || spec.block_size > std::min(ds.height, ds.width)) {
    throw std::invalid_argument("add_block_occlusion: block size " + std::to_string(spec.block_size) +
                                " does not fit a " + std::to_string(ds.height) + "x" +
                                std::to_string(ds.width) + " image");
  }
  if (!(spec.fill_value >= 0.0 && spec.fill_value <= 1.0)) {
    throw std::invalid_argument("add_block_occlusion: fill_value must be in [0, 1]");
  }
  Corruption out{ds.X, DenseMatrix::Zero(ds.X.rows(), ds.X.cols())};
  const int b = spec.block_size;
  const auto rows = static_cast<std::uint64_t>(ds.height - b + 1);
  const auto cols = static_cast<std::uint64_t>(ds.width - b + 1);
  for (Index j = 0; j < ds.X.cols(); ++j) {
    Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(j)));
    const int top = static_cast<int>(rng.below(rows));
    const int left = static_cast<int>(rng.below(cols));
    for (int r = top; r < top + b; ++r) {
      for (int c = left; c < left + b; ++c) {
        const Index p = static_cast<Index>(r) * ds.width + c;
        out.corrupted(p, j) = spec.fill_value;
        out.mask(p, j) = 1.0;
      }
    }
  }
  return out;
}

Corruption add_salt_pepper(const Dataset& ds, const NoiseSpec& spec) {
  if (spec.kind != NoiseKind::salt_pepper) throw std::invalid_argument("add_salt_pepper: wrong noise kind");
  if (!(spec.fraction >= 0.0 && spec.fraction <= 1.0) || !(spec.salt_ratio >= 0.0 && spec.salt_ratio <= 1.0)) {
    throw std::invalid_argument("add_salt_pepper: fraction and salt_ratio must be in [0, 1]");
  }
  Corruption out{ds.X, DenseMatrix::Zero(ds.X.rows(), ds.X.cols())};
  const auto m = static_cast<std::size_t>(ds.X.rows());
  const auto count = static_cast<std::size_t>(std::lround(spec.fraction * static_cast<double>(m)));
  const auto salt = static_cast<std::size_t>(std::lround(spec.salt_ratio * static_cast<double>(count)));
  for (Index j = 0; j < ds.X.cols(); ++j) {
    Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(j)));
    const auto picked = rng.sample_without_replacement(m, count);
    for (std::size_t t = 0; t < picked.size(); ++t) {
      const auto p = static_cast<Index>(picked[t]);
      out.corrupted(p, j) = t < salt ? 1.0 : 0.0;
      out.mask(p, j) = 1.0;
    }
  }
  return out;
}

Corruption apply_noise(const Dataset& ds, const NoiseSpec& spec) {
  switch (spec.kind) {
    case NoiseKind::block_occlusion: return add_block_occlusion(ds, spec);
    case NoiseKind::salt_pepper: return add_salt_pepper(ds, spec);
    case NoiseKind::none: break;
  }
  return {ds.X, DenseMatrix::Zero(ds.X.rows(), ds.X.cols())};
}

}  // namespace rnmf
