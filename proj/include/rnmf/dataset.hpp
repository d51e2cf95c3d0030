#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rnmf/types.hpp"

namespace rnmf {

/// Image corpus as a data matrix: one flattened image per column, entries in
/// [0, 1]. Images are flattened row-major, so pixel (r, c) is row r * width + c.
struct Dataset {
  DenseMatrix X;
  Labels labels;
  int height = 0;
  int width = 0;

  Index pixels() const { return X.rows(); }
  Index samples() const { return X.cols(); }

  /// Throws std::invalid_argument if any invariant is broken.
  void validate() const;
};

/// Loads root/<subject>/<image>.pgm. Subjects get labels 0, 1, ... in
/// lexicographic order of their directory names; images within a subject are
/// read in lexicographic filename order. Each image keeps every `reduce`-th
/// pixel in both axes, then the whole matrix is normalized.
Dataset load_image_dataset(const std::filesystem::path& root, int reduce);

/// Divides by the global maximum (no-op when the maximum is 0).
DenseMatrix normalize(const DenseMatrix& X);

struct SyntheticParams {
  int n_subjects = 20;
  int per_subject = 10;
  int height = 37;
  int width = 30;
  double noise_scale = 0.2;
  std::uint64_t seed = 0;
};

/// Prototype-plus-perturbation faces: each subject draws a uniform [0, 1]
/// prototype; each sample adds uniform noise on [-noise_scale, noise_scale]
/// and clips to [0, 1]. Samples are grouped by subject.
Dataset synthesize_dataset(const SyntheticParams& params);

/// Column indices chosen by subsample(), in output order.
std::vector<Index> subsample_indices(Index n, double fraction, std::uint64_t seed);

/// floor(fraction * n) columns drawn without replacement.
Dataset subsample(const Dataset& ds, double fraction, std::uint64_t seed);

/// Number of distinct label values.
int count_distinct(const Labels& labels);

}  // namespace rnmf
