#pragma once

#include <cstdint>

#include "rnmf/types.hpp"

namespace rnmf {

struct KMeansOptions {
  int n_clusters = 2;
  std::uint64_t seed = 0;
  int max_iters = 300;
  int restarts = 1;  // independent seedings; the lowest inertia wins
};

struct KMeansResult {
  Labels labels;
  DenseMatrix centers;  // n_clusters x d
  double inertia = 0.0;  // within-cluster sum of squared distances
  int iterations = 0;
};

/// Lloyd's algorithm with k-means++ seeding. `points` holds one sample per
/// row. A cluster that empties is reseeded with the point farthest from its
/// current center.
KMeansResult kmeans(const DenseMatrix& points, const KMeansOptions& options);

/// Labels only, single seeding.
Labels kmeans(const DenseMatrix& points, int n_clusters, std::uint64_t seed, int max_iters);

}  // namespace rnmf
