#include "rnmf/kmeans.hpp"

#include <limits>
#include <stdexcept>

#include "rnmf/random.hpp"

namespace rnmf {
namespace {

double squared_distance(const DenseMatrix& points, Index row, const DenseMatrix& centers, Index c) {
  return (points.row(row) - centers.row(c)).squaredNorm();
}

DenseMatrix seed_centers(const DenseMatrix& points, int k, Rng& rng) {
  const Index n = points.rows();
  DenseMatrix centers(k, points.cols());
  centers.row(0) = points.row(static_cast<Index>(rng.below(static_cast<std::uint64_t>(n))));
  Eigen::VectorXd nearest(n);
  for (Index i = 0; i < n; ++i) nearest(i) = squared_distance(points, i, centers, 0);
  for (int c = 1; c < k; ++c) {
    const double total = nearest.sum();
    Index pick = 0;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      pick = n - 1;
      for (Index i = 0; i < n; ++i) {
        acc += nearest(i);
        if (acc > target && nearest(i) > 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
    }
    centers.row(c) = points.row(pick);
    for (Index i = 0; i < n; ++i) nearest(i) = std::min(nearest(i), squared_distance(points, i, centers, c));
  }
  return centers;
}

Labels assign(const DenseMatrix& points, const DenseMatrix& centers) {
  Labels labels(static_cast<std::size_t>(points.rows()));
  for (Index i = 0; i < points.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (Index c = 0; c < centers.rows(); ++c) {
      const double d = squared_distance(points, i, centers, c);
      if (d < best) {
        best = d;
        arg = static_cast<int>(c);
      }
    }
    labels[static_cast<std::size_t>(i)] = arg;
  }
  return labels;
}

// Moves the farthest point (from a cluster that can spare one) into each
// empty cluster and re-centres that cluster on it.
void reseed_empty(const DenseMatrix& points, Labels& labels, DenseMatrix& centers) {
  const int k = static_cast<int>(centers.rows());
  std::vector<int> sizes(static_cast<std::size_t>(k), 0);
  for (int l : labels) ++sizes[static_cast<std::size_t>(l)];
  for (int c = 0; c < k; ++c) {
    if (sizes[static_cast<std::size_t>(c)] > 0) continue;
    double far = -1.0;
    Index arg = -1;
    for (Index i = 0; i < points.rows(); ++i) {
      const int own = labels[static_cast<std::size_t>(i)];
      if (sizes[static_cast<std::size_t>(own)] < 2) continue;
      const double d = squared_distance(points, i, centers, own);
      if (d > far) {
        far = d;
        arg = i;
      }
    }
    if (arg < 0) break;
    --sizes[static_cast<std::size_t>(labels[static_cast<std::size_t>(arg)])];
    labels[static_cast<std::size_t>(arg)] = c;
    sizes[static_cast<std::size_t>(c)] = 1;
    centers.row(c) = points.row(arg);
  }
}

void recompute_centers(const DenseMatrix& points, const Labels& labels, DenseMatrix& centers) {
  DenseMatrix sums = DenseMatrix::Zero(centers.rows(), centers.cols());
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(centers.rows());
  for (Index i = 0; i < points.rows(); ++i) {
    const auto l = static_cast<Index>(labels[static_cast<std::size_t>(i)]);
    sums.row(l) += points.row(i);
    counts(l) += 1.0;
  }
  for (Index c = 0; c < centers.rows(); ++c) {
    if (counts(c) > 0.0) centers.row(c) = sums.row(c) / counts(c);
  }
}

KMeansResult lloyd(const DenseMatrix& points, int k, int max_iters, Rng& rng) {
  KMeansResult r;
  r.centers = seed_centers(points, k, rng);
  r.labels = assign(points, r.centers);
  for (int it = 1; it <= max_iters; ++it) {
    r.iterations = it;
    reseed_empty(points, r.labels, r.centers);
    recompute_centers(points, r.labels, r.centers);
    Labels next = assign(points, r.centers);
    if (next == r.labels) break;
    r.labels = std::move(next);
  }
  reseed_empty(points, r.labels, r.centers);
  recompute_centers(points, r.labels, r.centers);
  r.inertia = 0.0;
  for (Index i = 0; i < points.rows(); ++i) {
    r.inertia += squared_distance(points, i, r.centers, r.labels[static_cast<std::size_t>(i)]);
  }
  return r;
}

}  // namespace

KMeansResult kmeans(const DenseMatrix& points, const KMeansOptions& options) {
  if (options.n_clusters < 1) throw std::invalid_argument("kmeans: n_clusters must be >= 1");
  if (options.n_clusters > points.rows()) {
    throw std::invalid_argument("kmeans: n_clusters (" + std::to_string(options.n_clusters) +
                                ") exceeds number of points (" + std::to_string(points.rows()) + ")");
  }
  if (options.max_iters < 1 || options.restarts < 1) {
    throw std::invalid_argument("kmeans: max_iters and restarts must be >= 1");
  }
  if (!points.allFinite()) throw std::invalid_argument("kmeans: non-finite points");
  KMeansResult best;
  for (int run = 0; run < options.restarts; ++run) {
    Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(run)));
    KMeansResult r = lloyd(points, options.n_clusters, options.max_iters, rng);
    if (run == 0 || r.inertia < best.inertia) best = std::move(r);
  }
  return best;
}

Labels kmeans(const DenseMatrix& points, int n_clusters, std::uint64_t seed, int max_iters) {
  return kmeans(points, KMeansOptions{n_clusters, seed, max_iters, 1}).labels;
}

}  // namespace rnmf
