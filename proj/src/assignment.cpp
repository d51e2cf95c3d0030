#include "rnmf/assignment.hpp"

#include <algorithm>
#include <limits>

namespace rnmf {

std::vector<int> max_weight_assignment(const DenseMatrix& weights) {
  const Index rows = weights.rows(), cols = weights.cols();
  const Index n = std::max(rows, cols);
  if (n == 0) return {};
  // Square min-cost problem; padding cells cost 0.
  const double top = weights.size() > 0 ? weights.maxCoeff() : 0.0;
  DenseMatrix cost = DenseMatrix::Zero(n, n);
  cost.topLeftCorner(rows, cols) = (top - weights.array()).matrix();

  // Shortest augmenting path formulation with potentials, 1-based internally.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<Index> match_col(n + 1, 0), way(n + 1, 0);
  for (Index i = 1; i <= n; ++i) {
    match_col[0] = i;
    Index j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const Index i0 = match_col[j0];
      double delta = inf;
      Index j1 = 0;
      for (Index j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (Index j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match_col[j0] != 0);
    do {
      const Index j1 = way[j0];
      match_col[j0] = match_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> row_to_col(static_cast<std::size_t>(rows), -1);
  for (Index j = 1; j <= n; ++j) {
    const Index i = match_col[j] - 1;
    if (i < rows && j - 1 < cols) row_to_col[static_cast<std::size_t>(i)] = static_cast<int>(j - 1);
  }
  return row_to_col;
}

}  // namespace rnmf
