#pragma once

#include <vector>

#include <Eigen/Dense>

namespace rnmf {

/// Column-major dense real matrix used for data, factors and masks.
using DenseMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// One integer label per sample (subject id or cluster id).
using Labels = std::vector<int>;

}  // namespace rnmf
