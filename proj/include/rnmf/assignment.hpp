#pragma once

#include <vector>

#include "rnmf/types.hpp"

namespace rnmf {

/// Hungarian algorithm on a rectangular weight matrix. Returns, for each row,
/// the matched column, or -1 when rows outnumber columns and the row is left
/// unmatched. The matching maximizes the total weight.
std::vector<int> max_weight_assignment(const DenseMatrix& weights);

}  // namespace rnmf
