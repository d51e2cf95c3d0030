#pragma once

#include "rnmf/types.hpp"

namespace rnmf {

/// Root mean squared entrywise difference.
double rmse(const DenseMatrix& A, const DenseMatrix& B);

/// Relabels `pred` with the cluster-to-class bijection that maximizes the
/// number of agreements with `truth` (Hungarian assignment on the contingency
/// table). Predicted clusters left without a class get fresh labels larger
/// than every truth label.
Labels align_labels(const Labels& pred, const Labels& truth);

/// Fraction of positions where `pred` equals `truth`. Align first.
double accuracy(const Labels& truth, const Labels& pred);

/// Convenience: accuracy after align_labels.
double clustering_accuracy(const Labels& truth, const Labels& pred);

/// 2 I(truth; pred) / (H(truth) + H(pred)), natural logarithms. Two constant
/// labelings score 1; exactly one constant labeling scores 0.
double nmi(const Labels& truth, const Labels& pred);

}  // namespace rnmf
