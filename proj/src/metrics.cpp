#include "rnmf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "rnmf/assignment.hpp"

namespace rnmf {
namespace {

void require_same_length(const Labels& a, const Labels& b, const char* who) {
  if (a.size() != b.size()) throw std::invalid_argument(std::string(who) + ": label sequences differ in length");
}

// Dense re-indexing of arbitrary label values, in increasing value order.
std::map<int, int> index_of(const Labels& labels) {
  std::map<int, int> idx;
  for (int l : labels) idx.emplace(l, 0);
  int next = 0;
  for (auto& [value, slot] : idx) slot = next++;
  return idx;
}

double entropy(const std::vector<double>& counts, double total) {
  double h = 0.0;
  for (double c : counts) {
    if (c > 0.0) {
      const double p = c / total;
      h -= p * std::log(p);
    }
  }
  return h;
}

}  // namespace

double rmse(const DenseMatrix& A, const DenseMatrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) throw std::invalid_argument("rmse: shape mismatch");
  if (A.size() == 0) throw std::invalid_argument("rmse: empty matrices");
  return std::sqrt((A - B).squaredNorm() / static_cast<double>(A.size()));
}

Labels align_labels(const Labels& pred, const Labels& truth) {
  require_same_length(pred, truth, "align_labels");
  if (pred.empty()) return {};
  const auto pred_idx = index_of(pred);
  const auto truth_idx = index_of(truth);
  DenseMatrix contingency = DenseMatrix::Zero(static_cast<Index>(pred_idx.size()), static_cast<Index>(truth_idx.size()));
  for (std::size_t i = 0; i < pred.size(); ++i) contingency(pred_idx.at(pred[i]), truth_idx.at(truth[i])) += 1.0;

  const std::vector<int> match = max_weight_assignment(contingency);
  std::vector<int> truth_values;
  for (const auto& [value, slot] : truth_idx) truth_values.push_back(value);
  int fresh = truth_values.back() + 1;
  std::vector<int> mapping(match.size());
  for (std::size_t p = 0; p < match.size(); ++p) {
    mapping[p] = match[p] >= 0 ? truth_values[static_cast<std::size_t>(match[p])] : fresh++;
  }
  Labels out(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) out[i] = mapping[static_cast<std::size_t>(pred_idx.at(pred[i]))];
  return out;
}

double accuracy(const Labels& truth, const Labels& pred) {
  require_same_length(truth, pred, "accuracy");
  if (truth.empty()) throw std::invalid_argument("accuracy: empty labels");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += truth[i] == pred[i] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

double clustering_accuracy(const Labels& truth, const Labels& pred) {
  return accuracy(truth, align_labels(pred, truth));
}

double nmi(const Labels& truth, const Labels& pred) {
  require_same_length(truth, pred, "nmi");
  if (truth.empty()) throw std::invalid_argument("nmi: empty labels");
  const auto ti = index_of(truth);
  const auto pi = index_of(pred);
  const double n = static_cast<double>(truth.size());
  DenseMatrix joint = DenseMatrix::Zero(static_cast<Index>(ti.size()), static_cast<Index>(pi.size()));
  for (std::size_t i = 0; i < truth.size(); ++i) joint(ti.at(truth[i]), pi.at(pred[i])) += 1.0;

  std::vector<double> row_counts(static_cast<std::size_t>(joint.rows())), col_counts(static_cast<std::size_t>(joint.cols()));
  for (Index r = 0; r < joint.rows(); ++r) row_counts[static_cast<std::size_t>(r)] = joint.row(r).sum();
  for (Index c = 0; c < joint.cols(); ++c) col_counts[static_cast<std::size_t>(c)] = joint.col(c).sum();
  const double h_truth = entropy(row_counts, n);
  const double h_pred = entropy(col_counts, n);
  if (ti.size() == 1 && pi.size() == 1) return 1.0;
  if (ti.size() == 1 || pi.size() == 1) return 0.0;

  double mi = 0.0;
  for (Index r = 0; r < joint.rows(); ++r) {
    for (Index c = 0; c < joint.cols(); ++c) {
      const double nrc = joint(r, c);
      if (nrc > 0.0) {
        mi += (nrc / n) * std::log(nrc * n / (row_counts[static_cast<std::size_t>(r)] * col_counts[static_cast<std::size_t>(c)]));
      }
    }
  }
  const double score = 2.0 * mi / (h_truth + h_pred);
  return std::clamp(score, 0.0, 1.0);
}

}  // namespace rnmf
