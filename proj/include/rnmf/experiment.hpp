#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "rnmf/dataset.hpp"
#include "rnmf/noise.hpp"
#include "rnmf/solvers.hpp"

namespace rnmf {

enum class DatasetKind { orl, yaleb, synthetic };

std::string to_string(DatasetKind kind);
DatasetKind parse_dataset_kind(const std::string& name);

struct DatasetSource {
  DatasetKind kind = DatasetKind::synthetic;
  std::filesystem::path path;  // orl / yaleb root
  int reduce = 0;              // 0 picks 3 for orl and 4 for yaleb
  SyntheticParams synthetic;
};

Dataset load_dataset(const DatasetSource& source);

/// What k-means clusters: the k-dimensional coefficient columns of H, or the
/// reconstructed pixel columns of WH.
enum class ClusterInput { coefficients, reconstruction };

struct TrialOptions {
  double lambda = 0.1;
  double train_fraction = 0.9;
  int max_iters = 200;
  double epsilon = 1e-9;
  ClusterInput cluster_input = ClusterInput::coefficients;
  int kmeans_restarts = 10;
  int kmeans_max_iters = 300;
};

/// One (trial, solver, k) measurement.
struct MetricsReport {
  std::string dataset;
  std::string noise;
  SolverKind solver = SolverKind::l2;
  int k = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  double rmse_clean = 0.0;  // clean subsample vs W H
  double rmse_noisy = 0.0;  // corrupted subsample vs W H
  double acc = 0.0;
  double nmi = 0.0;
  std::int64_t runtime_ms = 0;  // solver call only
  std::uint64_t input_hash = 0;  // content hash of the corrupted matrix
};

/// Subsampled clean data and its corrupted copy, shared by every solver and
/// rank evaluated within one trial.
struct TrialInput {
  Dataset clean;
  DenseMatrix noisy;
  std::uint64_t trial_seed = 0;
  std::uint64_t content_hash = 0;
};

/// 64-bit FNV-1a over the shape and raw entries.
std::uint64_t content_hash(const DenseMatrix& M);

TrialInput prepare_trial(const Dataset& ds, const NoiseSpec& noise, double train_fraction, std::uint64_t trial_seed);

/// Factorizes input.noisy, then scores reconstruction and clustering.
/// dataset/noise/trial fields of the result are left for the caller.
MetricsReport evaluate_solver(const TrialInput& input, SolverKind solver, int k, const TrialOptions& options);

/// prepare_trial followed by evaluate_solver.
MetricsReport run_trial(const Dataset& ds, const NoiseSpec& noise, SolverKind solver, int k,
                        const TrialOptions& options, std::uint64_t trial_seed);

struct SummaryRow {
  SolverKind solver = SolverKind::l2;
  int k = 0;
  std::string metric;  // rmse, acc or nmi
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
};

struct ExperimentReport {
  std::vector<MetricsReport> records;
  std::vector<SummaryRow> summaries;
};

struct ExperimentConfig {
  DatasetSource dataset;
  NoiseSpec noise;
  std::vector<SolverKind> solvers = {SolverKind::l1, SolverKind::l2, SolverKind::l21};
  std::vector<int> ks = {10, 20, 30, 40};
  int trials = 5;
  std::uint64_t base_seed = 0;
  TrialOptions trial;
  int threads = 0;  // 0 = hardware concurrency
  std::filesystem::path output_dir = "results";

  void validate() const;
};

/// Thrown when a trial fails; carries every record that did complete.
class ExperimentError : public std::runtime_error {
 public:
  ExperimentError(const std::string& what, ExperimentReport partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const ExperimentReport& partial() const { return partial_; }

 private:
  ExperimentReport partial_;
};

/// Mean and population std of rmse (clean target), acc and nmi per
/// (solver, k), in the given solver and rank order.
std::vector<SummaryRow> summarize(const std::vector<MetricsReport>& records, const std::vector<SolverKind>& solvers,
                                  const std::vector<int>& ks);

/// Runs cfg.trials trials with trial seed base_seed + t. Records are ordered
/// by solver, then k, then trial, independent of how trials were scheduled.
ExperimentReport run_experiment(const Dataset& ds, const ExperimentConfig& cfg);
ExperimentReport run_experiment(const ExperimentConfig& cfg);

}  // namespace rnmf
