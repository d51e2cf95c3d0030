#include "rnmf/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "rnmf/kmeans.hpp"
#include "rnmf/metrics.hpp"
#include "rnmf/random.hpp"

namespace rnmf {
namespace {

// Stream ids for the per-trial seed schedule.
constexpr std::uint64_t kSubsampleStream = 0;
constexpr std::uint64_t kNoiseStream = 1;
constexpr std::uint64_t kSolverStream = 2;
constexpr std::uint64_t kClusterStream = 3;

}  // namespace

std::string to_string(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::orl: return "orl";
    case DatasetKind::yaleb: return "yaleb";
    case DatasetKind::synthetic: return "synthetic";
  }
  return "unknown";
}

DatasetKind parse_dataset_kind(const std::string& name) {
  if (name == "orl" || name == "ORL") return DatasetKind::orl;
  if (name == "yaleb" || name == "YaleB") return DatasetKind::yaleb;
  if (name == "synthetic") return DatasetKind::synthetic;
  throw std::invalid_argument("unknown dataset '" + name + "' (expected orl, yaleb or synthetic)");
}

Dataset load_dataset(const DatasetSource& source) {
  if (source.kind == DatasetKind::synthetic) return synthesize_dataset(source.synthetic);
  if (source.path.empty()) throw std::invalid_argument("dataset " + to_string(source.kind) + " needs a data directory");
  const int reduce = source.reduce > 0 ? source.reduce : (source.kind == DatasetKind::orl ? 3 : 4);
  return load_image_dataset(source.path, reduce);
}

std::uint64_t content_hash(const DenseMatrix& M) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  };
  const std::int64_t dims[2] = {static_cast<std::int64_t>(M.rows()), static_cast<std::int64_t>(M.cols())};
  mix(dims, sizeof dims);
  mix(M.data(), static_cast<std::size_t>(M.size()) * sizeof(double));
  return h;
}

TrialInput prepare_trial(const Dataset& ds, const NoiseSpec& noise, double train_fraction, std::uint64_t trial_seed) {
  TrialInput input;
  input.trial_seed = trial_seed;
  input.clean = subsample(ds, train_fraction, derive_seed(trial_seed, kSubsampleStream));
  NoiseSpec spec = noise;
  spec.seed = derive_seed(derive_seed(trial_seed, kNoiseStream), noise.seed);
  input.noisy = apply_noise(input.clean, spec).corrupted;
  input.content_hash = content_hash(input.noisy);
  return input;
}

MetricsReport evaluate_solver(const TrialInput& input, SolverKind solver, int k, const TrialOptions& options) {
  SolverConfig cfg;
  cfg.max_iters = options.max_iters;
  cfg.epsilon = options.epsilon;
  cfg.seed = derive_seed(input.trial_seed, kSolverStream);
  // Objective is not needed for scoring; record only the endpoints.
  cfg.record_objective_every = options.max_iters;

  const auto start = std::chrono::steady_clock::now();
  const FactorizationResult fit = solve(solver, input.noisy, k, options.lambda, cfg);
  const auto stop = std::chrono::steady_clock::now();

  MetricsReport rec;
  rec.solver = solver;
  rec.k = k;
  rec.seed = input.trial_seed;
  rec.input_hash = input.content_hash;
  rec.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();

  const DenseMatrix recon = reconstruct(fit);
  rec.rmse_clean = rmse(input.clean.X, recon);
  rec.rmse_noisy = rmse(input.noisy, recon);

  const DenseMatrix points = options.cluster_input == ClusterInput::coefficients
                                 ? DenseMatrix(fit.H.transpose())
                                 : DenseMatrix(recon.transpose());
  KMeansOptions km;
  km.n_clusters = count_distinct(input.clean.labels);
  km.seed = derive_seed(input.trial_seed, kClusterStream);
  km.max_iters = options.kmeans_max_iters;
  km.restarts = options.kmeans_restarts;
  const Labels pred = kmeans(points, km).labels;
  rec.acc = clustering_accuracy(input.clean.labels, pred);
  rec.nmi = nmi(input.clean.labels, pred);
  return rec;
}

MetricsReport run_trial(const Dataset& ds, const NoiseSpec& noise, SolverKind solver, int k,
                        const TrialOptions& options, std::uint64_t trial_seed) {
  const TrialInput input = prepare_trial(ds, noise, options.train_fraction, trial_seed);
  MetricsReport rec = evaluate_solver(input, solver, k, options);
  rec.noise = to_string(noise.kind);
  return rec;
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (ks.empty()) throw std::invalid_argument("at least one rank k is required");
  for (int k : ks) {
    if (k < 1) throw std::invalid_argument("rank k must be >= 1 (got " + std::to_string(k) + ")");
  }
  if (solvers.empty()) throw std::invalid_argument("at least one solver is required");
  if (!(trial.train_fraction > 0.0 && trial.train_fraction <= 1.0)) {
    throw std::invalid_argument("train fraction must be in (0, 1]");
  }
  if (trial.max_iters < 1) throw std::invalid_argument("iterations must be >= 1");
  if (!(trial.lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
}

std::vector<SummaryRow> summarize(const std::vector<MetricsReport>& records, const std::vector<SolverKind>& solvers,
                                  const std::vector<int>& ks) {
  std::vector<SummaryRow> rows;
  for (SolverKind s : solvers) {
    for (int k : ks) {
      std::vector<const MetricsReport*> group;
      for (const auto& r : records) {
        if (r.solver == s && r.k == k) group.push_back(&r);
      }
      const std::pair<const char*, double MetricsReport::*> metrics[] = {
          {"rmse", &MetricsReport::rmse_clean}, {"acc", &MetricsReport::acc}, {"nmi", &MetricsReport::nmi}};
      for (const auto& [name, field] : metrics) {
        SummaryRow row{s, k, name, 0.0, 0.0};
        if (!group.empty()) {
          const double count = static_cast<double>(group.size());
          for (const auto* r : group) row.mean += r->*field;
          row.mean /= count;
          double ss = 0.0;
          for (const auto* r : group) ss += (r->*field - row.mean) * (r->*field - row.mean);
          row.std = std::sqrt(ss / count);
        }
        rows.push_back(row);
      }
    }
  }
  return rows;
}

ExperimentReport run_experiment(const Dataset& ds, const ExperimentConfig& cfg) {
  cfg.validate();
  ds.validate();
  const auto trials = static_cast<std::size_t>(cfg.trials);
  std::vector<std::vector<MetricsReport>> per_trial(trials);
  std::vector<std::exception_ptr> failures(trials);
  const std::string dataset_name = to_string(cfg.dataset.kind);
  const std::string noise_name = to_string(cfg.noise.kind);

  auto run_one = [&](std::size_t t) {
    try {
      const std::uint64_t trial_seed = cfg.base_seed + t;
      const TrialInput input = prepare_trial(ds, cfg.noise, cfg.trial.train_fraction, trial_seed);
      std::vector<MetricsReport> out;
      for (SolverKind s : cfg.solvers) {
        for (int k : cfg.ks) {
          MetricsReport rec = evaluate_solver(input, s, k, cfg.trial);
          rec.dataset = dataset_name;
          rec.noise = noise_name;
          rec.trial = static_cast<int>(t);
          out.push_back(std::move(rec));
        }
      }
      per_trial[t] = std::move(out);
    } catch (...) {
      failures[t] = std::current_exception();
    }
  };

  unsigned workers = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(trials)));
  if (workers == 1) {
    for (std::size_t t = 0; t < trials; ++t) run_one(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < trials; t = next++) run_one(t);
      });
    }
    for (auto& th : pool) th.join();
  }

  ExperimentReport report;
  std::optional<std::string> first_error;
  for (SolverKind s : cfg.solvers) {
    for (int k : cfg.ks) {
      for (std::size_t t = 0; t < trials; ++t) {
        if (failures[t]) continue;
        for (const auto& rec : per_trial[t]) {
          if (rec.solver == s && rec.k == k) report.records.push_back(rec);
        }
      }
    }
  }
  for (std::size_t t = 0; t < trials && !first_error; ++t) {
    if (!failures[t]) continue;
    try {
      std::rethrow_exception(failures[t]);
    } catch (const std::exception& e) {
      first_error = "trial " + std::to_string(t) + " failed: " + e.what();
    } catch (...) {
      first_error = "trial " + std::to_string(t) + " failed";
    }
  }
  report.summaries = summarize(report.records, cfg.solvers, cfg.ks);
  if (first_error) throw ExperimentError(*first_error, std::move(report));
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  return run_experiment(load_dataset(cfg.dataset), cfg);
}

}  // namespace rnmf
