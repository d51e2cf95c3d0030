#include "rnmf/cli.hpp"

#include <CLI11.hpp>

#include "rnmf/experiment.hpp"
#include "rnmf/report_io.hpp"

namespace rnmf {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Noise-robustness benchmark for L2, L2,1 and L1-regularized NMF", "rnmf"};

  std::string dataset = "synthetic";
  std::string data_dir;
  int reduce = 0;
  std::string noise = "block";
  int block_size = 10;
  double fill_value = 0.5;
  double fraction = 0.4;
  double salt_ratio = 0.45;
  std::vector<std::string> solvers = {"l1", "l2", "l21"};
  std::vector<int> ks = {10, 20, 30, 40};
  int iters = 200;
  double lambda = 0.1;
  double train_fraction = 0.9;
  int trials = 5;
  std::uint64_t seed = 0;
  std::string out_dir = "./results";
  std::string cluster_on = "coefficients";
  int threads = 0;
  int restarts = 10;
  SyntheticParams synth;

  app.add_option("--dataset", dataset, "orl, yaleb or synthetic")->check(CLI::IsMember({"orl", "yaleb", "synthetic"}));
  app.add_option("--data-dir", data_dir, "Root directory with one sub-directory of PGM images per subject");
  app.add_option("--reduce", reduce, "Keep every n-th pixel (default 3 for orl, 4 for yaleb)")->check(CLI::PositiveNumber);
  app.add_option("--noise", noise, "block, salt_pepper or none")->check(CLI::IsMember({"block", "salt_pepper", "none"}));
  app.add_option("--block-size", block_size, "Occlusion block side in pixels")->capture_default_str();
  app.add_option("--fill-value", fill_value, "Occlusion fill value in [0, 1]")->capture_default_str();
  app.add_option("--fraction", fraction, "Salt-and-pepper pixel fraction")->capture_default_str();
  app.add_option("--salt-ratio", salt_ratio, "Share of salt among corrupted pixels")->capture_default_str();
  app.add_option("--solvers", solvers, "Comma-separated subset of l1,l2,l21")->delimiter(',');
  app.add_option("--k", ks, "Comma-separated ranks")->delimiter(',');
  app.add_option("--iters", iters, "Multiplicative-update iterations")->capture_default_str();
  app.add_option("--lambda", lambda, "L1 noise penalty")->capture_default_str();
  app.add_option("--train-fraction", train_fraction, "Fraction of samples drawn per trial")->capture_default_str();
  app.add_option("--trials", trials, "Repeated trials")->capture_default_str();
  app.add_option("--seed", seed, "Base seed; trial t uses seed + t")->capture_default_str();
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--cluster-on", cluster_on, "coefficients (H columns) or reconstruction (WH columns)")
      ->check(CLI::IsMember({"coefficients", "reconstruction"}));
  app.add_option("--threads", threads, "Concurrent trials (0 = hardware concurrency)")->capture_default_str();
  app.add_option("--kmeans-restarts", restarts, "k-means seedings per clustering")->capture_default_str();
  app.add_option("--subjects", synth.n_subjects, "Synthetic: number of subjects")->capture_default_str();
  app.add_option("--per-subject", synth.per_subject, "Synthetic: images per subject")->capture_default_str();
  app.add_option("--height", synth.height, "Synthetic: image height")->capture_default_str();
  app.add_option("--width", synth.width, "Synthetic: image width")->capture_default_str();
  app.add_option("--synthetic-noise", synth.noise_scale, "Synthetic: per-sample perturbation amplitude")
      ->capture_default_str();

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("rnmf");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  ExperimentConfig cfg;
  try {
    cfg.dataset.kind = parse_dataset_kind(dataset);
    cfg.dataset.path = data_dir;
    cfg.dataset.reduce = reduce;
    synth.seed = seed;
    cfg.dataset.synthetic = synth;
    if (cfg.dataset.kind != DatasetKind::synthetic && data_dir.empty()) {
      throw std::invalid_argument("--data-dir is required for --dataset " + dataset);
    }
    cfg.noise.kind = parse_noise_kind(noise);
    cfg.noise.block_size = block_size;
    cfg.noise.fill_value = fill_value;
    cfg.noise.fraction = fraction;
    cfg.noise.salt_ratio = salt_ratio;
    cfg.solvers.clear();
    for (const auto& s : solvers) cfg.solvers.push_back(parse_solver_kind(s));
    cfg.ks = ks;
    cfg.trials = trials;
    cfg.base_seed = seed;
    cfg.trial.lambda = lambda;
    cfg.trial.train_fraction = train_fraction;
    cfg.trial.max_iters = iters;
    cfg.trial.cluster_input =
        cluster_on == "reconstruction" ? ClusterInput::reconstruction : ClusterInput::coefficients;
    cfg.trial.kmeans_restarts = restarts;
    cfg.threads = threads;
    cfg.output_dir = out_dir;
    cfg.validate();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    const ExperimentReport report = run_experiment(cfg);
    write_csv(report, cfg.output_dir);
    emit_plot_data(report, cfg.output_dir);
    print_summary(report, out);
    out << "wrote " << report.records.size() << " records to " << cfg.output_dir.string() << "\n";
  } catch (const ExperimentError& e) {
    write_csv(e.partial(), cfg.output_dir);
    err << "error: " << e.what() << " (" << e.partial().records.size() << " completed records written)\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace rnmf
