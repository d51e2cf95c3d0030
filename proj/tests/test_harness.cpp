#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "rnmf/cli.hpp"
#include "rnmf/experiment.hpp"
#include "rnmf/report_io.hpp"
#include "rnmf/svg_plot.hpp"
#include "test_util.hpp"

using namespace rnmf;
using rnmf::testing::TempDir;

namespace {

using Table = std::vector<std::vector<std::string>>;

// Minimal RFC 4180 reader: quoted fields, doubled quotes, embedded breaks.
Table parse_csv(const std::string& text) {
  Table rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
    } else {
      field += c;
    }
  }
  if (!field.empty() || !row.empty()) {
    row.push_back(field);
    rows.push_back(row);
  }
  return rows;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_of(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.dataset.kind = DatasetKind::synthetic;
  cfg.dataset.synthetic.n_subjects = 4;
  cfg.dataset.synthetic.per_subject = 5;
  cfg.dataset.synthetic.height = 12;
  cfg.dataset.synthetic.width = 10;
  cfg.noise = NoiseSpec::block(4, 0.5, 0);
  cfg.ks = {2, 3};
  cfg.trials = 3;
  cfg.trial.max_iters = 30;
  cfg.trial.kmeans_restarts = 2;
  cfg.threads = 1;
  return cfg;
}

bool same_except_runtime(const MetricsReport& a, const MetricsReport& b) {
  return a.dataset == b.dataset && a.noise == b.noise && a.solver == b.solver && a.k == b.k && a.trial == b.trial &&
         a.seed == b.seed && a.rmse_clean == b.rmse_clean && a.rmse_noisy == b.rmse_noisy && a.acc == b.acc &&
         a.nmi == b.nmi && a.input_hash == b.input_hash;
}

}  // namespace

TEST_CASE("run_trial clusters well separated subjects") {
  SyntheticParams p;
  p.n_subjects = 5;
  p.per_subject = 10;
  p.noise_scale = 0.05;
  const Dataset ds = synthesize_dataset(p);
  TrialOptions opts;
  const MetricsReport rec = run_trial(ds, NoiseSpec::none(), SolverKind::l2, 5, opts, 0);
  CHECK(rec.acc >= 0.9);
  CHECK(rec.nmi >= 0.85);
  CHECK(rec.noise == "none");
  CHECK(rec.rmse_clean == rec.rmse_noisy);

  const MetricsReport again = run_trial(ds, NoiseSpec::none(), SolverKind::l2, 5, opts, 0);
  CHECK(same_except_runtime(rec, again));
}

TEST_CASE("experiment record and summary counts") {
  const ExperimentConfig cfg = small_config();
  const ExperimentReport report = run_experiment(cfg);
  CHECK(report.records.size() == 3 * 2 * 3);
  CHECK(report.summaries.size() == 3 * 2 * 3);

  std::size_t i = 0;
  for (SolverKind s : cfg.solvers)
    for (int k : cfg.ks)
      for (int t = 0; t < cfg.trials; ++t, ++i) {
        const MetricsReport& r = report.records[i];
        CHECK(r.solver == s);
        CHECK(r.k == k);
        CHECK(r.trial == t);
        CHECK(r.seed == static_cast<std::uint64_t>(t));
        CHECK(r.dataset == "synthetic");
        CHECK(r.noise == "block");
      }
}

TEST_CASE("single trial has zero spread") {
  ExperimentConfig cfg = small_config();
  cfg.trials = 1;
  cfg.solvers = {SolverKind::l2};
  const ExperimentReport report = run_experiment(cfg);
  REQUIRE(report.summaries.size() == 6);
  for (const auto& row : report.summaries) CHECK(row.std == 0.0);
}

TEST_CASE("solvers in one trial see the same corrupted input") {
  const ExperimentReport report = run_experiment(small_config());
  std::map<int, std::set<std::uint64_t>> by_trial;
  for (const auto& r : report.records) by_trial[r.trial].insert(r.input_hash);
  REQUIRE(by_trial.size() == 3);
  std::set<std::uint64_t> distinct;
  for (const auto& [t, hashes] : by_trial) {
    CHECK(hashes.size() == 1);
    distinct.insert(*hashes.begin());
  }
  CHECK(distinct.size() == 3);
}

TEST_CASE("summary statistics match an independent recomputation") {
  const ExperimentConfig cfg = small_config();
  const ExperimentReport report = run_experiment(cfg);
  for (const auto& row : report.summaries) {
    std::vector<double> v;
    for (const auto& r : report.records) {
      if (r.solver != row.solver || r.k != row.k) continue;
      v.push_back(row.metric == "rmse" ? r.rmse_clean : row.metric == "acc" ? r.acc : r.nmi);
    }
    REQUIRE(v.size() == 3);
    double mean = 0.0;
    for (double x : v) mean += x / static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean) / static_cast<double>(v.size());
    CHECK(std::abs(row.mean - mean) <= 1e-12 * std::max(1.0, std::abs(mean)));
    CHECK(std::abs(row.std - std::sqrt(var)) <= 1e-12);
  }

  // The same check through the written files, up to the six-digit formatting.
  TempDir dir("summary");
  write_csv(report, dir.path());
  const Table recs = parse_csv(slurp(dir.path() / "records.csv"));
  const Table sums = parse_csv(slurp(dir.path() / "summary.csv"));
  REQUIRE(sums.size() == report.summaries.size() + 1);
  std::map<std::string, std::vector<double>> groups;
  const std::map<std::string, int> column = {{"rmse", 6}, {"acc", 8}, {"nmi", 9}};
  for (std::size_t i = 1; i < recs.size(); ++i)
    for (const auto& [metric, col] : column)
      groups[recs[i][2] + "/" + recs[i][3] + "/" + metric].push_back(std::stod(recs[i][col]));
  for (std::size_t i = 1; i < sums.size(); ++i) {
    const auto& v = groups[sums[i][0] + "/" + sums[i][1] + "/" + sums[i][2]];
    REQUIRE(v.size() == 3);
    const double mean = (v[0] + v[1] + v[2]) / 3.0;
    CHECK(std::stod(sums[i][3]) == doctest::Approx(mean).epsilon(1e-5));
  }
}

TEST_CASE("csv output with no records") {
  TempDir dir("empty");
  write_csv(ExperimentReport{}, dir.path());
  CHECK(slurp(dir.path() / "records.csv") == std::string(kRecordsHeader) + "\n");
  CHECK(slurp(dir.path() / "summary.csv") == std::string(kSummaryHeader) + "\n");
  CHECK_THROWS(emit_plot_data(ExperimentReport{}, dir.path()));
}

TEST_CASE("csv output with one record") {
  MetricsReport r;
  r.dataset = "orl";
  r.noise = "salt_pepper";
  r.solver = SolverKind::l21;
  r.k = 10;
  r.trial = 2;
  r.seed = 7;
  r.rmse_clean = 0.125;
  r.rmse_noisy = 0.25;
  r.acc = 0.5;
  r.nmi = 1.0 / 3.0;
  r.runtime_ms = 42;
  ExperimentReport report;
  report.records.push_back(r);
  TempDir dir("one");
  write_csv(report, dir.path());
  CHECK(slurp(dir.path() / "records.csv") ==
        std::string(kRecordsHeader) + "\norl,salt_pepper,l21,10,2,7,0.125,0.25,0.5,0.333333,42\n");
}

TEST_CASE("csv fields survive a round trip") {
  const std::vector<std::string> fields = {"plain", "with,comma", "with \"quote\"", "two\nlines", "", "1e-07"};
  const std::string row = csv_row(fields);
  const Table parsed = parse_csv(row);
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0] == fields);
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a\"b") == "\"a\"\"b\"");

  const ExperimentReport report = run_experiment(small_config());
  TempDir dir("roundtrip");
  write_csv(report, dir.path());
  for (const char* name : {"records.csv", "summary.csv"}) {
    const std::string bytes = slurp(dir.path() / name);
    std::string rebuilt;
    for (const auto& fields_in_row : parse_csv(bytes)) rebuilt += csv_row(fields_in_row);
    CHECK(rebuilt == bytes);
  }
  const Table recs = parse_csv(slurp(dir.path() / "records.csv"));
  REQUIRE(recs.size() == report.records.size() + 1);
  for (std::size_t i = 0; i < report.records.size(); ++i) CHECK(recs[i + 1] == record_fields(report.records[i]));
}

TEST_CASE("line chart draws one polyline per multi-point series") {
  LineChart chart;
  chart.title = "t";
  for (const char* name : {"l1", "l2", "l21"}) {
    chart.series.push_back({name, {10, 20, 30, 40}, {0.1, 0.2, 0.15, 0.3}, {0.01, 0.02, 0.0, 0.01}});
  }
  const std::string svg = render_line_chart(chart);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(count_of(svg, "<polyline") == 3);
  CHECK(count_of(svg, "class=\"marker\"") == 12);

  LineChart single;
  single.series.push_back({"only", {10}, {0.5}, {0.0}});
  const std::string one = render_line_chart(single);
  CHECK(count_of(one, "<polyline") == 0);
  CHECK(count_of(one, "class=\"marker\"") == 1);
}

TEST_CASE("plot data mirrors the summary table") {
  const ExperimentReport report = run_experiment(small_config());
  TempDir dir("plot");
  write_csv(report, dir.path());
  emit_plot_data(report, dir.path());
  for (const char* svg : {"rmse.svg", "acc.svg", "nmi.svg"}) {
    const std::string doc = slurp(dir.path() / svg);
    CHECK(count_of(doc, "<polyline") == 3);
  }
  std::istringstream plot(slurp(dir.path() / "plotdata.txt"));
  const Table sums = parse_csv(slurp(dir.path() / "summary.csv"));
  std::string line;
  std::getline(plot, line);
  CHECK(line == "# metric solver k mean std");
  std::map<std::string, std::pair<std::string, std::string>> from_summary;
  for (std::size_t i = 1; i < sums.size(); ++i)
    from_summary[sums[i][2] + " " + sums[i][0] + " " + sums[i][1]] = {sums[i][3], sums[i][4]};
  std::size_t lines = 0;
  while (std::getline(plot, line)) {
    std::istringstream ls(line);
    std::string metric, solver, k, mean, sd;
    ls >> metric >> solver >> k >> mean >> sd;
    const auto it = from_summary.find(metric + " " + solver + " " + k);
    REQUIRE(it != from_summary.end());
    CHECK(it->second.first == mean);
    CHECK(it->second.second == sd);
    ++lines;
  }
  CHECK(lines == report.summaries.size());
}

TEST_CASE("report does not depend on the number of threads") {
  ExperimentConfig cfg = small_config();
  const ExperimentReport serial = run_experiment(cfg);
  cfg.threads = 3;
  const ExperimentReport parallel = run_experiment(cfg);
  REQUIRE(serial.records.size() == parallel.records.size());
  for (std::size_t i = 0; i < serial.records.size(); ++i)
    CHECK(same_except_runtime(serial.records[i], parallel.records[i]));
}

TEST_CASE("failed trials raise with the completed records attached") {
  ExperimentConfig cfg = small_config();
  cfg.noise = NoiseSpec::block(50, 0.5, 0);  // larger than the 12x10 image
  try {
    run_experiment(cfg);
    FAIL("expected ExperimentError");
  } catch (const ExperimentError& e) {
    CHECK(std::string(e.what()).find("trial 0 failed") != std::string::npos);
    CHECK(e.partial().records.empty());
  }
}

TEST_CASE("config validation") {
  ExperimentConfig cfg = small_config();
  cfg.ks = {0};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.trial.train_fraction = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.solvers.clear();
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.dataset.kind = DatasetKind::orl;
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}

TEST_CASE("cli runs and rejects bad arguments") {
  TempDir dir("cli");
  const std::string out_dir = (dir.path() / "out").string();
  const std::map<std::string, std::string> base = {
      {"--subjects", "3"}, {"--per-subject", "4"}, {"--height", "8"},     {"--width", "8"},  {"--k", "2"},
      {"--iters", "10"},   {"--trials", "2"},      {"--block-size", "3"}, {"--out", out_dir}};
  auto code = [&](const std::map<std::string, std::string>& overrides) {
    std::map<std::string, std::string> merged = overrides;
    merged.insert(base.begin(), base.end());
    std::vector<std::string> args;
    for (const auto& [flag, value] : merged) {
      args.push_back(flag);
      if (!value.empty()) args.push_back(value);
    }
    std::ostringstream o, e;
    return run_cli(args, o, e);
  };

  CHECK(code({}) == 0);
  CHECK(std::filesystem::exists(dir.path() / "out" / "records.csv"));
  CHECK(std::filesystem::exists(dir.path() / "out" / "summary.csv"));
  CHECK(std::filesystem::exists(dir.path() / "out" / "plotdata.txt"));
  CHECK(std::filesystem::exists(dir.path() / "out" / "nmi.svg"));
  CHECK(parse_csv(slurp(dir.path() / "out" / "records.csv")).size() == 1 + 3 * 2);

  CHECK(code({{"--k", "0"}}) == 2);
  CHECK(code({{"--bogus", ""}}) == 2);
  CHECK(code({{"--iters", "abc"}}) == 2);
  CHECK(code({{"--dataset", "orl"}}) == 2);
  CHECK(code({{"--solvers", "l3"}}) == 2);
  CHECK(code({{"--noise", "gaussian"}}) == 2);
  CHECK(code({{"--dataset", "orl"}, {"--data-dir", (dir.path() / "missing").string()}}) == 1);

  // A runtime failure still leaves a header-only records file behind.
  const std::string fail_dir = (dir.path() / "fail").string();
  CHECK(code({{"--block-size", "40"}, {"--out", fail_dir}}) == 1);
  CHECK(slurp(dir.path() / "fail" / "records.csv") == std::string(kRecordsHeader) + "\n");

  std::ostringstream help, herr;
  CHECK(run_cli({"--help"}, help, herr) == 0);
  CHECK(help.str().find("--lambda") != std::string::npos);
}
