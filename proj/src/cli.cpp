#include "kfuse/cli.hpp"

#include "kfuse/io.hpp"
#include "kfuse/svg.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>

namespace kfuse::cli {
namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  out << text;
}

}  // namespace

ClusterOutcome cmd_cluster(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const Dataset<double> ds = load_csv(config.input, config.has_labels);

  ClusterOptions options;
  options.clusters = config.clusters;
  options.normalize = config.normalize;
  options.k_mode = config.k_mode;
  options.enqueue_mode = config.enqueue_mode;
  options.distance.threads = config.threads;
  // Ground truth never reaches the clustering itself.
  Dataset<double> unlabeled{ds.points, std::nullopt, ds.name};
  const ClusterResult<double> result = cluster(unlabeled, options);

  ClusterOutcome outcome;
  outcome.assignments = result.labels;
  RunReport& report = outcome.report;
  report.dataset = ds.name;
  report.n = ds.size();
  report.d = ds.dims();
  report.lambda = result.index.lambda;
  report.peaks = static_cast<Index>(result.profile.peaks.size());
  report.subclusters = result.partition.num_clusters();
  report.outliers = static_cast<Index>(std::count(result.initial.labels.begin(), result.initial.labels.end(), 0));
  report.merges = result.merges();
  report.clusters = result.plan.target;
  if (ds.labels) report.scores = evaluate(*ds.labels, result.labels);
  if (config.verbosity > 0) report.num_trace = result.index.num_trace;

  if (config.out) write_labels(*config.out, outcome.assignments);
  if (config.svg_out) write_text(*config.svg_out, render_svg(ds, outcome.assignments));
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return outcome;
}

void print_report(std::ostream& out, const RunReport& report) {
  fmt::print(out, "dataset: {}\n", report.dataset);
  fmt::print(out, "points: {}\ndims: {}\n", report.n, report.d);
  fmt::print(out, "lambda: {}\npeaks: {}\n", report.lambda, report.peaks);
  fmt::print(out, "subclusters: {}\noutliers: {}\n", report.subclusters, report.outliers);
  fmt::print(out, "merges: {}\nclusters: {}\n", report.merges, report.clusters);
  if (report.scores) {
    fmt::print(out, "fmi: {:.3f}\nari: {:.3f}\nnmi: {:.3f}\n", report.scores->fmi, report.scores->ari,
               report.scores->nmi);
  }
  if (!report.num_trace.empty()) fmt::print(out, "num_trace: {}\n", fmt::join(report.num_trace, " "));
  fmt::print(out, "wall_ms: {:.1f}\n", report.wall_ms);
}

ExternalScores cmd_eval(const std::filesystem::path& truth, const std::filesystem::path& pred) {
  const auto a = read_labels(truth);
  const auto b = read_labels(pred);
  if (a.size() != b.size()) {
    throw Error(ErrorKind::length_mismatch, truth.string() + " has " + std::to_string(a.size()) + " labels but " +
                                                pred.string() + " has " + std::to_string(b.size()));
  }
  return evaluate(a, b);
}

std::string format_scores(const ExternalScores& scores) {
  return fmt::format("FMI ARI NMI\n{:.3f} {:.3f} {:.3f}\n", scores.fmi, scores.ari, scores.nmi);
}

StatsReport cmd_stats(const std::filesystem::path& scores, std::optional<double> q_alpha) {
  StatsReport report;
  report.table = read_score_table(scores);
  report.friedman = friedman_statistic(report.table);
  const auto m = static_cast<int>(report.table.num_algorithms());
  const auto n = static_cast<int>(report.table.num_datasets());
  if (!q_alpha) q_alpha = nemenyi_q05(m);
  if (!q_alpha) {
    throw Error(ErrorKind::usage, "no built-in q_alpha for " + std::to_string(m) + " algorithms; pass --q-alpha");
  }
  report.q_alpha = *q_alpha;
  report.cd = nemenyi_cd(m, n, report.q_alpha);
  for (Index i = 0; i < m; ++i) {
    for (Index j = i + 1; j < m; ++j) {
      if (std::abs(report.table.mean_ranks(i) - report.table.mean_ranks(j)) > report.cd) {
        report.significant.emplace_back(i, j);
      }
    }
  }
  return report;
}

void print_stats(std::ostream& out, const StatsReport& report) {
  const auto& t = report.table;
  const auto name = [&](Index a) {
    return a < static_cast<Index>(t.algorithms.size()) ? t.algorithms[static_cast<std::size_t>(a)]
                                                        : fmt::format("#{}", a + 1);
  };
  fmt::print(out, "algorithms: {}\ndatasets: {}\n", t.num_algorithms(), t.num_datasets());
  fmt::print(out, "mean ranks:\n");
  for (Index a = 0; a < t.num_algorithms(); ++a) fmt::print(out, "  {} {:.4f}\n", name(a), t.mean_ranks(a));
  fmt::print(out, "chi_square: {:.4f}\ndf: {}\n", report.friedman.chi_square, report.friedman.df);
  fmt::print(out, "q_alpha: {:.3f}\ncd: {:.4f}\n", report.q_alpha, report.cd);
  fmt::print(out, "significant pairs: {}\n", report.significant.size());
  for (const auto& [i, j] : report.significant) {
    fmt::print(out, "  {} vs {}: gap {:.4f}\n", name(i), name(j), std::abs(t.mean_ranks(i) - t.mean_ranks(j)));
  }
}

void cmd_svg(const std::filesystem::path& dataset, bool has_labels, const std::filesystem::path& labels,
             const std::filesystem::path& out) {
  const Dataset<double> ds = load_csv(dataset, has_labels);
  const auto assignment = read_labels(labels);
  write_text(out, render_svg(ds, assignment));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Density-based agglomerative clustering with natural neighbors", "kfuse"};
  app.require_subcommand(1);

  RunConfig run_config;
  std::string input;
  std::string out_path;
  std::string svg_path;
  std::string k_mode = "lambda";
  std::string enqueue_mode = "rep-image";
  auto* cluster_cmd = app.add_subcommand("cluster", "cluster a CSV dataset");
  cluster_cmd->add_option("input", input, "CSV dataset")->required();
  cluster_cmd->add_option("-c,--clusters", run_config.clusters, "number of clusters")
      ->required()
      ->check(CLI::PositiveNumber);
  cluster_cmd->add_flag("--has-labels", run_config.has_labels, "last column holds ground-truth labels");
  cluster_cmd->add_flag("--no-normalize{false}", run_config.normalize, "skip min-max normalization");
  cluster_cmd->add_option("--k-mode", k_mode, "neighborhood size")->check(CLI::IsMember({"lambda", "max-nb"}));
  cluster_cmd->add_option("--enqueue-mode", enqueue_mode, "which points keep growing sub-clusters")
      ->check(CLI::IsMember({"rep-image", "peaks-only"}));
  cluster_cmd->add_option("--out", out_path, "assignment file (default: stdout)");
  cluster_cmd->add_option("--svg-out", svg_path, "scatter plot of the result (2-D only)");
  cluster_cmd->add_option("--threads", run_config.threads, "distance-matrix threads (0 = all cores)");
  cluster_cmd->add_flag("-v,--verbose", run_config.verbosity, "print the search trace");

  std::string truth_path;
  std::string pred_path;
  auto* eval_cmd = app.add_subcommand("eval", "compare two label files");
  eval_cmd->add_option("truth", truth_path, "ground-truth labels")->required();
  eval_cmd->add_option("pred", pred_path, "predicted labels")->required();

  std::string scores_path;
  std::optional<double> q_alpha;
  auto* stats_cmd = app.add_subcommand("stats", "Friedman test and Nemenyi critical difference");
  stats_cmd->add_option("scores", scores_path, "score matrix CSV")->required();
  stats_cmd->add_option("--q-alpha", q_alpha, "Nemenyi q (default: built-in alpha = 0.05 table)")
      ->check(CLI::PositiveNumber);

  std::string shape_name;
  GenerateOptions gen;
  std::uint64_t seed = 0;
  auto* gen_cmd = app.add_subcommand("generate", "write a labeled synthetic dataset");
  gen_cmd->add_option("shape", shape_name, "blobs, rings, moons or line")
      ->required()
      ->check(CLI::IsMember({"blobs", "rings", "moons", "line"}));
  gen_cmd->add_option("-c,--clusters", gen.clusters, "number of clusters");
  gen_cmd->add_option("-n,--points", gen.points, "number of points");
  gen_cmd->add_option("--noise", gen.noise, "noise scale (default depends on shape)");
  gen_cmd->add_option("--seed", seed, "random seed")->required();
  gen_cmd->add_option("--out", out_path, "output CSV (default: stdout)");

  std::string svg_data;
  std::string svg_labels;
  std::string svg_out;
  bool svg_has_labels = false;
  auto* svg_cmd = app.add_subcommand("svg", "render a 2-D labeled scatter plot");
  svg_cmd->add_option("dataset", svg_data, "CSV dataset")->required();
  svg_cmd->add_option("labels", svg_labels, "label file")->required();
  svg_cmd->add_option("out", svg_out, "output SVG")->required();
  svg_cmd->add_flag("--has-labels", svg_has_labels, "dataset's last column is a label column to ignore");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : exit_code(ErrorKind::usage);
  }

  try {
    if (cluster_cmd->parsed()) {
      run_config.input = input;
      run_config.k_mode = k_mode == "max-nb" ? KMode::max_nb : KMode::lambda;
      run_config.enqueue_mode = enqueue_mode == "peaks-only" ? EnqueueMode::peaks_only : EnqueueMode::rep_image;
      if (!out_path.empty()) run_config.out = out_path;
      if (!svg_path.empty()) run_config.svg_out = svg_path;
      const ClusterOutcome outcome = cmd_cluster(run_config);
      if (run_config.out) {
        print_report(out, outcome.report);
      } else {
        print_report(err, outcome.report);
        write_labels(out, outcome.assignments);
      }
    } else if (eval_cmd->parsed()) {
      out << format_scores(cmd_eval(truth_path, pred_path));
    } else if (stats_cmd->parsed()) {
      print_stats(out, cmd_stats(scores_path, q_alpha));
    } else if (gen_cmd->parsed()) {
      gen.shape = *parse_shape(shape_name);
      gen.seed = seed;
      const Dataset<double> ds = generate(gen);
      if (out_path.empty()) {
        write_csv(out, ds);
      } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) throw Error(ErrorKind::io, "cannot write " + out_path);
        write_csv(file, ds);
      }
    } else if (svg_cmd->parsed()) {
      cmd_svg(svg_data, svg_has_labels, svg_labels, svg_out);
    }
  } catch (const Error& e) {
    fmt::print(err, "error: {}: {}\n", to_string(e.kind()), e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}: {}\n", to_string(ErrorKind::internal), e.what());
    return exit_code(ErrorKind::internal);
  }
  return 0;
}

}  // namespace kfuse::cli
