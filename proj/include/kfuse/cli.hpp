#pragma once

#include "kfuse/generate.hpp"
#include "kfuse/metrics.hpp"
#include "kfuse/pipeline.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace kfuse::cli {

struct RunConfig {
  std::filesystem::path input;
  /// The input's last column is a ground-truth label.
  bool has_labels = false;
  Index clusters = 2;
  bool normalize = true;
  KMode k_mode = KMode::lambda;
  EnqueueMode enqueue_mode = EnqueueMode::rep_image;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> svg_out;
  unsigned threads = 1;
  int verbosity = 0;
};

struct RunReport {
  std::string dataset;
  Index n = 0;
  Index d = 0;
  Index lambda = 0;
  Index peaks = 0;
  Index subclusters = 0;
  Index outliers = 0;
  Index merges = 0;
  Index clusters = 0;
  std::optional<ExternalScores> scores;
  double wall_ms = 0;
  /// Filled at verbosity >= 1.
  std::vector<Index> num_trace;
};

struct ClusterOutcome {
  RunReport report;
  std::vector<int> assignments;
};

/// Load, normalize, cluster, and write assignments (and an SVG) where configured.
ClusterOutcome cmd_cluster(const RunConfig& config);
void print_report(std::ostream& out, const RunReport& report);

ExternalScores cmd_eval(const std::filesystem::path& truth, const std::filesystem::path& pred);
/// "FMI ARI NMI" header plus one row, three decimals each.
std::string format_scores(const ExternalScores& scores);

struct StatsReport {
  RankTable table;
  FriedmanResult friedman;
  double q_alpha = 0;
  double cd = 0;
  /// Algorithm pairs (i < j) whose mean-rank gap exceeds the critical difference.
  std::vector<std::pair<Index, Index>> significant;
};

/// Without `q_alpha`, the built-in alpha = 0.05 table is used.
StatsReport cmd_stats(const std::filesystem::path& scores, std::optional<double> q_alpha);
void print_stats(std::ostream& out, const StatsReport& report);

/// Renders the labeled scatter plot and writes it to `out`.
void cmd_svg(const std::filesystem::path& dataset, bool has_labels, const std::filesystem::path& labels,
             const std::filesystem::path& out);

/// Entry point behind the `kfuse` executable. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kfuse::cli
