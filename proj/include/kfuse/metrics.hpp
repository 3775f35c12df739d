#pragma once

#include "kfuse/core.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kfuse {

/// Cross-tabulation of two labelings. Rows follow the first labeling's
/// classes, columns the second's, both in order of first appearance.
struct ContingencyTable {
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> counts;
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> row_sums;
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> col_sums;
  std::int64_t n = 0;
};

ContingencyTable contingency(std::span<const int> truth, std::span<const int> pred);

/// Fowlkes-Mallows index over same-cluster point pairs.
double fmi(std::span<const int> truth, std::span<const int> pred);

/// Hubert-Arabie adjusted Rand index.
double ari(std::span<const int> truth, std::span<const int> pred);

enum class NmiNormalization { geometric, arithmetic };

/// Mutual information normalized by sqrt(H(U) H(V)) (or their mean).
double nmi(std::span<const int> truth, std::span<const int> pred,
           NmiNormalization norm = NmiNormalization::geometric);

struct ExternalScores {
  double fmi = 0;
  double ari = 0;
  double nmi = 0;
};

ExternalScores evaluate(std::span<const int> truth, std::span<const int> pred);

/// Per-dataset ranks of algorithm scores (higher score, lower rank; ties
/// share the average rank).
struct RankTable {
  Eigen::MatrixXd scores;
  Eigen::MatrixXd ranks;
  Eigen::VectorXd mean_ranks;
  std::vector<std::string> datasets;
  std::vector<std::string> algorithms;

  Index num_datasets() const { return scores.rows(); }
  Index num_algorithms() const { return scores.cols(); }
};

RankTable rank_scores(Eigen::MatrixXd scores, std::vector<std::string> datasets = {},
                      std::vector<std::string> algorithms = {});

struct FriedmanResult {
  double chi_square = 0;
  int df = 0;
};

FriedmanResult friedman_statistic(const RankTable& table);

/// Nemenyi critical difference q_alpha * sqrt(M (M + 1) / (6 N)).
double nemenyi_cd(int algorithms, int datasets, double q_alpha);

/// Two-tailed Nemenyi q at alpha = 0.05 for 2..20 algorithms.
std::optional<double> nemenyi_q05(int algorithms);

}  // namespace kfuse
