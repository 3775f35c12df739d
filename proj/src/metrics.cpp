#include "kfuse/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace kfuse {
namespace {

void check_lengths(std::span<const int> truth, std::span<const int> pred, std::size_t minimum) {
  if (truth.size() != pred.size()) {
    throw Error(ErrorKind::length_mismatch, "label lengths differ: " + std::to_string(truth.size()) +
                                                " vs " + std::to_string(pred.size()));
  }
  if (truth.size() < minimum) {
    throw Error(ErrorKind::validation, "need at least " + std::to_string(minimum) + " labels, got " +
                                           std::to_string(truth.size()));
  }
}

std::vector<Index> dense_codes(std::span<const int> labels, Index& classes) {
  std::unordered_map<int, Index> codes;
  std::vector<Index> out;
  out.reserve(labels.size());
  for (int label : labels) {
    auto [it, inserted] = codes.try_emplace(label, static_cast<Index>(codes.size()));
    out.push_back(it->second);
  }
  classes = static_cast<Index>(codes.size());
  return out;
}

double pairs(std::int64_t count) { return 0.5 * static_cast<double>(count) * static_cast<double>(count - 1); }

struct PairCounts {
  double joint = 0;  // pairs together in both labelings
  double rows = 0;   // pairs together in the first
  double cols = 0;   // pairs together in the second
  double total = 0;
};

PairCounts pair_counts(const ContingencyTable& t) {
  PairCounts pc;
  for (Index i = 0; i < t.counts.rows(); ++i) {
    for (Index j = 0; j < t.counts.cols(); ++j) pc.joint += pairs(t.counts(i, j));
  }
  for (Index i = 0; i < t.row_sums.size(); ++i) pc.rows += pairs(t.row_sums(i));
  for (Index j = 0; j < t.col_sums.size(); ++j) pc.cols += pairs(t.col_sums(j));
  pc.total = pairs(t.n);
  return pc;
}

double entropy(const Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>& sums, double n) {
  double h = 0;
  for (Index i = 0; i < sums.size(); ++i) {
    if (sums(i) == 0) continue;
    const double p = static_cast<double>(sums(i)) / n;
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace

ContingencyTable contingency(std::span<const int> truth, std::span<const int> pred) {
  check_lengths(truth, pred, 0);
  Index rows = 0;
  Index cols = 0;
  const auto a = dense_codes(truth, rows);
  const auto b = dense_codes(pred, cols);
  ContingencyTable t;
  t.counts.setZero(rows, cols);
  for (std::size_t k = 0; k < a.size(); ++k) ++t.counts(a[k], b[k]);
  t.row_sums = t.counts.rowwise().sum();
  t.col_sums = t.counts.colwise().sum().transpose();
  t.n = static_cast<std::int64_t>(a.size());
  return t;
}

double fmi(std::span<const int> truth, std::span<const int> pred) {
  check_lengths(truth, pred, 2);
  const PairCounts pc = pair_counts(contingency(truth, pred));
  if (pc.rows == 0 || pc.cols == 0) return 0.0;
  return pc.joint / std::sqrt(pc.rows * pc.cols);
}

double ari(std::span<const int> truth, std::span<const int> pred) {
  check_lengths(truth, pred, 2);
  const PairCounts pc = pair_counts(contingency(truth, pred));
  const double expected = pc.rows * pc.cols / pc.total;
  const double maximum = 0.5 * (pc.rows + pc.cols);
  if (maximum == expected) return pc.joint == expected ? 1.0 : 0.0;
  return (pc.joint - expected) / (maximum - expected);
}

double nmi(std::span<const int> truth, std::span<const int> pred, NmiNormalization norm) {
  check_lengths(truth, pred, 1);
  const ContingencyTable t = contingency(truth, pred);
  const auto n = static_cast<double>(t.n);
  const double hu = entropy(t.row_sums, n);
  const double hv = entropy(t.col_sums, n);
  if (hu == 0 && hv == 0) return 1.0;
  if (hu == 0 || hv == 0) return 0.0;

  double mi = 0;
  for (Index i = 0; i < t.counts.rows(); ++i) {
    for (Index j = 0; j < t.counts.cols(); ++j) {
      const auto nij = static_cast<double>(t.counts(i, j));
      if (nij == 0) continue;
      mi += nij / n *
            std::log(nij * n / (static_cast<double>(t.row_sums(i)) * static_cast<double>(t.col_sums(j))));
    }
  }
  const double denom = norm == NmiNormalization::geometric ? std::sqrt(hu * hv) : 0.5 * (hu + hv);
  return std::clamp(mi / denom, 0.0, 1.0);
}

ExternalScores evaluate(std::span<const int> truth, std::span<const int> pred) {
  return {fmi(truth, pred), ari(truth, pred), nmi(truth, pred)};
}

RankTable rank_scores(Eigen::MatrixXd scores, std::vector<std::string> datasets,
                      std::vector<std::string> algorithms) {
  RankTable table;
  const Index rows = scores.rows();
  const Index cols = scores.cols();
  table.ranks.resize(rows, cols);
  std::vector<Index> order(static_cast<std::size_t>(cols));
  for (Index r = 0; r < rows; ++r) {
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return scores(r, a) > scores(r, b); });
    for (Index start = 0; start < cols;) {
      Index stop = start + 1;
      while (stop < cols && scores(r, order[static_cast<std::size_t>(stop)]) ==
                                scores(r, order[static_cast<std::size_t>(start)])) {
        ++stop;
      }
      // Positions start..stop-1 hold ranks start+1..stop; ties share their mean.
      const double shared = 0.5 * static_cast<double>(start + 1 + stop);
      for (Index k = start; k < stop; ++k) table.ranks(r, order[static_cast<std::size_t>(k)]) = shared;
      start = stop;
    }
  }
  table.mean_ranks = rows > 0 ? Eigen::VectorXd(table.ranks.colwise().mean().transpose())
                              : Eigen::VectorXd::Zero(cols);
  table.scores = std::move(scores);
  table.datasets = std::move(datasets);
  table.algorithms = std::move(algorithms);
  return table;
}

FriedmanResult friedman_statistic(const RankTable& table) {
  const Index n = table.num_datasets();
  const Index m = table.num_algorithms();
  if (n < 2 || m < 2) {
    throw Error(ErrorKind::validation, "Friedman test needs at least 2 datasets and 2 algorithms, got " +
                                           std::to_string(n) + " x " + std::to_string(m));
  }
  const auto N = static_cast<double>(n);
  const auto M = static_cast<double>(m);
  const double chi = 12.0 * N / (M * (M + 1.0)) * table.mean_ranks.squaredNorm() - 3.0 * N * (M + 1.0);
  return {chi, static_cast<int>(m - 1)};
}

double nemenyi_cd(int algorithms, int datasets, double q_alpha) {
  if (algorithms < 2 || datasets < 1 || !(q_alpha > 0)) {
    throw Error(ErrorKind::validation, "critical difference needs M >= 2, N >= 1 and q_alpha > 0");
  }
  const double m = algorithms;
  return q_alpha * std::sqrt(m * (m + 1.0) / (6.0 * datasets));
}

std::optional<double> nemenyi_q05(int algorithms) {
  // Studentized range quantile at 0.95 with infinite degrees of freedom, divided by sqrt(2).
  static constexpr std::array<double, 19> table = {1.960, 2.344, 2.569, 2.728, 2.850, 2.948, 3.031,
                                                   3.102, 3.164, 3.219, 3.268, 3.313, 3.354, 3.391,
                                                   3.426, 3.458, 3.489, 3.517, 3.544};
  if (algorithms < 2 || algorithms > 20) return std::nullopt;
  return table[static_cast<std::size_t>(algorithms - 2)];
}

}  // namespace kfuse
