#pragma once

#include "kfuse/core.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace kfuse {

/// n x d point matrix (one point per row) with optional ground-truth labels.
template <typename Scalar = double>
struct Dataset {
  Matrix<Scalar> points;
  std::optional<std::vector<int>> labels;
  std::string name;

  Index size() const { return points.rows(); }
  Index dims() const { return points.cols(); }
};

/// Throws Error if the dataset is empty, holds non-finite coordinates, or has
/// a label vector of the wrong length.
template <typename Scalar>
void validate(const Dataset<Scalar>& ds) {
  if (ds.size() < 1 || ds.dims() < 1) {
    throw Error(ErrorKind::empty_dataset, "dataset '" + ds.name + "' has no points");
  }
  for (Index i = 0; i < ds.size(); ++i) {
    for (Index j = 0; j < ds.dims(); ++j) {
      if (!std::isfinite(ds.points(i, j))) {
        throw Error(ErrorKind::validation, "non-finite value at point " + std::to_string(i) +
                                               ", column " + std::to_string(j));
      }
    }
  }
  if (ds.labels && static_cast<Index>(ds.labels->size()) != ds.size()) {
    throw Error(ErrorKind::validation, "label count " + std::to_string(ds.labels->size()) +
                                           " does not match point count " +
                                           std::to_string(ds.size()));
  }
}

/// Reads a comma-separated dataset. A first row whose first field is not
/// numeric is treated as a header. With `has_labels`, the last column holds
/// class tokens, remapped to 0..C-1 in order of first appearance.
Dataset<double> load_csv(const std::filesystem::path& path, bool has_labels);

/// Rescales every column to [0, 1]; constant columns become 0.
template <typename Scalar>
Dataset<Scalar> minmax_normalize(const Dataset<Scalar>& ds) {
  Dataset<Scalar> out = ds;
  if (ds.size() == 0) return out;
  const auto lo = ds.points.colwise().minCoeff().eval();
  const auto hi = ds.points.colwise().maxCoeff().eval();
  for (Index j = 0; j < ds.dims(); ++j) {
    const Scalar range = hi(j) - lo(j);
    if (range > Scalar(0)) {
      out.points.col(j) = (ds.points.col(j).array() - lo(j)) / range;
    } else {
      out.points.col(j).setZero();
    }
  }
  return out;
}

enum class Metric { euclidean };

struct DistanceOptions {
  Metric metric = Metric::euclidean;
  /// Datasets larger than this are rejected before the n x n matrix is allocated.
  Index max_points = 20000;
  /// Worker threads for row-parallel construction; 0 picks hardware concurrency.
  unsigned threads = 1;
};

/// Symmetric n x n matrix of pairwise distances with a zero diagonal.
template <typename Scalar = double>
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(Matrix<Scalar> values) : values_(std::move(values)) {}

  Index size() const { return values_.rows(); }
  Scalar operator()(Index i, Index j) const { return values_(i, j); }
  const Matrix<Scalar>& values() const { return values_; }

 private:
  Matrix<Scalar> values_;
};

namespace detail {

template <typename Derived>
typename Derived::Scalar euclidean(const Eigen::MatrixBase<Derived>& points, Index i, Index j) {
  return (points.row(i) - points.row(j)).norm();
}

}  // namespace detail

/// Euclidean distances between all rows of `points`. Each entry is computed
/// by the same expression regardless of threading, so parallel output is
/// bit-identical to the sequential loop.
template <typename Derived>
DistanceMatrix<typename Derived::Scalar> pairwise_distances(const Eigen::MatrixBase<Derived>& points,
                                                            const DistanceOptions& options = {}) {
  using Scalar = typename Derived::Scalar;
  const Index n = points.rows();
  if (n > options.max_points) {
    throw Error(ErrorKind::too_large, "dataset has " + std::to_string(n) +
                                          " points; the distance matrix is capped at " +
                                          std::to_string(options.max_points));
  }
  Matrix<Scalar> values = Matrix<Scalar>::Zero(n, n);
  auto fill_rows = [&](Index first, Index stride) {
    for (Index i = first; i < n; i += stride) {
      for (Index j = i + 1; j < n; ++j) {
        const Scalar d = detail::euclidean(points, i, j);
        values(i, j) = d;
        values(j, i) = d;
      }
    }
  };

  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                          : options.threads;
  threads = static_cast<unsigned>(std::min<Index>(threads, std::max<Index>(n, 1)));
  if (threads <= 1) {
    fill_rows(0, 1);
  } else {
    // Rows are striped so that each (i, j) with i < j is written by exactly one worker.
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] { fill_rows(static_cast<Index>(t), static_cast<Index>(threads)); });
    }
  }
  return DistanceMatrix<Scalar>(std::move(values));
}

template <typename Scalar>
DistanceMatrix<Scalar> pairwise_distances(const Dataset<Scalar>& ds, const DistanceOptions& options = {}) {
  return pairwise_distances(ds.points, options);
}

}  // namespace kfuse
