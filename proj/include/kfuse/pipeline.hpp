#pragma once

#include "kfuse/core.hpp"
#include "kfuse/dataset.hpp"
#include "kfuse/density.hpp"
#include "kfuse/fusion.hpp"
#include "kfuse/neighbors.hpp"
#include "kfuse/partition.hpp"

#include <vector>

namespace kfuse {

struct ClusterOptions {
  /// Requested number of final clusters.
  Index clusters = 2;
  bool normalize = true;
  KMode k_mode = KMode::lambda;
  EnqueueMode enqueue_mode = EnqueueMode::rep_image;
  DistanceOptions distance;
};

/// Every intermediate of one clustering run, for reporting and inspection.
template <typename Scalar = double>
struct ClusterResult {
  NeighborIndex index;
  DensityProfile<Scalar> profile;
  /// Partition straight out of the peak expansion, unassigned points still at 0.
  SubClustering<Scalar> initial;
  /// The same partition after outlier assignment.
  SubClustering<Scalar> partition;
  FusionPlan<Scalar> plan;
  /// Final labels 1..clusters in input order.
  std::vector<int> labels;

  Index merges() const { return partition.num_clusters() - plan.target; }
};

/// Search, partition and fuse over a precomputed distance matrix.
template <typename Scalar>
ClusterResult<Scalar> cluster(const DistanceMatrix<Scalar>& dm, const ClusterOptions& options) {
  ClusterResult<Scalar> result;
  result.index = nan_search(dm);
  const NeighborLists lists = density_neighbors(result.index, dm, options.k_mode);
  result.profile = compute_representatives(lists, compute_density(result.index.nb, lists, dm));
  result.initial = divide_subclusters(lists, result.profile, options.enqueue_mode);
  result.partition = assign_outliers(result.initial, dm);
  result.plan = build_fusion_plan(result.partition, result.index.nn, dm, options.clusters);
  result.labels = fuse(result.partition, result.plan);
  return result;
}

/// Full pipeline on a dataset; ground-truth labels, if any, are ignored.
template <typename Scalar>
ClusterResult<Scalar> cluster(const Dataset<Scalar>& ds, const ClusterOptions& options) {
  validate(ds);
  if (options.clusters < 1) {
    throw Error(ErrorKind::usage, "cluster count must be at least 1");
  }
  const Dataset<Scalar> prepared = options.normalize ? minmax_normalize(ds) : ds;
  return cluster(pairwise_distances(prepared.points, options.distance), options);
}

}  // namespace kfuse
