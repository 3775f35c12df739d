#pragma once

#include "kfuse/core.hpp"
#include "kfuse/dataset.hpp"
#include "kfuse/partition.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

namespace kfuse {

/// Scores of one candidate merge between sub-clusters i < j (0-based ids;
/// sub-cluster c carries label c + 1).
template <typename Scalar = double>
struct FusionPair {
  Index i = 0;
  Index j = 0;
  Scalar fi = 0;
  Scalar con = 0;
  Scalar sim = 0;
  Index ads = 0;
  Scalar dc = 0;
};

template <typename Scalar = double>
struct FusionPlan {
  /// All pairs, FI descending, ties by (i, j) ascending.
  std::vector<FusionPair<Scalar>> pairs;
  Index num_clusters = 0;
  Index target = 0;
};

/// Union-find with path compression and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(Index count) : parent_(static_cast<std::size_t>(count)), size_(parent_.size(), 1) {
    std::iota(parent_.begin(), parent_.end(), Index{0});
  }

  Index find(Index x) {
    Index root = x;
    while (parent_[static_cast<std::size_t>(root)] != root) root = parent_[static_cast<std::size_t>(root)];
    while (parent_[static_cast<std::size_t>(x)] != root) {
      x = std::exchange(parent_[static_cast<std::size_t>(x)], root);
    }
    return root;
  }

  /// False if a and b were already in the same set.
  bool unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[static_cast<std::size_t>(a)] < size_[static_cast<std::size_t>(b)]) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    size_[static_cast<std::size_t>(a)] += size_[static_cast<std::size_t>(b)];
    return true;
  }

 private:
  std::vector<Index> parent_;
  std::vector<Index> size_;
};

/// Sub-cluster c together with every member's neighbors, sorted ascending.
inline std::vector<Index> augment(const NeighborLists& clusters, const NeighborLists& lists, Index c) {
  std::vector<Index> set = clusters[static_cast<std::size_t>(c)];
  for (Index p : clusters[static_cast<std::size_t>(c)]) {
    const auto& list = lists[static_cast<std::size_t>(p)];
    set.insert(set.end(), list.begin(), list.end());
  }
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

template <typename Scalar>
std::vector<Index> augment(const SubClustering<Scalar>& sc, const NeighborLists& lists, Index c) {
  return augment(sc.clusters, lists, c);
}

/// Adjacent samples: the intersection of two sorted augmented sets.
inline std::vector<Index> adjacent_samples(std::span<const Index> a, std::span<const Index> b) {
  std::vector<Index> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return common;
}

inline Index adjacent_count(std::span<const Index> a, std::span<const Index> b) {
  Index count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

/// Single-link distance: the closest pair between clusters i and j.
template <typename Scalar>
Scalar inter_cluster_distance(const NeighborLists& clusters, const DistanceMatrix<Scalar>& dm, Index i, Index j) {
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (Index p : clusters[static_cast<std::size_t>(i)]) {
    for (Index q : clusters[static_cast<std::size_t>(j)]) best = std::min(best, dm(p, q));
  }
  return best;
}

template <typename Scalar>
Scalar inter_cluster_distance(const SubClustering<Scalar>& sc, const DistanceMatrix<Scalar>& dm, Index i, Index j) {
  return inter_cluster_distance(sc.clusters, dm, i, j);
}

/// (ads + 1) * exp(-dc) / min(size_i, size_j)
template <typename Scalar>
Scalar boundary_connectivity(Index ads, Scalar dc, Index size_i, Index size_j) {
  return static_cast<Scalar>(ads + 1) * std::exp(-dc) / static_cast<Scalar>(std::min(size_i, size_j));
}

namespace detail {

// min/max ratio of non-negative values; 0/0 counts as equal, and infinities
// (saturated densities) compare equal to each other and dwarf anything finite.
template <typename Scalar>
Scalar balance(Scalar a, Scalar b) {
  const Scalar lo = std::min(a, b);
  const Scalar hi = std::max(a, b);
  if (hi == Scalar(0)) return Scalar(1);
  if (std::isinf(hi)) return std::isinf(lo) ? Scalar(1) : Scalar(0);
  return lo / hi;
}

}  // namespace detail

/// Ratio of mean densities times (1 + ratio of density variances), in (0, 2].
template <typename Scalar>
Scalar density_similarity(const ClusterStats<Scalar>& a, const ClusterStats<Scalar>& b) {
  if (a.mean == Scalar(0) && b.mean == Scalar(0)) {
    throw Error(ErrorKind::internal, "density similarity is undefined for two zero-density clusters");
  }
  return detail::balance(a.mean, b.mean) * (Scalar(1) + detail::balance(a.variance, b.variance));
}

/// Scores every sub-cluster pair by FI = Con * Sim and orders them for merging.
/// `lists` are the lambda-neighbor lists used for the augmented sets.
template <typename Scalar>
FusionPlan<Scalar> build_fusion_plan(const SubClustering<Scalar>& sc, const NeighborLists& lists,
                                     const DistanceMatrix<Scalar>& dm, Index target) {
  const Index m = sc.num_clusters();
  if (target < 1 || target > m) {
    throw Error(ErrorKind::infeasible_target, "requested " + std::to_string(target) +
                                                  " clusters but the partition has m=" +
                                                  std::to_string(m) + " sub-clusters");
  }
  std::vector<std::vector<Index>> augmented;
  augmented.reserve(static_cast<std::size_t>(m));
  for (Index c = 0; c < m; ++c) augmented.push_back(augment(sc.clusters, lists, c));

  FusionPlan<Scalar> plan;
  plan.num_clusters = m;
  plan.target = target;
  plan.pairs.reserve(static_cast<std::size_t>(m * (m - 1) / 2));
  for (Index i = 0; i + 1 < m; ++i) {
    for (Index j = i + 1; j < m; ++j) {
      FusionPair<Scalar> pair;
      pair.i = i;
      pair.j = j;
      pair.ads = adjacent_count(augmented[static_cast<std::size_t>(i)], augmented[static_cast<std::size_t>(j)]);
      pair.dc = inter_cluster_distance(sc.clusters, dm, i, j);
      pair.con = boundary_connectivity(pair.ads, pair.dc,
                                       static_cast<Index>(sc.clusters[static_cast<std::size_t>(i)].size()),
                                       static_cast<Index>(sc.clusters[static_cast<std::size_t>(j)].size()));
      pair.sim = density_similarity(sc.stats[static_cast<std::size_t>(i)], sc.stats[static_cast<std::size_t>(j)]);
      pair.fi = pair.con * pair.sim;
      plan.pairs.push_back(pair);
    }
  }
  std::stable_sort(plan.pairs.begin(), plan.pairs.end(),
                   [](const FusionPair<Scalar>& a, const FusionPair<Scalar>& b) { return a.fi > b.fi; });
  return plan;
}

/// Drains the plan, uniting sub-clusters until `plan.target` remain. Returns
/// per-point labels 1..target, numbered by first appearance in point order.
template <typename Scalar>
std::vector<int> fuse(const SubClustering<Scalar>& sc, const FusionPlan<Scalar>& plan) {
  const Index m = sc.num_clusters();
  DisjointSets sets(m);
  Index live = m;
  for (const auto& pair : plan.pairs) {
    if (live <= plan.target) break;
    if (sets.unite(pair.i, pair.j)) --live;
  }
  if (live != plan.target) {
    throw Error(ErrorKind::internal, "fusion queue exhausted with " + std::to_string(live) +
                                         " clusters left, target " + std::to_string(plan.target));
  }

  std::vector<int> relabel(static_cast<std::size_t>(m), 0);
  std::vector<int> labels(sc.labels.size(), 0);
  int next = 0;
  for (std::size_t p = 0; p < sc.labels.size(); ++p) {
    if (sc.labels[p] <= 0) {
      throw Error(ErrorKind::internal, "fusion received unassigned point " + std::to_string(p));
    }
    const auto root = static_cast<std::size_t>(sets.find(sc.labels[p] - 1));
    if (relabel[root] == 0) relabel[root] = ++next;
    labels[p] = relabel[root];
  }
  return labels;
}

}  // namespace kfuse
