#pragma once

#include "kfuse/core.hpp"
#include "kfuse/dataset.hpp"
#include "kfuse/density.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <vector>

namespace kfuse {

template <typename Scalar = double>
struct ClusterStats {
  Index size = 0;
  Scalar mean = 0;
  /// Population variance of member densities.
  Scalar variance = 0;
};

/// Initial partition. labels[p] == 0 marks an unassigned point, otherwise
/// labels[p] == c + 1 for p in clusters[c].
template <typename Scalar = double>
struct SubClustering {
  std::vector<int> labels;
  NeighborLists clusters;
  /// Density statistics over the members present before outlier assignment.
  std::vector<ClusterStats<Scalar>> stats;

  Index num_clusters() const { return static_cast<Index>(clusters.size()); }
  Index size() const { return static_cast<Index>(labels.size()); }
};

/// Which labeled points keep growing a sub-cluster.
enum class EnqueueMode {
  /// Points that are the representative of some point.
  rep_image,
  /// Local density peaks only.
  peaks_only,
};

/// Member lists (ascending) for labels 1..m; label 0 is skipped.
inline NeighborLists members_by_label(const std::vector<int>& labels, int num_clusters) {
  NeighborLists clusters(static_cast<std::size_t>(num_clusters));
  for (std::size_t p = 0; p < labels.size(); ++p) {
    if (labels[p] > 0) clusters[static_cast<std::size_t>(labels[p] - 1)].push_back(static_cast<Index>(p));
  }
  return clusters;
}

template <typename Scalar>
std::vector<ClusterStats<Scalar>> compute_cluster_stats(const NeighborLists& clusters,
                                                        const Vector<Scalar>& rho) {
  std::vector<ClusterStats<Scalar>> stats;
  stats.reserve(clusters.size());
  for (const auto& members : clusters) {
    ClusterStats<Scalar> s;
    s.size = static_cast<Index>(members.size());
    // Running mean: saturated densities must not overflow a plain sum.
    Index seen = 0;
    for (Index p : members) {
      ++seen;
      s.mean += (rho(p) - s.mean) / static_cast<Scalar>(seen);
    }
    for (Index p : members) {
      const Scalar dev = rho(p) - s.mean;
      s.variance += dev * dev;
    }
    if (s.size > 0) s.variance /= static_cast<Scalar>(s.size);
    stats.push_back(s);
  }
  return stats;
}

template <typename Scalar>
std::vector<ClusterStats<Scalar>> compute_cluster_stats(const SubClustering<Scalar>& sc,
                                                        const DensityProfile<Scalar>& profile) {
  return compute_cluster_stats(sc.clusters, profile.rho);
}

/// Grows sub-clusters from local density peaks (ascending index order) by
/// breadth-first search over mutual neighbors. A newly labeled point is
/// expanded further only if it is eligible under `mode`. Points never
/// reached stay at label 0. Cluster statistics are filled in from the
/// labeled members.
template <typename Scalar>
SubClustering<Scalar> divide_subclusters(const NeighborLists& lists, const DensityProfile<Scalar>& profile,
                                         EnqueueMode mode = EnqueueMode::rep_image) {
  const auto n = static_cast<std::size_t>(profile.size());
  std::vector<char> expandable(n, 0);
  for (std::size_t p = 0; p < n; ++p) {
    const auto r = static_cast<std::size_t>(profile.rep[p]);
    if (mode == EnqueueMode::rep_image || r == p) expandable[r] = 1;
  }
  const auto lists_contain = [&](Index owner, Index x) {
    const auto& list = lists[static_cast<std::size_t>(owner)];
    return std::find(list.begin(), list.end(), x) != list.end();
  };

  SubClustering<Scalar> sc;
  sc.labels.assign(n, 0);
  int count = 0;
  std::deque<Index> queue;
  for (Index seed : profile.peaks) {
    if (sc.labels[static_cast<std::size_t>(seed)] != 0) continue;
    sc.labels[static_cast<std::size_t>(seed)] = ++count;
    queue.push_back(seed);
    while (!queue.empty()) {
      const Index head = queue.front();
      queue.pop_front();
      const int label = sc.labels[static_cast<std::size_t>(head)];
      for (Index next : lists[static_cast<std::size_t>(head)]) {
        auto& slot = sc.labels[static_cast<std::size_t>(next)];
        if (slot != 0 || !lists_contain(next, head)) continue;
        slot = label;
        if (expandable[static_cast<std::size_t>(next)]) queue.push_back(next);
      }
    }
  }
  sc.clusters = members_by_label(sc.labels, count);
  sc.stats = compute_cluster_stats(sc.clusters, profile.rho);
  return sc;
}

/// Gives every unlabeled point the label of its nearest labeled point.
/// Points are taken in ascending order of that distance, and each assigned
/// point immediately counts as labeled for the rest, so chains of outliers
/// resolve outward from the clusters. Distance ties go to the lowest index.
/// Existing labels and cluster statistics are left untouched.
template <typename Scalar>
SubClustering<Scalar> assign_outliers(const SubClustering<Scalar>& sc, const DistanceMatrix<Scalar>& dm) {
  SubClustering<Scalar> out = sc;
  const Index n = sc.size();
  std::vector<Index> pending;
  for (Index p = 0; p < n; ++p) {
    if (sc.labels[static_cast<std::size_t>(p)] == 0) pending.push_back(p);
  }
  if (pending.empty()) return out;
  if (static_cast<Index>(pending.size()) == n) {
    throw Error(ErrorKind::internal, "outlier assignment found no labeled point");
  }

  constexpr Index none = -1;
  std::vector<Scalar> best(pending.size(), std::numeric_limits<Scalar>::infinity());
  std::vector<Index> source(pending.size(), none);
  const auto offer = [&](std::size_t slot, Index candidate) {
    const Scalar d = dm(pending[slot], candidate);
    if (d < best[slot] || (d == best[slot] && candidate < source[slot])) {
      best[slot] = d;
      source[slot] = candidate;
    }
  };
  for (std::size_t s = 0; s < pending.size(); ++s) {
    for (Index p = 0; p < n; ++p) {
      if (sc.labels[static_cast<std::size_t>(p)] != 0) offer(s, p);
    }
  }

  std::vector<char> done(pending.size(), 0);
  for (std::size_t step = 0; step < pending.size(); ++step) {
    std::size_t pick = pending.size();
    for (std::size_t s = 0; s < pending.size(); ++s) {
      if (done[s]) continue;
      if (pick == pending.size() || best[s] < best[pick]) pick = s;
    }
    done[pick] = 1;
    const Index point = pending[pick];
    out.labels[static_cast<std::size_t>(point)] = out.labels[static_cast<std::size_t>(source[pick])];
    for (std::size_t s = 0; s < pending.size(); ++s) {
      if (!done[s]) offer(s, point);
    }
  }
  out.clusters = members_by_label(out.labels, static_cast<int>(sc.num_clusters()));
  return out;
}

}  // namespace kfuse
