#pragma once

#include "kfuse/core.hpp"
#include "kfuse/dataset.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace kfuse {

/// Result of the natural-neighbor search.
struct NeighborIndex {
  /// Natural characteristic: the search radius at which the search stopped.
  Index lambda = 0;
  /// nn[p] holds the lambda nearest neighbors of p, closest first.
  NeighborLists nn;
  /// nb[p] is the number of points that list p among their lambda neighbors.
  std::vector<Index> nb;
  /// Count of points with no reverse neighbor after each round.
  std::vector<Index> num_trace;

  Index size() const { return static_cast<Index>(nn.size()); }
};

/// Which neighborhood size feeds density, representatives and sub-cluster growth.
enum class KMode { lambda, max_nb };

/// The first `count` neighbors of p, ordered by (distance, index), p excluded.
template <typename Scalar>
std::vector<Index> nearest_neighbors(const DistanceMatrix<Scalar>& dm, Index p, Index count) {
  const Index n = dm.size();
  count = std::clamp<Index>(count, 0, n - 1);
  std::vector<Index> order;
  order.reserve(static_cast<std::size_t>(n - 1));
  for (Index q = 0; q < n; ++q) {
    if (q != p) order.push_back(q);
  }
  const auto closer = [&](Index a, Index b) {
    const Scalar da = dm(p, a);
    const Scalar db = dm(p, b);
    return da < db || (da == db && a < b);
  };
  std::partial_sort(order.begin(), order.begin() + count, order.end(), closer);
  order.resize(static_cast<std::size_t>(count));
  return order;
}

template <typename Scalar>
NeighborLists neighbor_lists(const DistanceMatrix<Scalar>& dm, Index k) {
  NeighborLists lists(static_cast<std::size_t>(dm.size()));
  for (Index p = 0; p < dm.size(); ++p) {
    lists[static_cast<std::size_t>(p)] = nearest_neighbors(dm, p, k);
  }
  return lists;
}

/// nb recomputed from neighbor lists: how many lists contain each point.
inline std::vector<Index> reverse_counts(const NeighborLists& lists) {
  std::vector<Index> nb(lists.size(), 0);
  for (const auto& list : lists) {
    for (Index q : list) ++nb[static_cast<std::size_t>(q)];
  }
  return nb;
}

/// Parameter-free natural-neighbor search. Round r hands every point's r-th
/// nearest neighbor one more reverse neighbor; the search stops once the
/// number of points without reverse neighbors stops changing, reaches zero,
/// or r reaches n - 1.
template <typename Scalar>
NeighborIndex nan_search(const DistanceMatrix<Scalar>& dm) {
  const Index n = dm.size();
  if (n < 2) {
    throw Error(ErrorKind::degenerate_dataset,
                "natural-neighbor search needs at least 2 points, got " + std::to_string(n));
  }

  // Sorted prefixes are grown on demand; lambda is usually far below n.
  Index prefix = std::min<Index>(n - 1, 16);
  NeighborLists lists = neighbor_lists(dm, prefix);

  NeighborIndex index;
  index.nb.assign(static_cast<std::size_t>(n), 0);
  Index previous = n;
  for (Index r = 1;; ++r) {
    if (r > prefix) {
      prefix = std::min<Index>(n - 1, 2 * prefix);
      lists = neighbor_lists(dm, prefix);
    }
    for (Index p = 0; p < n; ++p) {
      const Index q = lists[static_cast<std::size_t>(p)][static_cast<std::size_t>(r - 1)];
      ++index.nb[static_cast<std::size_t>(q)];
    }
    const auto orphans =
        static_cast<Index>(std::count(index.nb.begin(), index.nb.end(), Index{0}));
    index.num_trace.push_back(orphans);
    if (orphans == previous || orphans == 0 || r == n - 1) {
      index.lambda = r;
      break;
    }
    previous = orphans;
  }

  for (auto& list : lists) list.resize(static_cast<std::size_t>(index.lambda));
  index.nn = std::move(lists);
  return index;
}

/// Mutual lambda-neighbors of p, in p's neighbor order.
std::vector<Index> natural_neighbors(const NeighborIndex& index, Index p);

/// Neighborhood size for the given mode: lambda, or the largest reverse count.
Index neighborhood_size(const NeighborIndex& index, KMode mode);

/// The neighbor lists used downstream of the search: the search's own lists
/// in lambda mode, freshly sorted max(nb)-lists otherwise.
template <typename Scalar>
NeighborLists density_neighbors(const NeighborIndex& index, const DistanceMatrix<Scalar>& dm,
                                KMode mode) {
  if (mode == KMode::lambda) return index.nn;
  return neighbor_lists(dm, neighborhood_size(index, mode));
}

}  // namespace kfuse
