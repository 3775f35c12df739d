#pragma once

#include "kfuse/core.hpp"
#include "kfuse/dataset.hpp"
#include "kfuse/neighbors.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace kfuse {

template <typename Scalar = double>
struct DensityProfile {
  Vector<Scalar> rho;
  /// rep[p]: densest member of {p} and its neighbors.
  std::vector<Index> rep;
  /// Local density peaks (rep[p] == p), ascending.
  std::vector<Index> peaks;

  Index size() const { return rho.size(); }
};

/// rho[p] = nb[p] / (sum of distances from p to its neighbors in `lists`).
///
/// When every neighbor coincides with p the sum is replaced by the smallest
/// positive normal Scalar, and the quotient saturates at the largest finite
/// Scalar, so coincident groups rank as maximally dense.
template <typename Scalar>
Vector<Scalar> compute_density(const std::vector<Index>& nb, const NeighborLists& lists,
                               const DistanceMatrix<Scalar>& dm) {
  const Index n = dm.size();
  Vector<Scalar> rho(n);
  for (Index p = 0; p < n; ++p) {
    Scalar sum = 0;
    for (Index q : lists[static_cast<std::size_t>(p)]) sum += dm(p, q);
    const auto count = static_cast<Scalar>(nb[static_cast<std::size_t>(p)]);
    if (sum > Scalar(0)) {
      rho(p) = count / sum;
    } else {
      rho(p) = std::min(count / std::numeric_limits<Scalar>::min(), std::numeric_limits<Scalar>::max());
    }
  }
  return rho;
}

template <typename Scalar>
Vector<Scalar> compute_density(const NeighborIndex& index, const DistanceMatrix<Scalar>& dm,
                               KMode mode = KMode::lambda) {
  return compute_density(index.nb, density_neighbors(index, dm, mode), dm);
}

/// Representatives and peaks. Ties in density go to the lowest point index.
template <typename Scalar>
DensityProfile<Scalar> compute_representatives(const NeighborLists& lists, Vector<Scalar> rho) {
  DensityProfile<Scalar> profile;
  const Index n = rho.size();
  profile.rep.resize(static_cast<std::size_t>(n));
  for (Index p = 0; p < n; ++p) {
    Index best = p;
    for (Index q : lists[static_cast<std::size_t>(p)]) {
      if (rho(q) > rho(best) || (rho(q) == rho(best) && q < best)) best = q;
    }
    profile.rep[static_cast<std::size_t>(p)] = best;
    if (best == p) profile.peaks.push_back(p);
  }
  profile.rho = std::move(rho);
  return profile;
}

/// Density, representatives and peaks in one pass over the configured neighborhoods.
template <typename Scalar>
DensityProfile<Scalar> compute_profile(const NeighborIndex& index, const DistanceMatrix<Scalar>& dm,
                                       KMode mode = KMode::lambda) {
  const NeighborLists lists = density_neighbors(index, dm, mode);
  return compute_representatives(lists, compute_density(index.nb, lists, dm));
}

}  // namespace kfuse
