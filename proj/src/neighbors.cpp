#include "kfuse/neighbors.hpp"

namespace kfuse {

std::vector<Index> natural_neighbors(const NeighborIndex& index, Index p) {
  std::vector<Index> mutual;
  for (Index x : index.nn[static_cast<std::size_t>(p)]) {
    const auto& back = index.nn[static_cast<std::size_t>(x)];
    if (std::find(back.begin(), back.end(), p) != back.end()) mutual.push_back(x);
  }
  return mutual;
}

Index neighborhood_size(const NeighborIndex& index, KMode mode) {
  if (mode == KMode::lambda || index.nb.empty()) return index.lambda;
  const Index largest = *std::max_element(index.nb.begin(), index.nb.end());
  return std::clamp<Index>(largest, 1, index.size() - 1);
}

}  // namespace kfuse
