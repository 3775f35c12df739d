#pragma once

#include "kfuse/dataset.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string_view>

namespace kfuse {

enum class Shape { blobs, rings, moons, line };

std::optional<Shape> parse_shape(std::string_view name);

struct GenerateOptions {
  Shape shape = Shape::blobs;
  Index clusters = 3;
  Index points = 300;
  /// Noise scale; negative selects the shape's default.
  double noise = -1;
  std::uint64_t seed = 0;
};

/// Labeled synthetic dataset. The same options always give the same points
/// on every platform: the engine is mt19937_64 and the uniform and normal
/// transforms are done here rather than by the standard distributions.
///
///   blobs  k Gaussian blobs on a circle of radius 3 (default sd 0.35)
///   rings  k concentric rings of radius 1..k, points proportional to radius
///          (default radial sd 0.05)
///   moons  two interleaving half circles, k must be 2 (default sd 0.05)
///   line   1-D points at the triangular numbers 0, 1, 3, 6, ...
Dataset<double> generate(const GenerateOptions& options);

/// Coordinates with six decimals, then the label when present.
void write_csv(std::ostream& out, const Dataset<double>& ds);

}  // namespace kfuse
