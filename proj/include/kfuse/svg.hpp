#pragma once

#include "kfuse/dataset.hpp"

#include <span>
#include <string>

namespace kfuse {

struct SvgOptions {
  int size = 480;
  int margin = 20;
  double radius = 3.0;
};

/// Scatter plot of a 2-D dataset, one fill per label from a fixed 20-color
/// palette. Output bytes depend only on the inputs.
std::string render_svg(const Dataset<double>& ds, std::span<const int> labels, const SvgOptions& options = {});

}  // namespace kfuse
