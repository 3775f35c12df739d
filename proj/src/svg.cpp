#include "kfuse/svg.hpp"

#include <fmt/format.h>

#include <array>
#include <string_view>

namespace kfuse {
namespace {

constexpr std::array<std::string_view, 20> palette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2",
    "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78", "#98df8a", "#ff9896",
    "#c5b0d5", "#c49c94", "#f7b6d2", "#c7c7c7", "#dbdb8d", "#9edae5",
};

}  // namespace

std::string render_svg(const Dataset<double>& ds, std::span<const int> labels, const SvgOptions& options) {
  if (ds.dims() != 2) {
    throw Error(ErrorKind::dimension, "scatter plots need 2-D data, got d=" + std::to_string(ds.dims()));
  }
  if (static_cast<Index>(labels.size()) != ds.size()) {
    throw Error(ErrorKind::length_mismatch, "label count " + std::to_string(labels.size()) +
                                                " does not match point count " + std::to_string(ds.size()));
  }

  const Eigen::RowVector2d lo = ds.points.colwise().minCoeff();
  const Eigen::RowVector2d hi = ds.points.colwise().maxCoeff();
  const double extent = std::max(hi(0) - lo(0), hi(1) - lo(1));
  const double inner = options.size - 2.0 * options.margin;
  const double scale = extent > 0 ? inner / extent : 0.0;
  // Center the shorter axis inside the square canvas.
  const double pad_x = options.margin + 0.5 * (inner - scale * (hi(0) - lo(0)));
  const double pad_y = options.margin + 0.5 * (inner - scale * (hi(1) - lo(1)));

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n"
      "<rect width=\"{0}\" height=\"{0}\" fill=\"#ffffff\"/>\n",
      options.size);
  for (Index i = 0; i < ds.size(); ++i) {
    const double x = pad_x + scale * (ds.points(i, 0) - lo(0));
    const double y = options.size - (pad_y + scale * (ds.points(i, 1) - lo(1)));
    const int label = labels[static_cast<std::size_t>(i)];
    const auto color = palette[static_cast<std::size_t>(((label % 20) + 20) % 20)];
    svg += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{:.1f}\" fill=\"{}\"/>\n", x, y, options.radius, color);
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace kfuse
