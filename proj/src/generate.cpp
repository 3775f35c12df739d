#include "kfuse/generate.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>
#include <random>

namespace kfuse {
namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  // [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

std::vector<Index> split_counts(Index total, const std::vector<double>& weights) {
  double sum = 0;
  for (double w : weights) sum += w;
  std::vector<Index> counts;
  Index assigned = 0;
  for (std::size_t c = 0; c < weights.size(); ++c) {
    const Index share = c + 1 == weights.size()
                            ? total - assigned
                            : static_cast<Index>(std::floor(static_cast<double>(total) * weights[c] / sum));
    counts.push_back(share);
    assigned += share;
  }
  return counts;
}

}  // namespace

std::optional<Shape> parse_shape(std::string_view name) {
  if (name == "blobs") return Shape::blobs;
  if (name == "rings") return Shape::rings;
  if (name == "moons") return Shape::moons;
  if (name == "line") return Shape::line;
  return std::nullopt;
}

Dataset<double> generate(const GenerateOptions& options) {
  const Index n = options.points;
  const Index k = options.clusters;
  if (n < 1) throw Error(ErrorKind::validation, "point count must be at least 1");
  if (options.shape != Shape::line && (k < 1 || k > n)) {
    throw Error(ErrorKind::validation, "cluster count must be in [1, " + std::to_string(n) + "], got " +
                                           std::to_string(k));
  }
  if (options.shape == Shape::moons && k != 2) {
    throw Error(ErrorKind::validation, "moons always has 2 clusters, got " + std::to_string(k));
  }
  if (!std::isfinite(options.noise)) throw Error(ErrorKind::validation, "noise must be finite");

  Sampler rng(options.seed);
  Dataset<double> ds;
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(n));

  switch (options.shape) {
    case Shape::blobs: {
      const double sd = options.noise < 0 ? 0.35 : options.noise;
      ds.points.resize(n, 2);
      const auto counts = split_counts(n, std::vector<double>(static_cast<std::size_t>(k), 1.0));
      Index row = 0;
      for (Index c = 0; c < k; ++c) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(c) / static_cast<double>(k);
        const double radius = k == 1 ? 0.0 : 3.0;
        for (Index i = 0; i < counts[static_cast<std::size_t>(c)]; ++i, ++row) {
          ds.points(row, 0) = radius * std::cos(angle) + sd * rng.normal();
          ds.points(row, 1) = radius * std::sin(angle) + sd * rng.normal();
          labels.push_back(static_cast<int>(c));
        }
      }
      break;
    }
    case Shape::rings: {
      const double sd = options.noise < 0 ? 0.05 : options.noise;
      ds.points.resize(n, 2);
      std::vector<double> radii;
      for (Index c = 0; c < k; ++c) radii.push_back(static_cast<double>(c + 1));
      const auto counts = split_counts(n, radii);
      Index row = 0;
      for (Index c = 0; c < k; ++c) {
        for (Index i = 0; i < counts[static_cast<std::size_t>(c)]; ++i, ++row) {
          const double angle = 2.0 * std::numbers::pi * rng.uniform();
          const double r = radii[static_cast<std::size_t>(c)] + sd * rng.normal();
          ds.points(row, 0) = r * std::cos(angle);
          ds.points(row, 1) = r * std::sin(angle);
          labels.push_back(static_cast<int>(c));
        }
      }
      break;
    }
    case Shape::moons: {
      const double sd = options.noise < 0 ? 0.05 : options.noise;
      ds.points.resize(n, 2);
      const Index upper = n - n / 2;
      for (Index row = 0; row < n; ++row) {
        const double t = std::numbers::pi * rng.uniform();
        const bool first = row < upper;
        ds.points(row, 0) = (first ? std::cos(t) : 1.0 - std::cos(t)) + sd * rng.normal();
        ds.points(row, 1) = (first ? std::sin(t) : 0.5 - std::sin(t)) + sd * rng.normal();
        labels.push_back(first ? 0 : 1);
      }
      break;
    }
    case Shape::line: {
      ds.points.resize(n, 1);
      for (Index i = 0; i < n; ++i) {
        ds.points(i, 0) = static_cast<double>(i * (i + 1) / 2);
        labels.push_back(0);
      }
      break;
    }
  }
  ds.labels = std::move(labels);
  return ds;
}

void write_csv(std::ostream& out, const Dataset<double>& ds) {
  std::string line;
  for (Index i = 0; i < ds.size(); ++i) {
    line.clear();
    for (Index j = 0; j < ds.dims(); ++j) {
      if (j > 0) line += ',';
      line += fmt::format("{:.6f}", ds.points(i, j));
    }
    if (ds.labels) line += fmt::format(",{}", (*ds.labels)[static_cast<std::size_t>(i)]);
    line += '\n';
    out << line;
  }
}

}  // namespace kfuse
