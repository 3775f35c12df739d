#pragma once

#include "kfuse/dataset.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <unistd.h>

namespace test {

/// A file under the system temp directory, removed on destruction.
class TempFile {
 public:
  explicit TempFile(const std::string& contents = {}, const std::string& suffix = ".csv") {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("kfuse_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + suffix);
    std::ofstream(path_, std::ios::binary) << contents;
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string read() const {
    std::ifstream in(path_, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

 private:
  std::filesystem::path path_;
};

inline kfuse::Matrix<double> uniform_points(std::mt19937_64& rng, kfuse::Index n, kfuse::Index d) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  kfuse::Matrix<double> m(n, d);
  for (kfuse::Index i = 0; i < n; ++i) {
    for (kfuse::Index j = 0; j < d; ++j) m(i, j) = u(rng);
  }
  return m;
}

/// Integer grid coordinates, so that equal distances (ties) are common.
inline kfuse::Matrix<double> grid_points(std::mt19937_64& rng, kfuse::Index n, kfuse::Index d, int span = 4) {
  std::uniform_int_distribution<int> u(0, span);
  kfuse::Matrix<double> m(n, d);
  for (kfuse::Index i = 0; i < n; ++i) {
    for (kfuse::Index j = 0; j < d; ++j) m(i, j) = u(rng);
  }
  return m;
}

/// A few Gaussian blobs with random centers: the kind of data clustering is for.
inline kfuse::Matrix<double> blob_points(std::mt19937_64& rng, kfuse::Index n, kfuse::Index d, int blobs) {
  std::uniform_real_distribution<double> center(0.0, 10.0);
  std::normal_distribution<double> jitter(0.0, 0.6);
  std::vector<std::vector<double>> centers(static_cast<std::size_t>(blobs));
  for (auto& c : centers) {
    for (kfuse::Index j = 0; j < d; ++j) c.push_back(center(rng));
  }
  kfuse::Matrix<double> m(n, d);
  for (kfuse::Index i = 0; i < n; ++i) {
    const auto& c = centers[static_cast<std::size_t>(i % blobs)];
    for (kfuse::Index j = 0; j < d; ++j) m(i, j) = c[static_cast<std::size_t>(j)] + jitter(rng);
  }
  return m;
}

}  // namespace test
