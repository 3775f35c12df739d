#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace kfuse {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Per-point ordered neighbor lists; lists[p][r - 1] is the r-th neighbor of p.
using NeighborLists = std::vector<std::vector<Index>>;

enum class ErrorKind {
  usage,
  parse,
  validation,
  empty_dataset,
  degenerate_dataset,
  too_large,
  infeasible_target,
  dimension,
  length_mismatch,
  io,
  internal,
};

const char* to_string(ErrorKind kind) noexcept;

/// Process exit code for an error: 1 usage, 2 data, 3 infeasible target.
int exit_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace kfuse
