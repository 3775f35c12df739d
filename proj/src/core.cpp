#include "kfuse/core.hpp"

namespace kfuse {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::usage: return "usage";
    case ErrorKind::parse: return "parse";
    case ErrorKind::validation: return "validation";
    case ErrorKind::empty_dataset: return "empty-dataset";
    case ErrorKind::degenerate_dataset: return "degenerate-dataset";
    case ErrorKind::too_large: return "too-large";
    case ErrorKind::infeasible_target: return "infeasible-target";
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::length_mismatch: return "length-mismatch";
    case ErrorKind::io: return "io";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::usage: return 1;
    case ErrorKind::infeasible_target: return 3;
    default: return 2;
  }
}

}  // namespace kfuse
