#pragma once

#include "kfuse/core.hpp"
#include "kfuse/metrics.hpp"

#include <filesystem>
#include <ostream>
#include <span>
#include <vector>

namespace kfuse {

/// Assignment files: one integer per line, LF-terminated.
std::vector<int> read_labels(const std::filesystem::path& path);
void write_labels(std::ostream& out, std::span<const int> labels);
void write_labels(const std::filesystem::path& path, std::span<const int> labels);

/// Score matrix: a header row of algorithm names, then one row per dataset
/// whose first field is the dataset name. The header may carry a leading
/// corner cell above the dataset-name column.
RankTable read_score_table(const std::filesystem::path& path);

}  // namespace kfuse
