#include "kfuse/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

namespace kfuse {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    const auto len = comma == std::string_view::npos ? std::string_view::npos : comma - start;
    fields.emplace_back(trim(line.substr(start, len)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
  return in;
}

}  // namespace

std::vector<int> read_labels(const std::filesystem::path& path) {
  auto in = open(path);
  std::vector<int> labels;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    const auto text = trim(line);
    if (text.empty()) continue;
    int value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size()) {
      throw Error(ErrorKind::parse, path.string() + ":" + std::to_string(line_no) + ": not an integer label: '" +
                                        std::string(text) + "'");
    }
    labels.push_back(value);
  }
  return labels;
}

void write_labels(std::ostream& out, std::span<const int> labels) {
  for (int label : labels) out << label << '\n';
}

void write_labels(const std::filesystem::path& path, std::span<const int> labels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  write_labels(out, labels);
}

RankTable read_score_table(const std::filesystem::path& path) {
  auto in = open(path);
  std::string line;
  std::vector<std::string> header;
  std::vector<std::string> datasets;
  std::vector<std::vector<double>> rows;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    if (header.empty()) {
      header = std::move(fields);
      continue;
    }
    if (fields.size() < 2) {
      throw Error(ErrorKind::parse, path.string() + ":" + std::to_string(line_no) + ": row has no scores");
    }
    std::vector<double> scores;
    for (std::size_t k = 1; k < fields.size(); ++k) {
      double value = 0;
      const auto& f = fields[k];
      const auto [end, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
      if (f.empty() || ec != std::errc() || end != f.data() + f.size() || !std::isfinite(value)) {
        throw Error(ErrorKind::parse, path.string() + ":" + std::to_string(line_no) + ": score " +
                                          std::to_string(k) + " is not a finite number: '" + f + "'");
      }
      scores.push_back(value);
    }
    if (!rows.empty() && scores.size() != rows.front().size()) {
      throw Error(ErrorKind::parse, path.string() + ":" + std::to_string(line_no) + ": expected " +
                                        std::to_string(rows.front().size()) + " scores, found " +
                                        std::to_string(scores.size()));
    }
    datasets.push_back(fields.front());
    rows.push_back(std::move(scores));
  }
  if (rows.empty()) throw Error(ErrorKind::empty_dataset, path.string() + ": no score rows");

  const std::size_t m = rows.front().size();
  if (header.size() == m + 1) {
    header.erase(header.begin());
  } else if (header.size() != m) {
    throw Error(ErrorKind::parse, path.string() + ": header names " + std::to_string(header.size()) +
                                      " columns but rows hold " + std::to_string(m) + " scores");
  }
  Eigen::MatrixXd scores(static_cast<Index>(rows.size()), static_cast<Index>(m));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < m; ++c) scores(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
  }
  return rank_scores(std::move(scores), std::move(datasets), std::move(header));
}

}  // namespace kfuse
