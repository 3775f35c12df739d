#include "kfuse/dataset.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <string_view>

namespace kfuse {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::optional<double> parse_number(std::string_view field) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || end != field.data() + field.size() || field.empty()) return std::nullopt;
  return value;
}

}  // namespace

Dataset<double> load_csv(const std::filesystem::path& path, bool has_labels) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());

  std::vector<double> values;
  std::vector<int> labels;
  std::map<std::string, int, std::less<>> label_codes;
  Index columns = -1;
  Index rows = 0;
  bool first_row = true;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    const auto fields = split(text);
    if (first_row) {
      first_row = false;
      if (!parse_number(fields.front())) continue;  // header row
    }
    const auto width = static_cast<Index>(fields.size());
    if (columns < 0) {
      columns = width;
      if (has_labels && columns < 2) {
        throw Error(ErrorKind::parse, path.string() + ":" + std::to_string(line_no) +
                                          ": a labeled row needs at least one coordinate");
      }
    } else if (width != columns) {
      throw Error(ErrorKind::parse, path.string() + ":" + std::to_string(line_no) + ": expected " +
                                        std::to_string(columns) + " fields, found " + std::to_string(width));
    }
    const Index coords = has_labels ? columns - 1 : columns;
    for (Index j = 0; j < coords; ++j) {
      const auto field = fields[static_cast<std::size_t>(j)];
      const auto value = parse_number(field);
      if (!value) {
        throw Error(ErrorKind::parse, path.string() + ":" + std::to_string(line_no) + ": field " +
                                          std::to_string(j + 1) + " is not a number: '" +
                                          std::string(field) + "'");
      }
      if (!std::isfinite(*value)) {
        throw Error(ErrorKind::validation, path.string() + ":" + std::to_string(line_no) + ": field " +
                                               std::to_string(j + 1) + " is not finite");
      }
      values.push_back(*value);
    }
    if (has_labels) {
      const auto token = fields.back();
      auto it = label_codes.find(token);
      if (it == label_codes.end()) {
        it = label_codes.emplace(std::string(token), static_cast<int>(label_codes.size())).first;
      }
      labels.push_back(it->second);
    }
    ++rows;
  }
  if (rows == 0) throw Error(ErrorKind::empty_dataset, path.string() + ": no data rows");

  Dataset<double> ds;
  const Index dims = has_labels ? columns - 1 : columns;
  ds.points = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      values.data(), rows, dims);
  if (has_labels) ds.labels = std::move(labels);
  ds.name = path.stem().string();
  return ds;
}

}  // namespace kfuse
