#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "curvebump/sample.hpp"

namespace curvebump::cli {

/// Comma-separated text table. A first row that does not parse as numbers is
/// taken as the header.
struct CsvTable {
  std::optional<std::vector<std::string>> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line of each row
};

CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::filesystem::path& path);

/// Throws Error(degenerate) unless the table has at least two data rows.
void require_rows(const CsvTable& table);

/// Column selection: names (matched against the header) or 1-based indices,
/// separated by commas. Empty selects every column.
std::vector<int> resolve_columns(const CsvTable& table, const std::string& selection);

/// Throws Error(input) naming the line and column of the first bad cell, and
/// Error(degenerate) when fewer than two rows remain.
SampleMatrix to_sample(const CsvTable& table, const std::vector<int>& columns);

}  // namespace curvebump::cli
