#include "curvebump/cli/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "curvebump/error.hpp"

namespace curvebump::cli {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') quoted = !quoted;
    if (c == ',' && !quoted) {
      cells.push_back(trim(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(trim(cell));
  return cells;
}

std::optional<double> parse_number(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  const char* begin = cell.data() + (cell.front() == '+' ? 1 : 0);
  const char* end = cell.data() + cell.size();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

}  // namespace

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split(line);
    if (!table.header && table.rows.empty()) {
      const bool numeric = std::all_of(cells.begin(), cells.end(),
                                       [](const std::string& c) { return parse_number(c).has_value(); });
      width = cells.size();
      if (!numeric) {
        table.header = std::move(cells);
        continue;
      }
    }
    if (cells.size() != width)
      throw Error(ErrorKind::input, "line " + std::to_string(line_no) + ": expected " +
                                        std::to_string(width) + " fields, found " +
                                        std::to_string(cells.size()));
    table.rows.push_back(std::move(cells));
    table.line_numbers.push_back(line_no);
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::input, "cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_csv(text.str());
}

std::vector<int> resolve_columns(const CsvTable& table, const std::string& selection) {
  const std::size_t width =
      table.header ? table.header->size() : (table.rows.empty() ? 0 : table.rows.front().size());
  std::vector<int> columns;
  if (trim(selection).empty()) {
    for (std::size_t c = 0; c < width; ++c) columns.push_back(static_cast<int>(c));
  } else {
    for (const std::string& token : split(selection)) {
      int index = -1;
      if (table.header) {
        const auto it = std::find(table.header->begin(), table.header->end(), token);
        if (it != table.header->end()) index = static_cast<int>(it - table.header->begin());
      }
      if (index < 0) {
        int one_based = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), one_based);
        if (ec != std::errc() || ptr != token.data() + token.size() || one_based < 1 ||
            static_cast<std::size_t>(one_based) > width)
          throw Error(ErrorKind::configuration, "unknown column '" + token + "'");
        index = one_based - 1;
      }
      columns.push_back(index);
    }
  }
  if (columns.empty() || columns.size() > 3)
    throw Error(ErrorKind::configuration,
                "select 1 to 3 columns (found " + std::to_string(columns.size()) + ")");
  return columns;
}

void require_rows(const CsvTable& table) {
  if (table.rows.size() < 2)
    throw Error(ErrorKind::degenerate, "need at least 2 data rows, found " +
                                           std::to_string(table.rows.size()));
}

SampleMatrix to_sample(const CsvTable& table, const std::vector<int>& columns) {
  require_rows(table);
  const int d = static_cast<int>(columns.size());
  std::vector<double> coords;
  coords.reserve(table.rows.size() * columns.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r)
    for (int c : columns) {
      const std::string& cell = table.rows[r][c];
      const std::string where = "line " + std::to_string(table.line_numbers[r]) + ", column " +
                                (table.header ? "'" + (*table.header)[c] + "'" : std::to_string(c + 1));
      const auto v = parse_number(cell);
      if (!v) throw Error(ErrorKind::input, where + ": '" + cell + "' is not a number");
      if (!std::isfinite(*v)) throw Error(ErrorKind::input, where + ": value is not finite");
      coords.push_back(*v);
    }
  return SampleMatrix(table.rows.size(), d, std::move(coords));
}

}  // namespace curvebump::cli
