#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arstat/time_series.hpp"

namespace arstat {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class HeaderMode { automatic, yes, no };

struct LoadOptions {
  std::string value_column;          // header name or 0-based index; empty = last numeric column
  HeaderMode header = HeaderMode::automatic;
};

struct ParseDiagnostics {
  int rows_parsed = 0;
  int rows_skipped = 0;
  bool header_detected = false;
  int value_column = -1;
};

struct LoadResult {
  TimeSeries series;
  ParseDiagnostics diagnostics;
};

namespace detail {

// One CSV record: comma separated, double quotes optional, "" escapes a quote.
inline std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (c != '\r') {
      cell += c;
    }
  }
  cells.push_back(cell);
  return cells;
}

inline std::optional<double> parse_double(const std::string& cell) {
  std::size_t begin = cell.find_first_not_of(" \t");
  if (begin == std::string::npos) return std::nullopt;
  const std::size_t end = cell.find_last_not_of(" \t") + 1;
  double value = 0.0;
  const char* first = cell.data() + begin;
  const char* last = cell.data() + end;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

inline bool is_index(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace detail

// Loads one numeric column of a CSV file in file order. Rows whose selected
// cell does not parse as a finite number are skipped and counted.
inline LoadResult load_csv(const std::string& path, const LoadOptions& options = {}) {
  std::ifstream in(path);
  if (!in) throw IoError("load_csv: cannot open '" + path + "'");

  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    rows.push_back(detail::split_csv_row(line));
  }
  if (rows.empty()) throw IoError("load_csv: '" + path + "' holds no data");

  LoadResult out;
  std::vector<std::string> header;

  // Resolve the value column: explicit index, header name, or last numeric column.
  int column = -1;
  bool column_by_name = false;
  if (!options.value_column.empty() && detail::is_index(options.value_column)) {
    column = std::stoi(options.value_column);
  } else if (!options.value_column.empty()) {
    column_by_name = true;
  }

  std::size_t first_data = 0;
  const auto looks_like_header = [&](const std::vector<std::string>& row) {
    for (const auto& cell : row)
      if (!detail::parse_double(cell)) return true;
    return false;
  };
  bool has_header = false;
  switch (options.header) {
    case HeaderMode::yes: has_header = true; break;
    case HeaderMode::no: has_header = false; break;
    case HeaderMode::automatic: has_header = looks_like_header(rows[0]); break;
  }
  if (has_header) {
    header = rows[0];
    first_data = 1;
    out.diagnostics.header_detected = true;
  }
  if (first_data >= rows.size()) throw IoError("load_csv: no data rows after header");

  if (column_by_name) {
    if (header.empty())
      throw std::invalid_argument("load_csv: column '" + options.value_column +
                                  "' requested but the file has no header");
    int found = -1;
    for (std::size_t j = 0; j < header.size(); ++j) {
      if (header[j] == options.value_column) {
        if (found >= 0)
          throw std::invalid_argument("load_csv: column name '" + options.value_column +
                                      "' is ambiguous");
        found = static_cast<int>(j);
      }
    }
    if (found < 0)
      throw std::invalid_argument("load_csv: no column named '" + options.value_column + "'");
    column = found;
  }
  if (column < 0) {
    // Default: rightmost column that parses numerically on the first parsable data row.
    for (std::size_t r = first_data; r < rows.size() && column < 0; ++r) {
      for (int j = static_cast<int>(rows[r].size()) - 1; j >= 0; --j) {
        if (detail::parse_double(rows[r][j])) {
          column = j;
          break;
        }
      }
    }
    if (column < 0) throw IoError("load_csv: no numeric data in '" + path + "'");
  }
  out.diagnostics.value_column = column;

  for (std::size_t r = first_data; r < rows.size(); ++r) {
    const auto& row = rows[r];
    std::optional<double> value;
    if (column < static_cast<int>(row.size())) value = detail::parse_double(row[column]);
    if (!value) {
      ++out.diagnostics.rows_skipped;
      continue;
    }
    out.series.values.push_back(*value);
    out.series.labels.push_back(column != 0 && !row.empty() ? row[0]
                                                            : std::to_string(out.diagnostics.rows_parsed));
    ++out.diagnostics.rows_parsed;
  }
  if (out.series.empty()) throw IoError("load_csv: no numeric data in '" + path + "'");
  return out;
}

// 17 significant digits so that values survive a write/load round trip exactly.
inline void write_csv(const TimeSeries& series, std::ostream& out) {
  out << "t,value\n";
  char buffer[40];
  for (int i = 0; i < series.size(); ++i) {
    std::snprintf(buffer, sizeof buffer, "%.17g", series.values[i]);
    if (!series.labels.empty())
      out << series.labels[i] << ',' << buffer << '\n';
    else
      out << i << ',' << buffer << '\n';
  }
}

inline void write_csv(const TimeSeries& series, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("write_csv: cannot open '" + path + "' for writing");
  write_csv(series, out);
  if (!out) throw IoError("write_csv: failed writing '" + path + "'");
}

inline TimeSeries first_difference(const TimeSeries& series) {
  if (series.size() < 2)
    throw std::invalid_argument("first_difference: need at least two observations");
  TimeSeries out;
  out.values.reserve(series.size() - 1);
  for (int i = 0; i + 1 < series.size(); ++i)
    out.values.push_back(series.values[i + 1] - series.values[i]);
  return out;
}

}  // namespace arstat
