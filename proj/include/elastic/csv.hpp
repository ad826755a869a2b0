#pragma once

// Dataset ingestion: CSV with a header row, an ascending time column first,
// and one function per remaining column.

#include <cstddef>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "elastic/function_core.hpp"
#include "elastic/types.hpp"

namespace elastic {

class CsvError : public std::runtime_error {
 public:
  CsvError(const std::string& message, std::size_t row, std::size_t column)
      : std::runtime_error(message + " (row " + std::to_string(row) + ", column " +
                           std::to_string(column) + ")"),
        row_(row),
        column_(column) {}

  std::size_t row() const { return row_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

struct Dataset {
  std::vector<std::string> labels;             // function column names
  std::vector<double> times;                   // ascending
  std::vector<std::vector<double>> functions;  // one inner vector per column
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

inline double parse_cell(const std::string& cell, std::size_t row, std::size_t column) {
  if (cell.empty()) throw CsvError("empty cell", row, column);
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(cell, &consumed);
  } catch (const std::exception&) {
    throw CsvError("cell is not numeric: '" + cell + "'", row, column);
  }
  if (consumed != cell.size()) {
    throw CsvError("cell is not numeric: '" + cell + "'", row, column);
  }
  if (!std::isfinite(value)) throw CsvError("cell is not finite", row, column);
  return value;
}

}  // namespace detail

// Parses the dataset format; row/column positions in errors are 1-based file
// coordinates (the header is row 1).
inline Dataset parse_dataset_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw CsvError("missing header row", 1, 1);
  Dataset ds;
  auto header = detail::split_csv_line(line);
  if (header.size() < 4) {
    throw CsvError("need a time column plus at least 3 function columns", 1, header.size());
  }
  ds.labels.assign(header.begin() + 1, header.end());
  ds.functions.resize(ds.labels.size());

  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (detail::trim(line).empty()) continue;
    const auto cells = detail::split_csv_line(line);
    if (cells.size() != header.size()) {
      throw CsvError("expected " + std::to_string(header.size()) + " cells, found " +
                         std::to_string(cells.size()),
                     row, cells.size());
    }
    const double t = detail::parse_cell(cells[0], row, 1);
    if (!ds.times.empty() && !(t > ds.times.back())) {
      throw CsvError("time column must be strictly increasing", row, 1);
    }
    ds.times.push_back(t);
    for (std::size_t c = 1; c < cells.size(); ++c) {
      ds.functions[c - 1].push_back(detail::parse_cell(cells[c], row, c + 1));
    }
  }
  if (ds.times.size() < 3) {
    throw CsvError("need at least 3 data rows", row, 1);
  }
  return ds;
}

inline Dataset load_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  return parse_dataset_csv(in);
}

enum class ResampleMode { kLinear, kSpline };

struct WorkingSet {
  Grid grid;
  std::vector<SampledFunction> functions;
  std::vector<std::string> labels;
  double time_min = 0.0;
  double time_max = 1.0;
};

// Maps the time span affinely onto [0,1] and resamples every column onto a
// uniform working grid.
inline WorkingSet to_working_set(const Dataset& ds, std::size_t grid_size,
                                 ResampleMode mode = ResampleMode::kLinear) {
  WorkingSet ws{Grid::uniform(grid_size), {}, ds.labels, ds.times.front(), ds.times.back()};
  ws.functions.reserve(ds.functions.size());
  for (const auto& column : ds.functions) {
    ws.functions.push_back(mode == ResampleMode::kSpline
                               ? resample_spline(ds.times, column, ws.grid)
                               : resample_linear(ds.times, column, ws.grid));
  }
  return ws;
}

}  // namespace elastic
