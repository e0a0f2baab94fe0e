#pragma once

#include <string>
#include <vector>

#include "aroc/dataset.hpp"

namespace aroc {

/// Raw CSV table: header plus string cells, used where columns may be
/// categorical labels rather than numbers.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column_index(const std::string& name) const;  // throws if missing
};

CsvTable read_csv(const std::string& path);

/// Parses a cell as a finite double; the exception names the offending
/// row (1-based, excluding the header) and column.
double parse_numeric_cell(const std::string& cell, std::size_t row, const std::string& column);

/// Builds a Dataset from named columns of a CSV file. Status cells must be
/// exactly 0 or 1; every referenced cell must be a finite number.
Dataset read_dataset_csv(const std::string& path, const std::string& biomarker_column,
                         const std::string& status_column,
                         const std::vector<std::string>& covariate_columns);

/// Serializes a Dataset as CSV (covariate columns, then y, then d).
std::string dataset_to_csv(const Dataset& data);

/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

/// Writes via a temp file in the same directory followed by a rename, so a
/// failed run leaves no partial output.
void atomic_write_file(const std::string& path, const std::string& contents);

}  // namespace aroc
