#include "aroc/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace aroc {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ' || cell.back() == '\t'))
      cell.pop_back();
    std::size_t start = 0;
    while (start < cell.size() && (cell[start] == ' ' || cell[start] == '\t')) ++start;
    cells.push_back(cell.substr(start));
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

std::size_t CsvTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw std::invalid_argument("CSV: column '" + name + "' not found");
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("CSV: cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("CSV: '" + path + "' is empty");
  table.header = split_line(line);
  if (table.header.empty()) throw std::runtime_error("CSV: '" + path + "' has an empty header");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
    auto cells = split_line(line);
    if (cells.size() != table.header.size())
      throw std::runtime_error("CSV: line " + std::to_string(lineno) + " has " +
                               std::to_string(cells.size()) + " cells, expected " +
                               std::to_string(table.header.size()));
    table.rows.push_back(std::move(cells));
  }
  return table;
}

double parse_numeric_cell(const std::string& cell, std::size_t row, const std::string& column) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value))
    throw std::invalid_argument("CSV: row " + std::to_string(row) + ", column '" + column +
                                "': cell '" + cell + "' is not a finite number");
  return value;
}

Dataset read_dataset_csv(const std::string& path, const std::string& biomarker_column,
                         const std::string& status_column,
                         const std::vector<std::string>& covariate_columns) {
  const CsvTable table = read_csv(path);
  const std::size_t y_col = table.column_index(biomarker_column);
  const std::size_t d_col = table.column_index(status_column);
  std::vector<std::size_t> x_cols;
  x_cols.reserve(covariate_columns.size());
  for (const auto& name : covariate_columns) x_cols.push_back(table.column_index(name));

  Dataset data;
  data.column_names = covariate_columns;
  data.X = Matrix(table.rows.size(), covariate_columns.size());
  data.y.resize(table.rows.size());
  data.d.resize(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& cells = table.rows[i];
    for (std::size_t j = 0; j < x_cols.size(); ++j)
      data.X.at(i, j) = parse_numeric_cell(cells[x_cols[j]], i + 1, covariate_columns[j]);
    data.y[i] = parse_numeric_cell(cells[y_col], i + 1, biomarker_column);
    const double status = parse_numeric_cell(cells[d_col], i + 1, status_column);
    if (status != 0.0 && status != 1.0)
      throw std::invalid_argument("CSV: row " + std::to_string(i + 1) + ", column '" +
                                  status_column + "': status must be 0 or 1");
    data.d[i] = static_cast<int>(status);
  }
  return data;
}

std::string dataset_to_csv(const Dataset& data) {
  std::string out;
  for (const auto& name : data.column_names) {
    out += name;
    out += ',';
  }
  out += "y,d\n";
  for (std::size_t i = 0; i < data.n(); ++i) {
    for (std::size_t j = 0; j < data.dim(); ++j) {
      out += format_double(data.X.at(i, j));
      out += ',';
    }
    out += format_double(data.y[i]);
    out += ',';
    out += std::to_string(data.d[i]);
    out += '\n';
  }
  return out;
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

void atomic_write_file(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path dir = target.parent_path().empty() ? fs::path(".") : target.parent_path();
  const fs::path tmp = dir / (target.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("rename to '" + path + "' failed: " + ec.message());
  }
}

}  // namespace aroc
