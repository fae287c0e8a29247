#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qdrive {

using Cell = std::variant<double, std::string>;

struct SummaryEntry {
  std::string key;
  double value = 0.0;
};

// Column-ordered result table shared by every figure and sweep command.
class Table {
 public:
  Table() = default;
  explicit Table(std::vector<std::string> columns)
      : columns_(std::move(columns)) {}

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
  std::size_t row_count() const noexcept { return rows_.size(); }

  // Throws DomainError when the row width does not match the header.
  void add_row(std::vector<Cell> row);
  void reserve(std::size_t rows) { rows_.reserve(rows); }

  std::vector<SummaryEntry>& summary() noexcept { return summary_; }
  const std::vector<SummaryEntry>& summary() const noexcept { return summary_; }

  std::size_t failed_cells() const noexcept { return failed_cells_; }
  void add_failed_cells(std::size_t n) noexcept { failed_cells_ += n; }

  std::size_t column_index(std::string_view name) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<SummaryEntry> summary_;
  std::size_t failed_cells_ = 0;
};

enum class TableFormat { Csv, Json };

// Throws UsageError on anything other than "csv" or "json".
TableFormat parse_table_format(std::string_view name);
const char* to_string(TableFormat f) noexcept;

// Shortest decimal that reads back to the same double, or 17 significant
// digits when exact is set. NaN prints as "nan".
std::string format_number(double v, bool exact = false);

// Header line, then one line per row; LF endings, no trailing spaces.
std::string to_csv(const Table& table, bool exact_floats = false);
// {"columns": [...], "rows": [[...], ...], "summary": {...},
//  "failed_cells": n}. NaN cells become null.
std::string to_json(const Table& table, bool exact_floats = false);
std::string format_table(const Table& table, TableFormat format,
                         bool exact_floats = false);

// Reads a table written by to_csv. Fields that parse completely as numbers
// become numeric cells. Throws UsageError on ragged or empty input.
Table parse_csv(std::string_view text);

// Throws IoError when the file cannot be written.
void write_text_file(const std::string& path, std::string_view contents);
std::string read_text_file(const std::string& path);

}  // namespace qdrive
