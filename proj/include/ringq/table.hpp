#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace ringq {

/// Fixed formatting for doubles in emitted tables (%.12g), so identical runs
/// produce byte-identical files.
std::string format_double(double value);

using Cell = std::variant<double, long long, std::string>;

/// A small column-named table with CSV and JSON (one object per row)
/// serializations.
class Table {
 public:
  explicit Table(std::vector<std::string> columns)
      : columns_(std::move(columns)) {}

  void add_row(std::vector<Cell> cells);
  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t rows() const { return rows_.size(); }

  void write_csv(std::ostream& out) const;
  void write_json(std::ostream& out) const;
  std::string to_string(bool json) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

}  // namespace ringq
