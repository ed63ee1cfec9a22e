#include "ringq/table.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ringq {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

namespace {

std::string cell_text(const Cell& cell) {
  if (std::holds_alternative<double>(cell))
    return format_double(std::get<double>(cell));
  if (std::holds_alternative<long long>(cell))
    return std::to_string(std::get<long long>(cell));
  return std::get<std::string>(cell);
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void Table::add_row(std::vector<Cell> cells) {
  if (cells.size() != columns_.size())
    throw std::invalid_argument("Table::add_row: cell count mismatch");
  rows_.push_back(std::move(cells));
}

void Table::write_csv(std::ostream& out) const {
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c) out << ',';
    out << columns_[c];
  }
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << cell_text(row[c]);
    }
    out << '\n';
  }
}

void Table::write_json(std::ostream& out) const {
  out << "[\n";
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    out << "  {";
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      if (c) out << ", ";
      out << '"' << json_escape(columns_[c]) << "\": ";
      const Cell& cell = rows_[r][c];
      if (std::holds_alternative<std::string>(cell))
        out << '"' << json_escape(std::get<std::string>(cell)) << '"';
      else
        out << cell_text(cell);
    }
    out << '}' << (r + 1 < rows_.size() ? "," : "") << '\n';
  }
  out << "]\n";
}

std::string Table::to_string(bool json) const {
  std::ostringstream ss;
  json ? write_json(ss) : write_csv(ss);
  return ss.str();
}

}  // namespace ringq
