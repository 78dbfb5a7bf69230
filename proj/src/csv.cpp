#include "ifm/csv.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ifm/errors.hpp"

namespace ifm {

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header.size()) throw std::logic_error("csv row width differs from header");
  rows.push_back(std::move(row));
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

void write_line(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) os << ',';
    os << cells[k];
  }
  os << '\n';
}

}  // namespace

void write_csv(std::ostream& os, const CsvTable& table) {
  write_line(os, table.header);
  for (const auto& row : table.rows) write_line(os, row);
}

void emit_csv(const CsvTable& table, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  write_csv(os, table);
  os.flush();
  if (!os) throw IoError("write failed: " + path.string());
}

CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (first) {
      table.header = std::move(cells);
      first = false;
    } else {
      table.add_row(std::move(cells));
    }
  }
  return table;
}

}  // namespace ifm
