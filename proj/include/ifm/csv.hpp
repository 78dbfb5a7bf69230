#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace ifm {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
};

/// 12 significant digits, "%.12g". Locale independent.
std::string format_number(double v);

void write_csv(std::ostream& os, const CsvTable& table);

/// Writes header then rows, comma separated, '\n' line ends. Throws IoError.
void emit_csv(const CsvTable& table, const std::filesystem::path& path);

/// Minimal reader for files produced by write_csv (no quoting).
CsvTable read_csv(std::istream& is);

}  // namespace ifm
