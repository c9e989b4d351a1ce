#include "samo/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "samo/errors.hpp"

namespace samo::csv {

std::string format(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw IoError("csv: missing column '" + name + "'");
}

namespace {

void write_row(std::ostream& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    out << row[i];
  }
  out << '\n';
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

void write(const std::filesystem::path& path, const Table& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("csv: cannot open '" + path.string() + "' for writing");
  write_row(out, table.header);
  for (const auto& row : table.rows) write_row(out, row);
  if (!out) throw IoError("csv: write failed for '" + path.string() + "'");
}

Table read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("csv: cannot open '" + path.string() + "'");
  Table table;
  std::string line;
  if (!std::getline(in, line)) throw IoError("csv: '" + path.string() + "' has no header");
  table.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto row = split(line);
    if (row.size() != table.header.size()) {
      throw IoError("csv: '" + path.string() + "' row has " + std::to_string(row.size()) +
                    " cells, header has " + std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

double to_double(const std::string& cell) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(cell, &used);
  } catch (const std::exception&) {
    throw IoError("csv: not a number: '" + cell + "'");
  }
  if (used != cell.size()) throw IoError("csv: trailing characters in '" + cell + "'");
  return v;
}

}  // namespace samo::csv
