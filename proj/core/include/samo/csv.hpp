#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace samo::csv {

/// Shortest text that re-parses to exactly the same double (17 significant
/// digits, %.17g).
std::string format(double value);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; throws IoError when missing.
  std::size_t column(const std::string& name) const;
};

void write(const std::filesystem::path& path, const Table& table);
Table read(const std::filesystem::path& path);

double to_double(const std::string& cell);

}  // namespace samo::csv
