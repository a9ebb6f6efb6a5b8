#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdot {

/// FNV-1a 64-bit hash, used for config provenance digests.
inline std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/// Numeric table with '#'-prefixed provenance comments. Numbers are
/// serialized with 12 significant digits so identical runs produce
/// byte-identical files.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> comments;

  void add_row(std::vector<double> row) {
    if (row.size() != columns.size())
      throw std::invalid_argument("csv: row width does not match header");
    rows.push_back(std::move(row));
  }

  void write(std::ostream& os) const {
    for (const auto& c : comments) os << "# " << c << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
      os << columns[i] << (i + 1 < columns.size() ? "," : "");
    os << "\n";
    char buf[64];
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.12g", row[i]);
        os << buf << (i + 1 < row.size() ? "," : "");
      }
      os << "\n";
    }
  }

  void write_file(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("csv: cannot open output file " + path);
    write(f);
  }
};

}  // namespace qdot
