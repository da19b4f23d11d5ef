#pragma once

#include <string>
#include <vector>

namespace skewgim {

// Minimal CSV layer: header row required, comma separated, no quoting.
// Lines starting with '#' are treated as comments (used to embed run
// metadata in artifacts) and surface through `comments`.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> comments;

  // column index by name; throws std::runtime_error when missing
  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows,
               const std::vector<std::string>& comments = {});

// Shortest round-trip decimal rendering of a double (std::to_chars).
std::string format_double(double v);

}  // namespace skewgim
