#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace vmafc::csv {

/// Minimal reader: comma separated, no quoting, surrounding blanks trimmed,
/// empty lines and lines starting with '#' skipped.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Throws FormatError when missing.
  std::size_t column(std::string_view name) const;
};

Table read(std::istream& in);
std::vector<std::string> split_line(std::string_view line);

double to_double(std::string_view field);
long to_long(std::string_view field);

/// Shortest text that round-trips the double.
std::string format_double(double v);

}  // namespace vmafc::csv
