#include "vmafc/csv.hpp"

#include <charconv>
#include <cstdio>
#include <istream>

#include "vmafc/errors.hpp"

namespace vmafc::csv {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Table read(std::istream& in) {
  Table table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto fields = split_line(t);
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw FormatError("csv row has " + std::to_string(fields.size()) + " fields, header has " +
                        std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  if (!have_header) throw FormatError("csv input is empty");
  return table;
}

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw FormatError("csv column '" + std::string(name) + "' not found");
}

double to_double(std::string_view field) {
  double v = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw FormatError("not a number: '" + std::string(field) + "'");
  }
  return v;
}

long to_long(std::string_view field) {
  long v = 0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw FormatError("not an integer: '" + std::string(field) + "'");
  }
  return v;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return std::to_string(v);
  return std::string(buf, ptr);
}

}  // namespace vmafc::csv
