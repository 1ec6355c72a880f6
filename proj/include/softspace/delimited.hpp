#pragma once

// Minimal RFC 4180-style delimited text handling (comma or tab), shared by
// every stage that reads or writes long-format tables.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace softspace::io {

using Row = std::vector<std::string>;

struct Table {
  char delimiter = ',';
  Row header;
  std::vector<Row> rows;

  // Index of a header column; throws DataError when absent.
  std::size_t column(std::string_view name) const;
  std::optional<std::size_t> find_column(std::string_view name) const;
};

// Splits one logical record. Quoted fields may contain the delimiter and
// doubled quotes; embedded newlines are not supported.
Row split_record(std::string_view line, char delimiter);

// Reads a table with a mandatory header row. The delimiter is inferred from
// the header (tab if it contains one, otherwise comma). Blank lines and lines
// starting with '#' are skipped.
Table read_table(std::istream& in, const std::string& source_name);
Table read_table_file(const std::string& path);

std::string quote_field(std::string_view field, char delimiter);
void write_row(std::ostream& out, const Row& row, char delimiter = ',');

// Shortest round-trip representation of a double.
std::string format_double(double value);
// Fixed precision, for human-facing summaries.
std::string format_fixed(double value, int digits);

long long parse_int(std::string_view text, std::string_view what);
double parse_double(std::string_view text, std::string_view what);

std::string to_lower_ascii(std::string_view s);
std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

}  // namespace softspace::io
