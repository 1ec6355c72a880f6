#include "softspace/delimited.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "softspace/error.hpp"

namespace softspace::io {

std::optional<std::size_t> Table::find_column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t Table::column(std::string_view name) const {
  auto idx = find_column(name);
  if (!idx) throw DataError("missing column '" + std::string(name) + "'");
  return *idx;
}

Row split_record(std::string_view line, char delimiter) {
  Row out;
  std::string field;
  bool in_quotes = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && field.empty() && !was_quoted) {
      in_quotes = true;
      was_quoted = true;
    } else if (c == delimiter) {
      out.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else {
      field.push_back(c);
    }
  }
  if (in_quotes) throw DataError("unterminated quoted field");
  out.push_back(std::move(field));
  return out;
}

Table read_table(std::istream& in, const std::string& source_name) {
  Table t;
  std::string line;
  bool have_header = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (line.empty() || line[0] == '#') continue;
    try {
      if (!have_header) {
        t.delimiter = line.find('\t') != std::string::npos ? '\t' : ',';
        t.header = split_record(line, t.delimiter);
        for (auto& h : t.header) h = trim(h);
        have_header = true;
        continue;
      }
      Row row = split_record(line, t.delimiter);
      if (row.size() != t.header.size()) {
        throw DataError("expected " + std::to_string(t.header.size()) + " fields, got " +
                        std::to_string(row.size()));
      }
      t.rows.push_back(std::move(row));
    } catch (const DataError& e) {
      throw DataError(source_name + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header) throw DataError(source_name + ": missing header row");
  return t;
}

Table read_table_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  return read_table(in, path);
}

std::string quote_field(std::string_view field, char delimiter) {
  bool needs = field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) != std::string_view::npos;
  if (!needs) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, const Row& row, char delimiter) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out.put(delimiter);
    out << quote_field(row[i], delimiter);
  }
  out.put('\n');
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string format_fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

long long parse_int(std::string_view text, std::string_view what) {
  std::string s = trim(text);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw DataError("invalid integer for " + std::string(what) + ": '" + s + "'");
  }
  return v;
}

double parse_double(std::string_view text, std::string_view what) {
  std::string s = trim(text);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw DataError("invalid number for " + std::string(what) + ": '" + s + "'");
  }
  return v;
}

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace softspace::io
