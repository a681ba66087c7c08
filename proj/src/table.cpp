#include "tradeport/table.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include "tradeport/errors.hpp"

namespace tradeport::table {

int Table::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    throw ParseError("required column '" + name + "' not found in header");
  }
  return static_cast<int>(it - header.begin());
}

std::vector<std::string> split_row(const std::string& line, char delimiter,
                                   std::size_t row_number) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  std::size_t i = 0;
  const std::size_t n = line.size();
  fields.reserve(8);
  while (i <= n) {
    if (i == n) {
      if (quoted) {
        throw ParseError("row " + std::to_string(row_number) +
                         ": unterminated quoted field");
      }
      fields.push_back(field);
      break;
    }
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < n && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"' && field.empty()) {
      quoted = true;
    } else if (ch == delimiter) {
      fields.push_back(field);
      field.clear();
    } else {
      field.push_back(ch);
    }
    ++i;
  }
  return fields;
}

Table read_table(std::istream& in, char delimiter) {
  Table result;
  std::string line;
  std::size_t row_number = 0;
  while (std::getline(in, line)) {
    ++row_number;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (row_number == 1) {
      result.header = split_row(line, delimiter, row_number);
      continue;
    }
    if (line.empty()) {
      continue;
    }
    auto fields = split_row(line, delimiter, row_number);
    if (fields.size() != result.header.size()) {
      throw ParseError("row " + std::to_string(row_number) + ": expected " +
                       std::to_string(result.header.size()) + " fields, got " +
                       std::to_string(fields.size()));
    }
    result.rows.push_back(std::move(fields));
    result.line_numbers.push_back(row_number);
  }
  if (row_number == 0) {
    throw ParseError("missing header row");
  }
  return result;
}

Table read_table_file(const std::filesystem::path& path, char delimiter) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "'");
  }
  try {
    return read_table(in, delimiter);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

double parse_double(const std::string& field, std::size_t row_number,
                    const std::string& column) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || field.empty()) {
    throw ParseError("row " + std::to_string(row_number) + ": column '" +
                     column + "' has non-numeric value '" + field + "'");
  }
  return value;
}

int parse_int(const std::string& field, std::size_t row_number,
              const std::string& column) {
  int value = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || field.empty()) {
    throw ParseError("row " + std::to_string(row_number) + ": column '" +
                     column + "' has non-integer value '" + field + "'");
  }
  return value;
}

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  (void)ec;
  return std::string(buffer, ptr);
}

std::string format_sig(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*g", digits, value);
  return std::string(buffer);
}

std::string format_field(const std::string& field, char delimiter) {
  const bool needs_quotes =
      field.find(delimiter) != std::string::npos ||
      field.find('"') != std::string::npos ||
      field.find('\n') != std::string::npos ||
      field.find('\r') != std::string::npos;
  if (!needs_quotes) {
    return field;
  }
  std::string quoted = "\"";
  for (char ch : field) {
    if (ch == '"') {
      quoted += "\"\"";
    } else {
      quoted.push_back(ch);
    }
  }
  quoted.push_back('"');
  return quoted;
}

void write_table_atomic(const std::filesystem::path& path, char delimiter,
                        const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) {
      throw IoError("cannot write '" + tmp.string() + "'");
    }
    auto emit = [&](const std::vector<std::string>& fields) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) {
          out.put(delimiter);
        }
        out << format_field(fields[i], delimiter);
      }
      out.put('\n');
    };
    emit(header);
    for (const auto& row : rows) {
      emit(row);
    }
    if (!out) {
      throw IoError("write failed for '" + tmp.string() + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace tradeport::table
