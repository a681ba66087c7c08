#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace tradeport::table {

// A delimiter-separated table with a mandatory header row. Fields may be
// double-quoted to embed the delimiter or quote characters ("" escapes a
// quote); embedded newlines are not supported.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // source line of each row

  // Index of a named column; throws ParseError when absent.
  int column(const std::string& name) const;
};

std::vector<std::string> split_row(const std::string& line, char delimiter,
                                   std::size_t row_number);

Table read_table(std::istream& in, char delimiter);
Table read_table_file(const std::filesystem::path& path, char delimiter);

double parse_double(const std::string& field, std::size_t row_number,
                    const std::string& column);
int parse_int(const std::string& field, std::size_t row_number,
              const std::string& column);

// Shortest decimal string that round-trips to the same double.
std::string format_double(double value);

// Fixed significant digits, for presentation-shaped tables.
std::string format_sig(double value, int digits);

std::string format_field(const std::string& field, char delimiter);

// Writes header + rows to path via a temporary file and rename.
void write_table_atomic(const std::filesystem::path& path, char delimiter,
                        const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows);

}  // namespace tradeport::table
