#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tradeport/errors.hpp"
#include "tradeport/table.hpp"

using namespace tradeport;

TEST_CASE("read_table splits on the delimiter and keeps line numbers") {
  std::istringstream in("a\tb\tc\n1\t2\t3\n\n4\t5\t6\n");
  const auto tab = table::read_table(in, '\t');
  CHECK(tab.header == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(tab.rows.size() == 2);
  CHECK(tab.rows[1] == std::vector<std::string>{"4", "5", "6"});
  CHECK(tab.line_numbers[0] == 2);
  CHECK(tab.line_numbers[1] == 4);  // blank line skipped, numbering kept
  CHECK(tab.column("b") == 1);
  CHECK_THROWS_AS(tab.column("missing"), ParseError);
}

TEST_CASE("quoted fields may embed the delimiter") {
  std::istringstream in("country,year\n\"Korea, Rep.\",1962\n");
  const auto tab = table::read_table(in, ',');
  REQUIRE(tab.rows.size() == 1);
  CHECK(tab.rows[0][0] == "Korea, Rep.");
  CHECK(tab.rows[0][1] == "1962");
}

TEST_CASE("escaped quotes round-trip") {
  const std::string field = "say \"hi\", twice";
  const auto formatted = table::format_field(field, ',');
  std::istringstream in("x\n" + formatted + "\n");
  const auto tab = table::read_table(in, ',');
  CHECK(tab.rows[0][0] == field);
}

TEST_CASE("field-count mismatches carry the row number") {
  std::istringstream in("a\tb\n1\t2\n1\t2\t3\n");
  CHECK_THROWS_WITH_AS(table::read_table(in, '\t'),
                       "row 3: expected 2 fields, got 3", ParseError);
}

TEST_CASE("crlf input is accepted") {
  std::istringstream in("a\tb\r\n1\t2\r\n");
  const auto tab = table::read_table(in, '\t');
  CHECK(tab.rows[0][1] == "2");
}

TEST_CASE("numeric parsing validates fields") {
  CHECK(table::parse_double("1.5e3", 1, "v") == 1500.0);
  CHECK(table::parse_int("-7", 1, "v") == -7);
  CHECK_THROWS_AS(table::parse_double("12x", 3, "v"), ParseError);
  CHECK_THROWS_AS(table::parse_double("", 3, "v"), ParseError);
  CHECK_THROWS_AS(table::parse_int("1.5", 3, "v"), ParseError);
}

TEST_CASE("format_double round-trips exactly") {
  for (const double v : {0.1, 1.0 / 3.0, 1e-308, 12345.6789, 0.0, -2.5e17}) {
    const auto text = table::format_double(v);
    CHECK(table::parse_double(text, 1, "v") == v);
  }
}

TEST_CASE("write_table_atomic writes then renames") {
  const auto dir = std::filesystem::temp_directory_path() / "tradeport_tbl";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.tsv";
  table::write_table_atomic(path, '\t', {"x", "y"}, {{"1", "2"}, {"3", "4"}});
  CHECK(!std::filesystem::exists(path.string() + ".tmp"));
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str() == "x\ty\n1\t2\n3\t4\n");
  std::filesystem::remove_all(dir);
}

TEST_CASE("missing file raises IoError") {
  CHECK_THROWS_AS(table::read_table_file("/nonexistent/nope.tsv", '\t'),
                  IoError);
}
