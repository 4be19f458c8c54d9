#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pocketgrip {

/// Shortest decimal string that parses back to exactly `value`. Plain
/// notation for 1e-7 <= |value| < 1e21, otherwise exponent form.
std::string format_number(double value);

/// Strict decimal parse (optional sign, fraction and exponent). Rejects
/// trailing characters, inf and nan.
bool parse_number(std::string_view text, double& out);

struct Null {
  friend bool operator==(Null, Null) { return true; }
};

using Cell = std::variant<Null, double, std::int64_t, bool, std::string>;

/// A result table shared by the CSV and JSON writers.
struct Table {
  std::vector<std::string> headers;
  std::vector<std::vector<Cell>> rows;
};

/// Header line then one line per row, `\n` endings. Null cells are empty.
void write_csv(std::ostream& os, const Table& table);

/// Array of row objects keyed by the CSV headers.
void write_json(std::ostream& os, const Table& table);

std::vector<std::string> split_csv_line(std::string_view line);

/// Splits a text stream into lines, dropping a trailing `\r` from each.
std::vector<std::string> read_lines(std::istream& is);

}  // namespace pocketgrip
