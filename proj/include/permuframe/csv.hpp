#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "permuframe/error.hpp"

namespace permuframe::csv {

/// Splits one CSV record; double quotes group fields and "" escapes a quote.
inline std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t pos = 0; pos < line.size(); ++pos) {
    const char ch = line[pos];
    if (quoted) {
      if (ch == '"') {
        if (pos + 1 < line.size() && line[pos + 1] == '"') {
          fields.back().push_back('"');
          ++pos;
        } else {
          quoted = false;
        }
      } else {
        fields.back().push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else if (ch != '\r') {
      fields.back().push_back(ch);
    }
  }
  if (quoted) throw ValidationError(fmt::format("unterminated quote in CSV line '{}'", line));
  return fields;
}

inline std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

/// Shortest text that is exact at 64-bit precision: 17 significant digits.
inline std::string number(double value) { return fmt::format("{:.17g}", value); }

}  // namespace permuframe::csv
