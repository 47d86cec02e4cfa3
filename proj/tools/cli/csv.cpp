#include "csv.hpp"

#include "pmsr/error.hpp"

namespace pmsr::cli {

std::string csv_row(const CsvRow& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    const auto& f = fields[i];
    if (f.find_first_of(",\"\r\n") == std::string::npos) {
      out += f;
      continue;
    }
    out += '"';
    for (char c : f) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
  }
  out += "\r\n";
  return out;
}

std::vector<CsvRow> parse_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  CsvRow row;
  std::string field;
  bool quoted = false;     // inside a quoted field
  bool was_quoted = false; // current field started with a quote
  std::size_t line = 1;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    was_quoted = false;
  };
  auto end_row = [&] {
    end_field();
    rows.push_back(std::move(row));
    row.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        [[fallthrough]];
      case '\n':
        end_row();
        ++line;
        break;
      case '"':
        if (!field.empty() || was_quoted) {
          throw ParseError("csv line " + std::to_string(line) + ": stray quote");
        }
        quoted = was_quoted = true;
        break;
      default:
        if (was_quoted) {
          throw ParseError("csv line " + std::to_string(line) +
                           ": text after closing quote");
        }
        field += c;
    }
  }
  if (quoted) throw ParseError("csv: unterminated quoted field");
  if (!field.empty() || was_quoted || !row.empty()) end_row();
  return rows;
}

}  // namespace pmsr::cli
