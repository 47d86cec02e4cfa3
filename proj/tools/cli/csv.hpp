#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pmsr::cli {

using CsvRow = std::vector<std::string>;

/// One CRLF-terminated record; fields holding a comma, quote or line break
/// are quoted with inner quotes doubled.
std::string csv_row(const CsvRow& fields);

/// Whole document, header included. Throws pmsr::ParseError on an
/// unterminated quote or a stray quote inside an unquoted field.
std::vector<CsvRow> parse_csv(std::string_view text);

}  // namespace pmsr::cli
