// Copyright 2026 The tinydse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace tinydse {

struct CsvRow {
  std::size_t line = 0;  // 1-based line number in the source
  std::vector<std::string> fields;
};

struct CsvTable {
  std::string source;
  std::vector<std::string> header;
  std::vector<CsvRow> rows;

  // Index of a header column; -1 if absent.
  int column(const std::string& name) const;
  // Same, but throws ParseError when the column is missing.
  std::size_t require_column(const std::string& name) const;
};

// Reads a headered CSV. Blank lines are skipped; every data row must have
// exactly as many fields as the header. No quoting: fields may not contain
// commas (none of the tinydse file formats need them).
CsvTable read_csv(std::istream& in, const std::string& source);
CsvTable read_csv_file(const std::string& path);

std::vector<std::string> split_csv_line(const std::string& line);

// Field parsers; errors mention source, line and column name.
std::int64_t parse_int64_field(const std::string& text, const CsvTable& table,
                               const CsvRow& row, const std::string& column);
double parse_double_field(const std::string& text, const CsvTable& table,
                          const CsvRow& row, const std::string& column);
// Non-negative decimal with at most two fractional digits, returned in cents.
std::int64_t parse_price_cents(const std::string& text, const CsvTable& table,
                               const CsvRow& row, const std::string& column);

}  // namespace tinydse
