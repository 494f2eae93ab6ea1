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

#include "tinydse/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "tinydse/errors.hpp"

namespace tinydse {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void field_error(const CsvTable& table, const CsvRow& row,
                              const std::string& column, const std::string& what) {
  throw ParseError(table.source + ":" + std::to_string(row.line) + ": column '" +
                   column + "': " + what);
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  if (fields.empty()) fields.emplace_back();
  return fields;
}

int CsvTable::column(const std::string& name) const {
  auto it = std::find(header.begin(), header.end(), name);
  return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

std::size_t CsvTable::require_column(const std::string& name) const {
  int idx = column(name);
  if (idx < 0) throw ParseError(source + ": missing required column '" + name + "'");
  return static_cast<std::size_t>(idx);
}

CsvTable read_csv(std::istream& in, const std::string& source) {
  CsvTable table;
  table.source = source;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    if (table.header.empty()) {
      table.header = std::move(fields);
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw ParseError(source + ":" + std::to_string(lineno) + ": expected " +
                       std::to_string(table.header.size()) + " fields, got " +
                       std::to_string(fields.size()));
    }
    table.rows.push_back(CsvRow{lineno, std::move(fields)});
  }
  if (table.header.empty()) throw ParseError(source + ": empty file (no header)");
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  return read_csv(in, path);
}

std::int64_t parse_int64_field(const std::string& text, const CsvTable& table,
                               const CsvRow& row, const std::string& column) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    field_error(table, row, column, "not an integer: '" + text + "'");
  return value;
}

double parse_double_field(const std::string& text, const CsvTable& table,
                          const CsvRow& row, const std::string& column) {
  if (text.empty()) field_error(table, row, column, "empty numeric field");
  std::size_t pos = 0;
  double value = 0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    field_error(table, row, column, "not a number: '" + text + "'");
  }
  if (pos != text.size()) field_error(table, row, column, "not a number: '" + text + "'");
  return value;
}

std::int64_t parse_price_cents(const std::string& text, const CsvTable& table,
                               const CsvRow& row, const std::string& column) {
  std::size_t dot = text.find('.');
  std::string whole = dot == std::string::npos ? text : text.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);
  if (whole.empty() && frac.empty())
    field_error(table, row, column, "empty price");
  if (frac.size() > 2)
    field_error(table, row, column, "price has more than two decimals: '" + text + "'");
  while (frac.size() < 2) frac.push_back('0');
  if (whole.empty()) whole = "0";
  auto all_digits = [](const std::string& s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c); });
  };
  if (!all_digits(whole) || !all_digits(frac))
    field_error(table, row, column, "not a non-negative price: '" + text + "'");
  std::int64_t dollars = 0;
  for (char c : whole) dollars = dollars * 10 + (c - '0');
  std::int64_t sub = 0;
  for (char c : frac) sub = sub * 10 + (c - '0');
  return dollars * 100 + sub;
}

}  // namespace tinydse
