// Copyright 2026 The qstack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qstack/table.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "qstack/error.hpp"

namespace qstack {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  (void)ec;
  std::string s(buf.data(), end);
  // "1.25e+09" -> "1.25e9", "5e-07" -> "5e-7"
  const std::size_t e = s.find('e');
  if (e == std::string::npos) return s;
  std::string mantissa = s.substr(0, e);
  std::size_t i = e + 1;
  std::string sign;
  if (s[i] == '+' || s[i] == '-') {
    if (s[i] == '-') sign = "-";
    ++i;
  }
  while (i + 1 < s.size() && s[i] == '0') ++i;
  return mantissa + "e" + sign + s.substr(i);
}

void Table::add_row(std::vector<Cell> row) {
  require(row.size() == columns.size(), "row width must match column count");
  rows.push_back(std::move(row));
}

std::size_t Table::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw ValidationError("unknown column '" + name + "'");
}

double Table::number(std::size_t row, const std::string& column) const {
  require(row < rows.size(), "row index out of range");
  const Cell& c = rows[row][column_index(column)];
  require(std::holds_alternative<double>(c), "column '" + column + "' is not numeric");
  return std::get<double>(c);
}

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += quote(columns[i]);
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (const double* d = std::get_if<double>(&row[i]))
        out += format_number(*d);
      else
        out += quote(std::get<std::string>(row[i]));
    }
    out += '\n';
  }
  return out;
}

}  // namespace qstack
