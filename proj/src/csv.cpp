// Copyright 2026 The mssp-interp Authors
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

#include "mssp/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "mssp/error.hpp"

namespace mssp {
namespace {

template <typename T>
T ParseNumber(std::string_view text, std::string_view what) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ValidationError(fmt::format("{}: '{}' is not a valid number", what,
                                      text));
  }
  return value;
}

}  // namespace

std::string CsvField(std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(value);
  }
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string CsvLine(std::span<const std::string> fields) {
  std::string out;
  for (size_t k = 0; k < fields.size(); ++k) {
    if (k > 0) out += ',';
    out += CsvField(fields[k]);
  }
  out += '\n';
  return out;
}

CsvTable CsvTable::Parse(std::string_view text) {
  std::vector<CsvRow> records;
  CsvRow row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (size_t k = 0; k < text.size(); ++k) {
    const char c = text[k];
    if (quoted) {
      if (c != '"') {
        field += c;
      } else if (k + 1 < text.size() && text[k + 1] == '"') {
        field += '"';
        ++k;
      } else {
        quoted = false;
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        any = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        any = true;
        break;
      case '\r':
        break;
      case '\n':
        if (any || !field.empty()) {
          row.push_back(std::move(field));
          records.push_back(std::move(row));
        }
        row.clear();
        field.clear();
        any = false;
        break;
      default:
        field += c;
        any = true;
    }
  }
  if (quoted) throw ValidationError("CSV: unterminated quoted field");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    records.push_back(std::move(row));
  }
  if (records.empty()) throw ValidationError("CSV: missing header");

  CsvTable table;
  table.header_ = std::move(records.front());
  for (size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.header_.size()) {
      throw ValidationError(fmt::format("CSV: record {} has {} fields, header "
                                        "has {}",
                                        r + 1, records[r].size(),
                                        table.header_.size()));
    }
    table.rows_.push_back(std::move(records[r]));
  }
  return table;
}

size_t CsvTable::Column(std::string_view name) const {
  const auto it = std::ranges::find(header_, name);
  if (it == header_.end()) {
    throw ValidationError(fmt::format("CSV: missing column '{}'", name));
  }
  return static_cast<size_t>(it - header_.begin());
}

bool CsvTable::HasColumn(std::string_view name) const {
  return std::ranges::find(header_, name) != header_.end();
}

int ParseInt(std::string_view text, std::string_view what) {
  return ParseNumber<int>(text, what);
}

long long ParseInt64(std::string_view text, std::string_view what) {
  return ParseNumber<long long>(text, what);
}

unsigned long long ParseUint64(std::string_view text, std::string_view what) {
  return ParseNumber<unsigned long long>(text, what);
}

double ParseDouble(std::string_view text, std::string_view what) {
  const double v = ParseNumber<double>(text, what);
  if (!std::isfinite(v)) {
    throw ValidationError(fmt::format("{}: '{}' is not finite", what, text));
  }
  return v;
}

}  // namespace mssp
