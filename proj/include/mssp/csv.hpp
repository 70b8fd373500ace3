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

// Minimal RFC 4180 reading and writing.

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mssp {

using CsvRow = std::vector<std::string>;

// Quotes a field when it holds a comma, quote or line break.
std::string CsvField(std::string_view value);
std::string CsvLine(std::span<const std::string> fields);

class CsvTable {
 public:
  // The first record is the header. Throws a validation Error on ragged
  // rows or an unterminated quote.
  static CsvTable Parse(std::string_view text);

  const CsvRow& header() const { return header_; }
  const std::vector<CsvRow>& rows() const { return rows_; }

  // Column index by name; throws a validation Error when absent.
  size_t Column(std::string_view name) const;
  bool HasColumn(std::string_view name) const;

 private:
  CsvRow header_;
  std::vector<CsvRow> rows_;
};

int ParseInt(std::string_view text, std::string_view what);
long long ParseInt64(std::string_view text, std::string_view what);
unsigned long long ParseUint64(std::string_view text, std::string_view what);
double ParseDouble(std::string_view text, std::string_view what);

}  // namespace mssp
