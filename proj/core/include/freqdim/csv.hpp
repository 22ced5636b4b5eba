// Copyright 2026 The freqdim Authors
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


// RFC 4180 CSV output and number rendering shared by reports.

#ifndef FREQDIM_CSV_HPP_
#define FREQDIM_CSV_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "freqdim/field.hpp"

namespace freqdim {

// Quotes fields containing a comma, quote, CR or LF; doubles inner quotes.
std::string csv_escape(std::string_view field);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> row);
  std::size_t row_count() const { return rows_.size(); }

  // Lines end with CRLF.
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Reads a table written by CsvTable (quoted fields allowed). The first row
// is the header.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

// "a/b" for exact rationals, otherwise FieldElement::format.
std::string format_exact(const FieldElement& x);

// Decimal digits followed by the rounding radius of the working precision,
// e.g. "0.8123...±1e-40".
std::string format_bound(const Real& x, int digits = 25);

}  // namespace freqdim

#endif  // FREQDIM_CSV_HPP_
