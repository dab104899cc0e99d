// Copyright 2026 The catpump Authors
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

#pragma once

// Numeric tables and their CSV rendering.

#include <ostream>
#include <string>
#include <vector>

namespace catpump::cli {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const;
};

// 9 significant digits, '.' decimal point, -0 printed as 0.
std::string format_number(double value);

// Writes "# <comment>" lines, the column names, then the rows.
void write_csv(std::ostream& out, const std::vector<std::string>& comments, const Table& table);

}  // namespace catpump::cli
