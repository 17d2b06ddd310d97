// Copyright 2026 The fvqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Output tables in the three supported formats.

#ifndef FVQE_TOOLS_TABLE_HPP
#define FVQE_TOOLS_TABLE_HPP

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace fvqe::cli {

using Cell = std::variant<std::string, long long, double>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

enum class Format { csv, jsonl, gnuplot };

Format parse_format(const std::string& s);
std::string extension(Format f);

// csv: one header per table, tables separated by a blank line.
// jsonl: one object per row with a "table" key.
// gnuplot: "#" headers, whitespace columns, two blank lines between tables
// so each table is its own gnuplot index.
void emit(std::ostream& out, const std::vector<Table>& tables, Format f);

}  // namespace fvqe::cli

#endif  // FVQE_TOOLS_TABLE_HPP
