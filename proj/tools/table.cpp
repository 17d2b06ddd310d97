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

#include "table.hpp"

#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "fvqe/errors.hpp"

namespace fvqe::cli {

namespace {

std::string number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_cell(const Cell& c) {
    if (auto s = std::get_if<std::string>(&c)) {
        if (s->find_first_of(",\"\n") == std::string::npos) return *s;
        std::string q = "\"";
        for (char ch : *s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return q + "\"";
    }
    if (auto i = std::get_if<long long>(&c)) return std::to_string(*i);
    return number(std::get<double>(c));
}

std::string gnuplot_cell(const Cell& c) {
    if (auto s = std::get_if<std::string>(&c)) return "\"" + *s + "\"";
    return csv_cell(c);
}

}  // namespace

Format parse_format(const std::string& s) {
    if (s == "csv") return Format::csv;
    if (s == "jsonl" || s == "json-lines") return Format::jsonl;
    if (s == "gnuplot" || s == "gnuplot-data") return Format::gnuplot;
    throw InvalidArgument("unknown output format '" + s + "'");
}

std::string extension(Format f) {
    switch (f) {
        case Format::csv:
            return "csv";
        case Format::jsonl:
            return "jsonl";
        case Format::gnuplot:
            return "dat";
    }
    return "txt";
}

void emit(std::ostream& out, const std::vector<Table>& tables, Format f) {
    bool first = true;
    for (const auto& t : tables) {
        if (f == Format::jsonl) {
            for (const auto& row : t.rows) {
                nlohmann::ordered_json j;
                j["table"] = t.name;
                for (std::size_t i = 0; i < row.size(); ++i) {
                    std::visit([&](const auto& v) { j[t.columns[i]] = v; }, row[i]);
                }
                out << j.dump() << '\n';
            }
            continue;
        }
        if (!first) out << (f == Format::gnuplot ? "\n\n" : "\n");
        first = false;
        if (f == Format::csv) {
            for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
            out << '\n';
            for (const auto& row : t.rows) {
                for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
                out << '\n';
            }
        } else {
            out << "# " << t.name << '\n' << '#';
            for (const auto& c : t.columns) out << ' ' << c;
            out << '\n';
            for (const auto& row : t.rows) {
                for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << gnuplot_cell(row[i]);
                out << '\n';
            }
        }
    }
}

}  // namespace fvqe::cli
