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

#include "fvqe/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "fvqe/errors.hpp"

namespace fvqe {

namespace {

bool next_content_line(std::istream& in, std::string& line, int& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;
        return true;
    }
    return false;
}

[[noreturn]] void malformed(int line_no, const std::string& why) {
    std::ostringstream msg;
    msg << "matrix file line " << line_no << ": " << why;
    throw MalformedInput(msg.str());
}

void check_trailing(std::istringstream& ls, int line_no) {
    std::string extra;
    if (ls >> extra) malformed(line_no, "unexpected trailing token '" + extra + "'");
}

}  // namespace

Eigen::MatrixXd read_matrix(std::istream& in) {
    std::string line;
    int line_no = 0;
    if (!next_content_line(in, line, line_no)) throw MalformedInput("matrix file is empty");
    std::istringstream header(line);
    std::string kind;
    header >> kind;
    if (kind == "dense") {
        long d = -1;
        if (!(header >> d) || d < 1) malformed(line_no, "expected 'dense <dim>' with dim >= 1");
        check_trailing(header, line_no);
        Eigen::MatrixXd m(d, d);
        for (long r = 0; r < d; ++r) {
            if (!next_content_line(in, line, line_no)) malformed(line_no, "missing dense row");
            std::istringstream ls(line);
            for (long c = 0; c < d; ++c) {
                if (!(ls >> m(r, c))) malformed(line_no, "dense row has fewer than dim values");
            }
            check_trailing(ls, line_no);
        }
        if (next_content_line(in, line, line_no)) malformed(line_no, "content after the last dense row");
        if (!m.allFinite()) throw MalformedInput("matrix file contains non-finite values");
        return m;
    }
    if (kind == "sparse") {
        long d = -1, nnz = -1;
        if (!(header >> d >> nnz) || d < 1 || nnz < 0) malformed(line_no, "expected 'sparse <dim> <nnz>'");
        check_trailing(header, line_no);
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
        Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> explicit_entry =
            Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(d, d, false);
        for (long k = 0; k < nnz; ++k) {
            if (!next_content_line(in, line, line_no)) malformed(line_no, "fewer entries than nnz");
            std::istringstream ls(line);
            long r, c;
            double v;
            if (!(ls >> r >> c >> v)) malformed(line_no, "expected '<row> <col> <value>'");
            check_trailing(ls, line_no);
            if (r < 0 || c < 0 || r >= d || c >= d) malformed(line_no, "index out of range");
            if (!std::isfinite(v)) malformed(line_no, "non-finite value");
            if (explicit_entry(r, c)) malformed(line_no, "duplicate entry");
            m(r, c) = v;
            explicit_entry(r, c) = true;
            if (!explicit_entry(c, r)) m(c, r) = v;
        }
        if (next_content_line(in, line, line_no)) malformed(line_no, "more entries than nnz");
        return m;
    }
    malformed(line_no, "unknown matrix kind '" + kind + "' (expected 'sparse' or 'dense')");
}

Eigen::MatrixXd read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open matrix file " + path);
    try {
        return read_matrix(in);
    } catch (const MalformedInput& e) {
        throw MalformedInput(path + ": " + e.what());
    }
}

void write_sparse(std::ostream& out, const SparseHamiltonian& h) {
    out << "sparse " << h.dim << ' ' << h.entries.size() << '\n';
    out << std::setprecision(17);
    for (const auto& t : h.entries) out << t.row << ' ' << t.col << ' ' << t.value << '\n';
}

void write_sparse(std::ostream& out, const Eigen::MatrixXd& m) {
    std::vector<Triplet> entries;
    for (long r = 0; r < m.rows(); ++r) {
        for (long c = r; c < m.cols(); ++c) {
            if (m(r, c) != 0.0) entries.push_back({static_cast<int>(r), static_cast<int>(c), m(r, c)});
        }
    }
    SparseHamiltonian h;
    h.dim = static_cast<int>(m.rows());
    h.entries = std::move(entries);
    write_sparse(out, h);
}

void write_dense(std::ostream& out, const Eigen::MatrixXd& m) {
    out << "dense " << m.rows() << '\n' << std::setprecision(17);
    for (long r = 0; r < m.rows(); ++r) {
        for (long c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m(r, c);
        out << '\n';
    }
}

void write_basis_manifest(std::ostream& out, const std::vector<PhysicalBasisState>& basis, int n_sites) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
        out << i << ' ';
        for (int n = 0; n < n_sites; ++n) out << (basis[i].occupied(n) ? '1' : '0');
        out << " |";
        for (int l : basis[i].links) out << ' ' << l;
        out << '\n';
    }
}

}  // namespace fvqe
