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

// Plain-text matrix files.
//
//   sparse:  "sparse <dim> <nnz>" then nnz lines "<row> <col> <value>",
//            0-based; an entry without its transpose is mirrored.
//   dense:   "dense <dim>" then dim lines of dim values.
//
// Blank lines and lines starting with '#' are ignored. Values are written
// with 17 significant digits so a write/read round trip is exact.

#ifndef FVQE_MATRIX_IO_HPP
#define FVQE_MATRIX_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fvqe/schwinger.hpp"

namespace fvqe {

// Returns the matrix as written; symmetry is not enforced here.
Eigen::MatrixXd read_matrix(std::istream& in);
Eigen::MatrixXd read_matrix_file(const std::string& path);

void write_sparse(std::ostream& out, const SparseHamiltonian& h);
void write_sparse(std::ostream& out, const Eigen::MatrixXd& m);
void write_dense(std::ostream& out, const Eigen::MatrixXd& m);

// One line per basis state: "<index> <occupation bits n=0..N-1> | <links>".
void write_basis_manifest(std::ostream& out, const std::vector<PhysicalBasisState>& basis, int n_sites);

}  // namespace fvqe

#endif  // FVQE_MATRIX_IO_HPP
