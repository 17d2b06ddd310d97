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

// Staggered-fermion Schwinger model on a periodic ring in the Gauss-law
// physical sector, with static background charges and symmetry projection.
//
// Conventions:
//   occupation bit n set  <=>  sigma^z_n = +1
//   dynamical charge      q_n = (sigma^z_n + (-1)^n) / 2
//   static charge         +1 on even sites, -1 on odd sites, summed
//   Gauss's law           l_n = l_{n-1} + q_n + s_n, link n joins sites n, n+1
//   truncation            sum_n l_n^2 <= lambda (electric energy), or
//                         |l_n| <= lambda per link

#ifndef FVQE_SCHWINGER_HPP
#define FVQE_SCHWINGER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fvqe {

enum class Truncation { electric_energy, per_link };

struct LatticeSpec {
    int n_fermion_sites = 8;
    double x = 0.6;
    double mu = 0.1;
    int lambda = 3;
    Truncation truncation = Truncation::electric_energy;

    int n_spatial_sites() const { return n_fermion_sites / 2; }
    void validate() const;
};

struct ChargeConfig {
    std::vector<int> positions;  // as listed; order matters only for Jacobi labels

    static ChargeConfig parse(const std::string& text);  // "0,2,1", "" or "vac"
    std::string label() const;                            // "(0,2,1)" or "Vac"
    std::vector<int> static_charges(int n_sites) const;
    bool operator<(const ChargeConfig& o) const { return positions < o.positions; }
    bool operator==(const ChargeConfig& o) const { return positions == o.positions; }
};

struct PhysicalBasisState {
    std::uint32_t occupations = 0;
    std::vector<int> links;

    bool occupied(int n) const { return (occupations >> n) & 1u; }
    bool operator==(const PhysicalBasisState& o) const {
        return occupations == o.occupations && links == o.links;
    }
};

int dynamical_charge(const PhysicalBasisState& s, int n);

struct SymmetrySector {
    bool momentum = false;             // zero momentum under translation by one spatial site
    std::optional<int> parity_axis;    // site s -> axis - s
    std::optional<int> cp_axis;        // odd axis: site s -> axis - s with charge conjugation
    int parity_eigenvalue = +1;
    int cp_eigenvalue = +1;

    bool empty() const { return !momentum && !parity_axis && !cp_axis; }
    std::string label() const;
    static SymmetrySector parse(const std::string& text);  // "p", "p@2,momentum", "cp@3"
};

struct Triplet {
    int row;
    int col;
    double value;
};

struct SparseHamiltonian {
    int dim = 0;
    std::vector<Triplet> entries;  // row <= col
    std::vector<PhysicalBasisState> basis;
    // Columns are the retained basis vectors in the physical basis; empty
    // when the matrix is expressed directly in the physical basis.
    Eigen::MatrixXd projection;

    Eigen::MatrixXd dense() const;
    std::size_t nonzeros() const { return entries.size(); }
    // Expands a vector in this matrix's basis back to the physical basis.
    Eigen::VectorXd to_physical(const Eigen::VectorXd& v) const;
};

std::vector<PhysicalBasisState> enumerate_physical_basis(const LatticeSpec& spec, const ChargeConfig& charges);

// Checks Gauss's law, periodic closure and truncation for one state.
bool satisfies_gauss_law(const PhysicalBasisState& s, const LatticeSpec& spec, const ChargeConfig& charges);

SparseHamiltonian build_hamiltonian(const LatticeSpec& spec, const std::vector<PhysicalBasisState>& basis);

// Applies one symmetry element to a basis state.
PhysicalBasisState translate_state(const PhysicalBasisState& s, int shift, int n_sites);
PhysicalBasisState reflect_state(const PhysicalBasisState& s, int axis, bool conjugate, int n_sites);

SparseHamiltonian project_symmetry(const SparseHamiltonian& h, const SymmetrySector& sector);

// Same operator with basis vectors reordered by ascending diagonal entry
// (stable), so index 0 is the lowest-energy product or orbit state. The
// variational reference sits at index 0.
SparseHamiltonian order_by_diagonal(const SparseHamiltonian& h);

struct LocalObservables {
    Eigen::VectorXd rho;  // probability of a dynamical charge at site n
    Eigen::VectorXd e2;   // <l_n^2>
};

LocalObservables local_observables(const Eigen::VectorXd& vector, const std::vector<PhysicalBasisState>& basis,
                                   const LatticeSpec& spec);
LocalObservables local_observables(const Eigen::VectorXd& vector, const SparseHamiltonian& h,
                                   const LatticeSpec& spec);

// Profile of a single charge at `shift`: rho'_n = rho_{n - shift}.
LocalObservables translate(const LocalObservables& p, int shift);
LocalObservables operator-(const LocalObservables& a, const LocalObservables& b);
LocalObservables operator+(const LocalObservables& a, const LocalObservables& b);

// Ground-state profiles needed to peel vacuum, one-body and two-body pieces
// off a target. pair_by_offset[s] holds charges (0, s), 0 <= s <= N/2.
struct ReferenceProfiles {
    LocalObservables vacuum;
    LocalObservables single;
    std::vector<std::optional<LocalObservables>> pair_by_offset;
};

enum class SubtractionOrder { vacuum, one_body, two_body };

LocalObservables subtracted_densities(const LocalObservables& target, const ReferenceProfiles& refs,
                                      const std::vector<int>& positions, SubtractionOrder order);

// The configurations, truncations and symmetry sectors of the standard
// four-spatial-site study.
struct StudyConfiguration {
    ChargeConfig charges;
    int lambda;
    SymmetrySector sector;
};

const std::vector<StudyConfiguration>& study_configurations();
const StudyConfiguration& study_configuration(const ChargeConfig& charges);

struct SectorProblem {
    LatticeSpec spec;
    ChargeConfig charges;
    SymmetrySector sector;
    SparseHamiltonian full;
    SparseHamiltonian projected;  // projected, then ordered by diagonal
};

SectorProblem build_sector(const LatticeSpec& spec, const ChargeConfig& charges, const SymmetrySector& sector);

}  // namespace fvqe

#endif  // FVQE_SCHWINGER_HPP
