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

// Nuclear Hamiltonian ingestion, the separable NLO two-nucleon contact
// potential, and infinite-model-space extrapolation.

#ifndef FVQE_NUCLEAR_HPP
#define FVQE_NUCLEAR_HPP

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fvqe/potential.hpp"
#include "fvqe/vqe.hpp"

namespace fvqe {

inline constexpr double kNucleonMass = 938.918;  // MeV, average of p and n
inline constexpr double kHbarC = 197.327;        // MeV fm

struct NuclearMetadata {
    std::string nucleus;
    int n_max = 0;
    double l_fm = 0.0;
    double hbar_omega = 0.0;
    std::string units = "MeV";
};

struct NuclearProblem {
    NuclearMetadata meta;
    HermitianOperator h;
    double max_asymmetry = 0.0;
    bool symmetrized = false;
};

// Validates and wraps a matrix. Asymmetry up to 1e-10 (relative to the
// largest entry, floor 1) is averaged away with a warning; more is rejected.
NuclearProblem make_problem(const Eigen::MatrixXd& h, const NuclearMetadata& meta, std::ostream* warnings);

// Reads <path> (sparse or dense, see matrix_io.hpp) and the JSON sidecar
// <path>.meta.json with keys nucleus, N_max, L_fm, hbar_omega, units.
NuclearProblem load_problem(const std::string& path, std::ostream* warnings);
void write_metadata(const std::string& path, const NuclearMetadata& meta);

// Every "*.mat" file of a directory, ordered by N_max.
std::vector<NuclearProblem> load_directory(const std::string& dir, std::ostream* warnings);

enum class NnChannel { singlet, triplet };

// V(p', p) = kappa [C~ + C (p'^2 + p^2) / s^2] below a sharp cutoff, with
// the Lippmann-Schwinger kernel M/(2 pi^2) int q^2 dq / (p^2 - q^2 + i0).
// The printed couplings carry no normalization, so kappa and the momentum
// scale s are conventions: the defaults read C~ in 1e-4 MeV^-2 and C in
// 1e-8 MeV^-4 with an extra 2/pi^2 measure factor.
struct ChannelCouplings {
    NnChannel channel = NnChannel::triplet;
    double c_tilde = 0.0;
    double c = 0.0;
    double cutoff = 337.0;  // MeV
    double momentum_scale = 100.0;
    double normalization = 2e-4 / (3.14159265358979323846 * 3.14159265358979323846);
    double hbar_omega = 22.0;
    double c_e = 0.01929;  // three-body strength, informational only
    double mass = kNucleonMass;

    static ChannelCouplings singlet_nlo();
    static ChannelCouplings triplet_nlo();
};

// On-shell T(p, p) in MeV^-2; S = 1 - i M p T / (2 pi).
std::complex<double> nn_t_matrix(const ChannelCouplings& c, double p);

// Phase shift in degrees on the continuous branch that starts at
// 180 * (number of bound states) as p -> 0.
double nn_phase_shift(const ChannelCouplings& c, double p);

// Binding poles in MeV, ascending.
std::vector<double> nn_bound_states(const ChannelCouplings& c);

// The normalization that puts a pole at `energy`, nearest the current one.
double calibrate_normalization(const ChannelCouplings& c, double energy);

struct ExtrapolationPoint {
    double l_fm = 0.0;
    EnergyRecord e;
};

struct ExtrapolationOptions {
    double threshold = 0.0;  // E_inf of the A-1 system, MeV
    double mass = kNucleonMass;
    double hbar_c = kHbarC;
    double a_max = 1000.0;  // MeV
    int replicas = 10000;
    std::uint64_t seed = 1;
    std::vector<double> band_l;  // empty: the measured L values
};

struct BandPoint {
    double l_fm = 0.0;
    double mean = 0.0;
    double sigma = 0.0;
    double lo = 0.0;  // 16th percentile
    double hi = 0.0;  // 84th percentile
};

struct ExtrapolationFit {
    double e_infinity = 0.0;
    double a = 0.0;
    double k_infinity = 0.0;  // fm^-1
    double residual_norm = 0.0;
    bool a_at_bound = false;
    Estimate e_infinity_mc;
    std::vector<BandPoint> band;
    int replicas = 0;
    int failed_replicas = 0;
    // Fraction of replicas whose curve at the largest L lies inside that
    // point's systematic band.
    double coverage_at_largest = 0.0;
};

// E(L) = E_inf + a exp(-2 k L), k = sqrt(-2 m (E_inf - threshold)) / hbar_c.
double extrapolation_curve(double l_fm, double e_infinity, double a, const ExtrapolationOptions& o);

// Central fit plus a replica Monte Carlo: each point uniform within
// +-sys_sigma and Gaussian with stat_sigma. replicas <= 1 skips it.
ExtrapolationFit extrapolate(const std::vector<ExtrapolationPoint>& points, const ExtrapolationOptions& options);

}  // namespace fvqe

#endif  // FVQE_NUCLEAR_HPP
