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

// Published reference numbers for the four-site Schwinger study and the
// light-nuclei runs, plus independently frozen values computed once from
// the exact ground states. Published values are rounded as printed.

#ifndef FVQE_TESTS_REFERENCE_DATA_HPP
#define FVQE_TESTS_REFERENCE_DATA_HPP

#include <array>
#include <string>
#include <vector>

namespace fvqe::ref {

struct SectorRow {
    const char* charges;  // ChargeConfig::parse syntax
    int d;
    int d_sym;
    double vqe;        // published VQE energy
    double vqe_sigma;  // published statistical sigma
    double exact;      // frozen exact ground energy
};

// Hilbert-space census, published VQE energies and frozen exact energies.
inline const std::vector<SectorRow>& sectors() {
    static const std::vector<SectorRow> rows = {
        {"vac", 53, 9, -2.01503, 0.00001, -2.0157506304},
        {"0", 50, 26, -0.73167, 0.00002, -0.7332142966},
        {"0,0", 16, 9, 0.91843, 0.00002, 0.9176292954},
        {"0,2", 31, 16, 0.68691, 0.00001, 0.6865401048},
        {"0,4", 35, 17, 0.59856, 0.00006, 0.5975663186},
        {"0,1", 67, 41, -0.92433, 0.00002, -0.9262391013},
        {"0,3", 95, 58, 0.289190, 0.000009, 0.2886913625},
        {"0,0,0", 13, 7, 6.42752, 0.00008, 6.4268533266},
        {"0,0,2", 5, 5, 2.428332, 0.000001, 2.4282202113},
        {"0,0,4", 5, 5, 2.300160, 0.000002, 2.3},
        {"0,2,4", 9, 5, 2.210773, 0.000003, 2.2106233150},
        {"0,0,1", 59, 59, 0.5418, 0.0004, 0.5362747428},
        {"0,0,3", 31, 31, 1.83890, 0.00001, 1.8380028976},
        {"0,2,1", 67, 35, 0.22861, 0.00004, 0.2276063112},
        {"0,2,3", 62, 62, 0.3731, 0.0001, 0.3711703900},
        {"0,2,5", 46, 24, 1.535129, 0.000009, 1.5345477070},
        {"0,4,1", 68, 68, 0.3466, 0.0003, 0.3446869072},
    };
    return rows;
}

// Exact-column potentials, rounded to four decimals as published.
inline constexpr double kVacuumEnergy = -2.0158;
inline constexpr double kHeavyMesonMass = 1.2825;
inline constexpr std::array<double, 3> kVqq = {0.3683, 0.1372, 0.0482};  // r = 0, 2, 4
inline constexpr std::array<double, 2> kVqqbar = {-1.4756, -0.2606};    // r = 1, 3

struct ThreeBodyRow {
    const char* charges;
    double r1;
    double r2;
    double v3;
};

inline const std::vector<ThreeBodyRow>& three_body() {
    static const std::vector<ThreeBodyRow> rows = {
        {"0,0,0", 0, 0, 3.4901},  {"0,0,2", 0, 2, -0.0464}, {"0,0,4", 0, 4, 0.0033}, {"0,2,4", 2, 3, 0.0561},
        {"0,0,1", 0, 1, 1.2872},  {"0,0,3", 0, 3, 0.1591},  {"0,2,1", 2, 0, 1.2097}, {"0,2,3", 2, 2, 0.1383},
        {"0,2,5", 2, 4, 0.0867},  {"0,4,1", 4, 1, 0.2008},
    };
    return rows;
}

// Gate characterization.
struct GateRow {
    double depth;
    double reflectivity;
    double transmissivity;
    double leakage;  // negative: not published
};
inline constexpr GateRow kGateA = {0.8169, 0.4781, 0.4979, -1.0};
inline constexpr GateRow kGateB = {0.8283, 0.4870, 0.4877, 0.0253};

// Potential fits: central value and 1-sigma projection.
struct FitRef {
    double g2, sigma_g2, m, sigma_m;
};
inline constexpr FitRef kFitLike = {0.365, 0.052, 0.61, 0.14};
inline constexpr FitRef kFitOpposite = {3.75, 0.31, 0.937, 0.071};

inline constexpr double kEftHeavyMass = 4.5;
inline constexpr double kEftC0 = -0.117;
inline constexpr double kEftShallow = -0.59;
inline constexpr double kEftDeep = -2.4;

// Local observables: site (rho) and link (E^2) profiles.
struct Profile {
    std::array<double, 8> rho;
    std::array<double, 8> e2;
};

inline constexpr double kVacuumRho = 0.172982;
inline constexpr double kVacuumE2 = 0.0866971;

// Charges (0,2).
inline constexpr Profile kPair02Raw = {{0.115881, 0.594892, 0.115881, 0.826473, 0.125071, 0.234066, 0.125071, 0.826473},
                                       {0.297446, 0.297446, 0.818435, 0.01883, 0.117114, 0.117114, 0.01883, 0.818435}};
inline constexpr Profile kPair02Vac = {
    {-0.0571012, 0.42191, -0.0571012, 0.653491, -0.0479109, 0.0610843, -0.0479109, 0.653491},
    {0.210749, 0.210749, 0.731738, -0.0678671, 0.0304174, 0.0304174, -0.0678671, 0.731738}};
inline constexpr Profile kPair02One = {
    {-0.0278071, -0.46415, -0.0278071, 0.187407, -0.00937306, 0.0149761, -0.00937306, 0.187407},
    {-0.238353, -0.238353, 0.204377, -0.012637, 0.00738809, 0.00738809, -0.012637, 0.204377}};

// Charges (0,2,1).
inline constexpr Profile kTriple021Raw = {
    {0.168397, 0.640306, 0.168397, 0.402136, 0.152525, 0.197266, 0.152525, 0.402136},
    {0.826857, 0.826857, 0.348244, 0.057447, 0.0989282, 0.0989282, 0.057447, 0.348244}};
inline constexpr Profile kTriple021Vac = {
    {-0.00458463, 0.467324, -0.00458463, 0.229154, -0.0204571, 0.0242844, -0.0204571, 0.229154},
    {0.74016, 0.74016, 0.261547, -0.0292501, 0.0122311, 0.0122311, -0.0292501, 0.261547}};
inline constexpr Profile kTriple021One = {
    {-0.418321, -0.420459, -0.418321, -0.205913, -0.00497328, -0.014303, -0.00497328, -0.205913},
    {-0.209597, -0.209597, -0.21426, -0.000725653, -0.00712178, -0.00712178, -0.000725653, -0.21426}};
inline constexpr Profile kTriple021Two = {
    {0.501635, 1.03178, 0.501635, 0.00184607, 0.0168098, 0.00141658, 0.0168098, 0.00184607},
    {0.492946, 0.492946, -0.00837237, 0.0147168, 0.00071903, 0.00071903, 0.0147168, -0.00837237}};

// Single charge at 0.
inline constexpr Profile kSingleRaw = {
    {0.174705, 0.616012, 0.141965, 0.196036, 0.165461, 0.196036, 0.141965, 0.616012},
    {0.587352, 0.0351434, 0.113403, 0.0830207, 0.0830207, 0.113403, 0.0351434, 0.587352}};
inline constexpr Profile kSingleVac = {
    {0.00172308, 0.44303, -0.0310171, 0.0230541, -0.00752077, 0.0230541, -0.0310171, 0.44303},
    {0.500655, -0.0515537, 0.0267057, -0.0036764, -0.0036764, 0.0267057, -0.0515537, 0.500655}};
// Measured (VQE) vacuum-subtracted single-charge profile.
inline constexpr Profile kSingleVacMeasured = {
    {0.007323, 0.446935, -0.028508, 0.025425, -0.005587, 0.025425, -0.028508, 0.446935},
    {0.503399, -0.049935, 0.028130, -0.002545, -0.002545, 0.028130, -0.049935, 0.503399}};

inline constexpr double kRadiusCharge = -1.76;
inline constexpr double kRadiusChargeSigma = 0.32;
inline constexpr double kRadiusField = 0.33;
inline constexpr double kRadiusFieldSigma = 0.15;

// Light nuclei, MeV. Index 0, 1, 2 = N_max 2, 4, 6.
struct NucleusRef {
    const char* name;
    std::array<int, 3> dims;
    std::array<double, 3> exact;
    std::array<double, 3> qfp;
    std::array<double, 3> qfp_sigma;
    double e_inf;
    double e_inf_sigma;
};
inline const std::vector<NucleusRef>& nuclei() {
    static const std::vector<NucleusRef> rows = {
        {"3H", {5, 15, 34}, {-7.513, -8.060, -8.275}, {-7.508, -8.031, -8.120}, {0.008, 0.040, 0.081}, -8.51, 0.09},
        {"3He", {5, 15, 34}, {-6.800, -7.366, -7.600}, {-6.794, -7.338, -7.470}, {0.007, 0.037, 0.075}, -7.89, 0.08},
        {"4He", {5, 20, 64}, {-27.947, -28.106, -28.148}, {-27.93, -28.03, -27.78}, {0.03, 0.14, 0.28}, -28.04, 0.14},
    };
    return rows;
}
inline constexpr std::array<double, 3> kNuclearSystematics = {0.001, 0.005, 0.01};
inline constexpr double kDeuteronBinding = -2.2246;

}  // namespace fvqe::ref

#endif  // FVQE_TESTS_REFERENCE_DATA_HPP
