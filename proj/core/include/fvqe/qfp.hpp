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

// Mode-level model of a quantum frequency processor: electro-optic phase
// modulators and pulse shapers acting on a window of frequency bins, the
// EOM-shaper-EOM frequency beamsplitter, and density-matrix readout from
// beamsplitter power differences.

#ifndef FVQE_QFP_HPP
#define FVQE_QFP_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace fvqe {

using cplx = std::complex<double>;

struct ModeWindow {
    int n_lo = -32;
    int n_hi = 32;
    double spacing = 1.0;  // informational, all physics is index based

    int size() const { return n_hi - n_lo + 1; }
    int index(int bin) const { return bin - n_lo; }
    bool contains(int bin) const { return bin >= n_lo && bin <= n_hi; }
    bool operator==(const ModeWindow& o) const { return n_lo == o.n_lo && n_hi == o.n_hi; }

    // Window spanning [lo - guard, hi + guard].
    static ModeWindow around(int lo, int hi, int guard);
};

struct EomDrive {
    double depth = 0.0;  // modulation index, radians
    double phase = 0.0;
    int harmonic = 1;
};

// Bins absent from the map pass unchanged (coefficient 1).
struct ShaperMask {
    std::map<int, cplx> coefficient;

    // +1 below bin l, -1 on bins >= l (k only documents the lower mode).
    static ShaperMask pi_step(int k, int l, const ModeWindow& window);
};

struct ModeTransform {
    ModeWindow window;
    Eigen::MatrixXcd matrix;

    // Column index k -> row index m amplitude for input bin k, output bin m.
    cplx at(int out_bin, int in_bin) const {
        return matrix(window.index(out_bin), window.index(in_bin));
    }
};

struct GateMetrics {
    double fidelity = 0.0;
    double success_probability = 0.0;
    double reflectivity = 0.0;
    double transmissivity = 0.0;
    double leakage = 0.0;
};

struct CombState {
    Eigen::VectorXd amplitudes;
    double reference_scale = 1.0;  // coherent amplitude alpha
};

using BinPair = std::pair<int, int>;

struct MeasurementPlan {
    std::vector<std::vector<BinPair>> rounds;
    int max_parallel = 5;

    std::size_t pair_count() const;
};

// systematic_fraction scales a completed energy by (1 + u), u uniform in
// [-s, s]; statistical_sigma is the Gaussian noise on each power reading
// in units of the total single-photon flux.
struct NoiseModel {
    double systematic_fraction = 0.0;
    double statistical_sigma = 0.0;
    std::uint64_t seed = 0;

    bool noiseless() const { return systematic_fraction == 0.0 && statistical_sigma == 0.0; }
};

struct DensityMatrix {
    Eigen::MatrixXd rho;
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> measured;

    int dim() const { return static_cast<int>(rho.rows()); }
};

// Sideband convention: V_mn = J_{(m-n)/h}(depth) exp(i (m-n)/h (phase + pi/2))
// for m-n divisible by the harmonic h, zero otherwise.
ModeTransform eom_transform(const EomDrive& drive, const ModeWindow& window);

ModeTransform shaper_transform(const ShaperMask& mask, const ModeWindow& window);

// Product in application order: the last element acts first.
ModeTransform compose(const std::vector<ModeTransform>& sequence);

// EOM(depth, 0) * PS(pi step between k and l) * EOM(depth, pi).
ModeTransform hadamard_transform(double depth, const ModeWindow& window, BinPair pair);

// Default window is the pair with 32 sidebands on each side.
GateMetrics hadamard_metrics(double depth, BinPair pair = {0, 1});
GateMetrics hadamard_metrics(double depth, const ModeWindow& window, BinPair pair);

// 2x2 block [[W_kk, W_kl], [W_lk, W_ll]] of the Hadamard construction after
// removing the input and output phases a pulse shaper can compensate.
Eigen::Matrix2cd hadamard_block(double depth, BinPair pair = {0, 1});
Eigen::Matrix2cd ideal_hadamard();

MeasurementPlan plan_measurements(const std::vector<BinPair>& pairs, int max_parallel);

// Diagonal from per-bin powers, off-diagonal from the flux difference
// D = P_k - P_l behind the beamsplitter, inverted exactly through the gate
// block. Throws IncompleteMeasurement if a pair in `required` is not in
// the plan.
DensityMatrix measure_rho(const CombState& state, const MeasurementPlan& plan,
                          const Eigen::Matrix2cd& gate, const NoiseModel& noise,
                          std::mt19937_64& rng, const std::vector<BinPair>& required = {});
DensityMatrix measure_rho(const CombState& state, const MeasurementPlan& plan, double gate_depth,
                          const NoiseModel& noise, const std::vector<BinPair>& required = {});

double comb_expectation(const CombState& state, const Eigen::MatrixXd& h);

// sum_kl rho_kl h_kl; throws IncompleteMeasurement when a nonzero h_kl
// was not measured.
double rho_expectation(const DensityMatrix& rho, const Eigen::MatrixXd& h);

}  // namespace fvqe

#endif  // FVQE_QFP_HPP
