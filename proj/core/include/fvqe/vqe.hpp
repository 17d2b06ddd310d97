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

#ifndef FVQE_VQE_HPP
#define FVQE_VQE_HPP

#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fvqe/qfp.hpp"

namespace fvqe {

// Real symmetric matrix; construction rejects any asymmetry.
class HermitianOperator {
public:
    HermitianOperator() = default;
    explicit HermitianOperator(Eigen::MatrixXd h);

    int dim() const { return static_cast<int>(h_.rows()); }
    const Eigen::MatrixXd& matrix() const { return h_; }
    double operator()(int k, int l) const { return h_(k, l); }

    // Off-diagonal (k < l) positions with nonzero entries, row-major.
    std::vector<BinPair> offdiagonal_pattern() const;

private:
    Eigen::MatrixXd h_;
};

struct EnergyRecord {
    double value = 0.0;
    double stat_sigma = 0.0;
    double sys_sigma = 0.0;

    double sigma() const { return std::hypot(stat_sigma, sys_sigma); }
};

struct VqeIteration {
    Eigen::VectorXd theta;
    double energy = 0.0;
    DensityMatrix rho;
};

struct VqeConfig {
    double step_size = 0.5;
    int max_iter = 50;
    int trailing_window = 10;
    // Multiplies the step after every accepted update; 1 keeps it fixed.
    double step_growth = 1.2;
    int max_halvings = 40;
    double rel_tol = 1e-8;
    int tol_streak = 3;
    double gate_depth = 0.8283;
    bool ideal_gate = false;
    int max_parallel = 5;
};

struct VqeRun {
    std::vector<VqeIteration> iterations;
    std::vector<BinPair> measured_pairs;
    int rounds_per_iteration = 0;
    int evaluations = 0;
    double final_step = 0.0;
    double systematic_shift = 0.0;  // the u drawn for this run
    bool converged = false;
    EnergyRecord energy;
};

// a_0 = cos(phi), a_k = -(sin(phi)/phi) theta_k, phi = |theta|.
Eigen::VectorXd ucc_amplitudes(const Eigen::VectorXd& theta);

// Jacobian da/dtheta, d x (d-1).
Eigen::MatrixXd ucc_jacobian(const Eigen::VectorXd& theta);

double ucc_energy(const HermitianOperator& h, const Eigen::VectorXd& theta);

// Generator residuals r_k = 2 sum_m (rho_km h_m0 - rho_0m h_mk), the energy
// slope along exp(t A_k) with A_k = c_0^+ c_k - c_k^+ c_0.
Eigen::VectorXd acse_residual(const DensityMatrix& rho, const HermitianOperator& h);

// dE/dtheta from the measured density matrix, mapped from the generator
// residuals through the ansatz Jacobian.
Eigen::VectorXd acse_gradient(const DensityMatrix& rho, const HermitianOperator& h,
                              const Eigen::VectorXd& theta);

std::pair<double, Eigen::VectorXd> exact_ground(const HermitianOperator& h);

VqeRun vqe_minimize(const HermitianOperator& h, const NoiseModel& noise, const VqeConfig& config = {});

}  // namespace fvqe

#endif  // FVQE_VQE_HPP
