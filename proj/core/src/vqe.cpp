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

#include "fvqe/vqe.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "fvqe/errors.hpp"

namespace fvqe {

namespace {

// sin(phi)/phi and (d/dphi (sin(phi)/phi)) / phi, with series near zero.
void sinc_terms(double phi, double& s, double& t) {
    if (phi < 1e-3) {
        double p2 = phi * phi;
        s = 1.0 - p2 / 6.0 + p2 * p2 / 120.0;
        t = -1.0 / 3.0 + p2 / 30.0 - p2 * p2 / 840.0;
    } else {
        s = std::sin(phi) / phi;
        t = (phi * std::cos(phi) - std::sin(phi)) / (phi * phi * phi);
    }
}

// Fills unmeasured entries of rho with the model state a a^T.
DensityMatrix complete_with_model(const DensityMatrix& rho, const Eigen::VectorXd& a) {
    DensityMatrix out = rho;
    for (int k = 0; k < rho.dim(); ++k) {
        for (int l = 0; l < rho.dim(); ++l) {
            if (!rho.measured(k, l)) out.rho(k, l) = a(k) * a(l);
        }
    }
    out.measured.setConstant(true);
    return out;
}

}  // namespace

HermitianOperator::HermitianOperator(Eigen::MatrixXd h) : h_(std::move(h)) {
    if (h_.rows() != h_.cols()) throw DimensionError("HermitianOperator: matrix is not square");
    if (h_.rows() < 1) throw DimensionError("HermitianOperator: empty matrix");
    for (int k = 0; k < h_.rows(); ++k) {
        for (int l = k + 1; l < h_.cols(); ++l) {
            if (h_(k, l) != h_(l, k)) {
                std::ostringstream msg;
                msg << "HermitianOperator: h(" << k << "," << l << ") != h(" << l << "," << k << ")";
                throw AsymmetricMatrix(msg.str());
            }
        }
    }
    if (!h_.allFinite()) throw InvalidArgument("HermitianOperator: non-finite entry");
}

std::vector<BinPair> HermitianOperator::offdiagonal_pattern() const {
    std::vector<BinPair> out;
    for (int k = 0; k < dim(); ++k) {
        for (int l = k + 1; l < dim(); ++l) {
            if (h_(k, l) != 0.0) out.emplace_back(k, l);
        }
    }
    return out;
}

Eigen::VectorXd ucc_amplitudes(const Eigen::VectorXd& theta) {
    const int d = static_cast<int>(theta.size()) + 1;
    const double phi = theta.norm();
    double s, t;
    sinc_terms(phi, s, t);
    Eigen::VectorXd a(d);
    a(0) = std::cos(phi);
    a.tail(d - 1) = -s * theta;
    return a;
}

Eigen::MatrixXd ucc_jacobian(const Eigen::VectorXd& theta) {
    const int n = static_cast<int>(theta.size());
    const double phi = theta.norm();
    double s, t;
    sinc_terms(phi, s, t);
    Eigen::MatrixXd j(n + 1, n);
    j.row(0) = -s * theta.transpose();
    j.bottomRows(n) = -s * Eigen::MatrixXd::Identity(n, n) - t * theta * theta.transpose();
    return j;
}

double ucc_energy(const HermitianOperator& h, const Eigen::VectorXd& theta) {
    if (theta.size() + 1 != h.dim()) throw DimensionError("ucc_energy: theta has the wrong length");
    Eigen::VectorXd a = ucc_amplitudes(theta);
    return a.dot(h.matrix() * a);
}

Eigen::VectorXd acse_residual(const DensityMatrix& rho, const HermitianOperator& h) {
    const int d = h.dim();
    if (rho.dim() != d) throw DimensionError("acse_residual: rho and H dimensions differ");
    const Eigen::MatrixXd& r = rho.rho;
    const Eigen::MatrixXd& m = h.matrix();
    Eigen::VectorXd out(d - 1);
    for (int k = 1; k < d; ++k) out(k - 1) = 2.0 * (r.row(k).dot(m.col(0)) - r.row(0).dot(m.col(k)));
    return out;
}

Eigen::VectorXd acse_gradient(const DensityMatrix& rho, const HermitianOperator& h,
                              const Eigen::VectorXd& theta) {
    const int d = h.dim();
    if (rho.dim() != d || theta.size() + 1 != d) throw DimensionError("acse_gradient: dimension mismatch");
    if (d == 1) return Eigen::VectorXd(0);
    Eigen::MatrixXd jac = ucc_jacobian(theta);
    const double c = std::cos(theta.norm());
    if (std::abs(c) < 1e-6) {
        // The generators A_k psi no longer span the tangent space when the
        // reference amplitude vanishes; use the model state instead.
        Eigen::VectorXd a = ucc_amplitudes(theta);
        return 2.0 * jac.transpose() * (h.matrix() * a);
    }
    // dpsi/dtheta_j = sum_k B_jk A_k psi with B_jk = -J_kj / a_0.
    Eigen::VectorXd r = acse_residual(rho, h);
    return -(jac.bottomRows(d - 1).transpose() * r) / c;
}

std::pair<double, Eigen::VectorXd> exact_ground(const HermitianOperator& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.matrix());
    if (es.info() != Eigen::Success) throw DivergenceError("exact_ground: eigensolver failed");
    Eigen::VectorXd v = es.eigenvectors().col(0);
    for (int i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-12) {
            if (v(i) < 0) v = -v;
            break;
        }
    }
    return {es.eigenvalues()(0), v};
}

VqeRun vqe_minimize(const HermitianOperator& h, const NoiseModel& noise, const VqeConfig& config) {
    const int d = h.dim();
    if (d < 1) throw DimensionError("vqe_minimize: empty Hamiltonian");
    if (!(config.step_size > 0)) throw InvalidArgument("vqe_minimize: step_size must be positive");
    if (config.max_iter < 1) throw InvalidArgument("vqe_minimize: max_iter must be >= 1");
    if (config.trailing_window < 1) throw InvalidArgument("vqe_minimize: trailing_window must be >= 1");

    std::mt19937_64 rng(noise.seed);
    VqeRun run;
    if (noise.systematic_fraction > 0) {
        std::uniform_real_distribution<double> u(-noise.systematic_fraction, noise.systematic_fraction);
        run.systematic_shift = u(rng);
    }
    run.measured_pairs = h.offdiagonal_pattern();
    const MeasurementPlan plan = plan_measurements(run.measured_pairs, config.max_parallel);
    run.rounds_per_iteration = static_cast<int>(plan.rounds.size());
    const Eigen::Matrix2cd gate = config.ideal_gate ? ideal_hadamard() : hadamard_block(config.gate_depth);

    auto evaluate = [&](const Eigen::VectorXd& theta, double& energy, DensityMatrix& rho) {
        CombState state{ucc_amplitudes(theta), 1.0};
        rho = measure_rho(state, plan, gate, noise, rng, run.measured_pairs);
        energy = rho_expectation(rho, h.matrix()) * (1.0 + run.systematic_shift);
        ++run.evaluations;
        if (!std::isfinite(energy)) {
            throw DivergenceError("vqe_minimize: non-finite energy; try a smaller step_size");
        }
    };

    Eigen::VectorXd theta = Eigen::VectorXd::Zero(d - 1);
    double energy;
    DensityMatrix rho;
    evaluate(theta, energy, rho);
    run.iterations.push_back({theta, energy, rho});

    double step = config.step_size;
    int streak = 0;
    while (d > 1 && static_cast<int>(run.iterations.size()) < config.max_iter) {
        Eigen::VectorXd a = ucc_amplitudes(theta);
        Eigen::VectorXd g = acse_gradient(complete_with_model(rho, a), h, theta);
        if (g.norm() == 0.0) {
            run.converged = true;
            break;
        }
        bool accepted = false;
        Eigen::VectorXd trial;
        double trial_energy = 0.0;
        DensityMatrix trial_rho;
        for (int halving = 0; halving <= config.max_halvings; ++halving) {
            trial = theta - step * g;
            evaluate(trial, trial_energy, trial_rho);
            if (trial_energy <= energy) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            run.converged = true;
            break;
        }
        const double rel = std::abs(trial_energy - energy) / std::max(std::abs(trial_energy), 1e-300);
        theta = trial;
        energy = trial_energy;
        rho = trial_rho;
        run.iterations.push_back({theta, energy, rho});
        step *= config.step_growth;
        streak = rel < config.rel_tol ? streak + 1 : 0;
        if (streak >= config.tol_streak) {
            run.converged = true;
            break;
        }
    }
    if (d == 1) run.converged = true;
    run.final_step = step;

    const int n = static_cast<int>(run.iterations.size());
    const int w = std::min(config.trailing_window, n);
    double mean = 0.0;
    for (int i = n - w; i < n; ++i) mean += run.iterations[i].energy;
    mean /= w;
    double var = 0.0;
    for (int i = n - w; i < n; ++i) var += (run.iterations[i].energy - mean) * (run.iterations[i].energy - mean);
    run.energy.value = mean;
    run.energy.stat_sigma = w > 1 ? std::sqrt(var / (w - 1)) : 0.0;
    run.energy.sys_sigma = std::abs(mean) * noise.systematic_fraction;
    return run;
}

}  // namespace fvqe
