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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fvqe/errors.hpp"
#include "fvqe/vqe.hpp"

namespace fvqe {
namespace {

Eigen::MatrixXd random_symmetric(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = g(rng);
    }
    return m;
}

Eigen::VectorXd random_theta(int n, double scale, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, scale);
    Eigen::VectorXd t(n);
    for (int i = 0; i < n; ++i) t(i) = g(rng);
    return t;
}

DensityMatrix full_rho(const Eigen::VectorXd& a) {
    DensityMatrix r;
    r.rho = a * a.transpose();
    r.measured.setConstant(a.size(), a.size(), true);
    return r;
}

TEST(Ucc, NormPreserved) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + trial % 40;
        Eigen::VectorXd th = random_theta(n, trial % 3 == 0 ? 1e-5 : 2.0, rng);
        EXPECT_NEAR(ucc_amplitudes(th).norm(), 1.0, 1e-12);
    }
    EXPECT_NEAR(ucc_amplitudes(Eigen::VectorXd::Zero(4)).norm(), 1.0, 1e-15);
}

TEST(Ucc, ClosedFormForOneParameter) {
    Eigen::VectorXd th(1);
    th << 0.3;
    Eigen::VectorXd a = ucc_amplitudes(th);
    EXPECT_NEAR(a(0), std::cos(0.3), 1e-15);
    EXPECT_NEAR(a(1), -std::sin(0.3), 1e-15);
}

TEST(Ucc, JacobianMatchesFiniteDifferences) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 1 + trial % 8;
        Eigen::VectorXd th = random_theta(n, trial % 5 == 0 ? 1e-4 : 1.0, rng);
        Eigen::MatrixXd j = ucc_jacobian(th);
        const double h = 1e-6;
        for (int k = 0; k < n; ++k) {
            Eigen::VectorXd p = th, m = th;
            p(k) += h;
            m(k) -= h;
            Eigen::VectorXd fd = (ucc_amplitudes(p) - ucc_amplitudes(m)) / (2 * h);
            EXPECT_LT((fd - j.col(k)).norm(), 1e-8);
        }
    }
}

// Gradient from the contracted residuals against central differences of
// the energy, 100 random instances.
TEST(AcseGradient, MatchesFiniteDifferences) {
    std::mt19937_64 rng(3);
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        int d = 2 + trial % 10;
        HermitianOperator h(random_symmetric(d, rng));
        Eigen::VectorXd th = random_theta(d - 1, 0.5, rng);
        if (std::abs(std::cos(th.norm())) < 1e-3) continue;
        Eigen::VectorXd g = acse_gradient(full_rho(ucc_amplitudes(th)), h, th);
        const double step = 1e-5;
        Eigen::VectorXd fd(d - 1);
        for (int k = 0; k < d - 1; ++k) {
            Eigen::VectorXd p = th, m = th;
            p(k) += step;
            m(k) -= step;
            fd(k) = (ucc_energy(h, p) - ucc_energy(h, m)) / (2 * step);
        }
        EXPECT_LT((g - fd).norm(), 1e-5 * std::max(1.0, fd.norm())) << "trial " << trial;
        ++checked;
    }
    EXPECT_GE(checked, 95);
}

TEST(AcseGradient, ReferenceSlopeIsMinusTwiceCoupling) {
    std::mt19937_64 rng(4);
    HermitianOperator h(random_symmetric(5, rng));
    Eigen::VectorXd th = Eigen::VectorXd::Zero(4);
    Eigen::VectorXd g = acse_gradient(full_rho(ucc_amplitudes(th)), h, th);
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(g(k), -2.0 * h(0, k + 1), 1e-14);
}

TEST(HermitianOperator, RejectsAsymmetryAndShape) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(3, 3);
    m(0, 1) = 1e-13;
    EXPECT_THROW(HermitianOperator{m}, AsymmetricMatrix);
    EXPECT_THROW(HermitianOperator{Eigen::MatrixXd(2, 3)}, DimensionError);
    EXPECT_THROW(HermitianOperator{Eigen::MatrixXd(0, 0)}, DimensionError);
}

TEST(HermitianOperator, PatternListsUpperNonzeros) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
    m(0, 2) = m(2, 0) = 1;
    m(1, 3) = m(3, 1) = -2;
    auto p = HermitianOperator(m).offdiagonal_pattern();
    ASSERT_EQ(p.size(), 2u);
    EXPECT_EQ(p[0], BinPair(0, 2));
    EXPECT_EQ(p[1], BinPair(1, 3));
}

TEST(ExactGround, TwoLevel) {
    Eigen::MatrixXd m(2, 2);
    m << 0, 1, 1, 0;
    auto [e, v] = exact_ground(HermitianOperator(m));
    EXPECT_NEAR(e, -1.0, 1e-14);
    EXPECT_GT(v(0), 0.0);
}

TEST(VqeMinimize, NoiselessReachesGround) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        int d = 3 + trial;
        Eigen::MatrixXd m = random_symmetric(d, rng);
        // Put the lowest diagonal first, as the sector builder does.
        for (int i = 0; i < d; ++i) m(i, i) += 2.0 * i;
        HermitianOperator h(m);
        VqeConfig c;
        c.max_iter = 300;
        VqeRun run = vqe_minimize(h, NoiseModel{}, c);
        double e0 = exact_ground(h).first;
        EXPECT_LT(std::abs(run.energy.value - e0), 5e-3 * std::abs(e0) + 1e-6) << "d=" << d;
    }
}

TEST(VqeMinimize, OneByOneIsTrivial) {
    Eigen::MatrixXd m(1, 1);
    m << -2.2246;
    VqeRun run = vqe_minimize(HermitianOperator(m), NoiseModel{});
    EXPECT_DOUBLE_EQ(run.energy.value, -2.2246);
    EXPECT_TRUE(run.converged);
}

TEST(VqeMinimize, DeterministicForSeed) {
    std::mt19937_64 rng(6);
    HermitianOperator h(random_symmetric(6, rng));
    NoiseModel n{0.01, 1e-3, 77};
    VqeRun a = vqe_minimize(h, n), b = vqe_minimize(h, n);
    ASSERT_EQ(a.iterations.size(), b.iterations.size());
    for (std::size_t i = 0; i < a.iterations.size(); ++i) EXPECT_EQ(a.iterations[i].energy, b.iterations[i].energy);
    EXPECT_EQ(a.energy.value, b.energy.value);
}

TEST(VqeMinimize, SystematicShiftWithinBand) {
    std::mt19937_64 rng(7);
    HermitianOperator h(random_symmetric(4, rng));
    for (std::uint64_t seed = 1; seed < 50; ++seed) {
        VqeRun run = vqe_minimize(h, NoiseModel{0.01, 0.0, seed});
        EXPECT_LE(std::abs(run.systematic_shift), 0.01);
        EXPECT_NEAR(run.energy.sys_sigma, 0.01 * std::abs(run.energy.value), 1e-15);
    }
}

TEST(VqeMinimize, RejectsBadConfig) {
    HermitianOperator h(Eigen::MatrixXd::Identity(2, 2));
    VqeConfig c;
    c.step_size = 0;
    EXPECT_THROW(vqe_minimize(h, NoiseModel{}, c), InvalidArgument);
}

}  // namespace
}  // namespace fvqe
