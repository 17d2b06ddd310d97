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
#include <set>

#include "fvqe/errors.hpp"
#include "fvqe/qfp.hpp"

namespace fvqe {
namespace {

// Frozen from an independent numpy evaluation of the same construction.
constexpr double kR8169 = 0.47813346, kT8169 = 0.49786930, kLeak8169 = 0.02399725;
constexpr double kR8283 = 0.48699508, kT8283 = 0.48774529, kLeak8283 = 0.02525963;

TEST(EomTransform, MatchesJacobiAngerExpansion) {
    ModeWindow w{-20, 20};
    EomDrive drive{0.9, 0.3, 1};
    ModeTransform t = eom_transform(drive, w);
    for (int m = -3; m <= 3; ++m) {
        for (int n = -3; n <= 3; ++n) {
            int k = m - n;
            double j = k >= 0 ? std::cyl_bessel_j(k, 0.9) : ((k % 2) ? -1.0 : 1.0) * std::cyl_bessel_j(-k, 0.9);
            cplx expect = j * std::exp(cplx(0, k * (0.3 + M_PI / 2)));
            EXPECT_NEAR(std::abs(t.at(m, n) - expect), 0.0, 1e-12) << m << "," << n;
        }
    }
}

TEST(EomTransform, ColumnsAreNormalizedAwayFromTheEdge) {
    ModeWindow w{-30, 30};
    ModeTransform t = eom_transform({1.2, 0.0, 1}, w);
    for (int n = -5; n <= 5; ++n) EXPECT_NEAR(t.matrix.col(w.index(n)).squaredNorm(), 1.0, 1e-12);
}

TEST(ShaperMask, PiStepFlipsUpperBins) {
    ModeWindow w{-4, 4};
    ShaperMask m = ShaperMask::pi_step(0, 1, w);
    for (int n = -4; n <= 4; ++n) {
        // Bins absent from the mask pass unchanged.
        cplx c = m.coefficient.count(n) ? m.coefficient.at(n) : cplx(1.0, 0.0);
        EXPECT_EQ(c, cplx(n >= 1 ? -1.0 : 1.0, 0.0));
    }
}

TEST(ShaperMask, RejectsGain) {
    ShaperMask m;
    m.coefficient[0] = cplx(1.5, 0.0);
    EXPECT_THROW(shaper_transform(m, ModeWindow{-2, 2}), InvalidMask);
}

TEST(HadamardMetrics, FrozenValues) {
    GateMetrics a = hadamard_metrics(0.8169);
    EXPECT_NEAR(a.reflectivity, kR8169, 1e-7);
    EXPECT_NEAR(a.transmissivity, kT8169, 1e-7);
    EXPECT_NEAR(a.leakage, kLeak8169, 1e-7);
    GateMetrics b = hadamard_metrics(0.8283);
    EXPECT_NEAR(b.reflectivity, kR8283, 1e-7);
    EXPECT_NEAR(b.transmissivity, kT8283, 1e-7);
    EXPECT_NEAR(b.leakage, kLeak8283, 1e-7);
    EXPECT_GE(b.fidelity, 0.99999);
}

TEST(HadamardMetrics, ZeroDepthIsIdentity) {
    GateMetrics g = hadamard_metrics(0.0);
    EXPECT_NEAR(g.transmissivity, 1.0, 1e-15);
    EXPECT_NEAR(g.reflectivity, 0.0, 1e-15);
    EXPECT_NEAR(g.leakage, 0.0, 1e-15);
    EXPECT_NEAR(g.success_probability, 1.0, 1e-15);
}

TEST(HadamardMetrics, SweepConservesProbability) {
    for (int i = 0; i <= 200; ++i) {
        GateMetrics g = hadamard_metrics(0.01 * i);
        EXPECT_LE(g.reflectivity + g.transmissivity + g.leakage, 1.0 + 1e-12);
        EXPECT_GE(g.leakage, -1e-12);
    }
}

TEST(HadamardMetrics, IndependentOfPairPlacement) {
    GateMetrics a = hadamard_metrics(0.8283, {0, 1});
    GateMetrics b = hadamard_metrics(0.8283, {5, 6});
    EXPECT_NEAR(a.reflectivity, b.reflectivity, 1e-12);
    EXPECT_NEAR(a.fidelity, b.fidelity, 1e-12);
}

TEST(HadamardMetrics, NarrowWindowRejected) {
    EXPECT_THROW(hadamard_metrics(0.8, ModeWindow{0, 2}, {0, 1}), WindowTooSmall);
}

TEST(HadamardBlock, CloseToIdealAfterPhaseAlignment) {
    Eigen::Matrix2cd b = hadamard_block(0.8283);
    Eigen::Matrix2cd h = ideal_hadamard();
    double overlap = std::abs((b.adjoint() * h).trace()) / 2.0;
    EXPECT_GT(overlap, 0.97);
    EXPECT_NEAR(b(0, 0).imag(), 0.0, 1e-12);
    EXPECT_GT(b(0, 0).real(), 0.0);
}

TEST(PlanMeasurements, RoundsAreDisjointAndComplete) {
    std::vector<BinPair> pairs;
    for (int k = 0; k < 9; ++k) {
        for (int l = k + 1; l < 9; ++l) pairs.emplace_back(l, k);
    }
    MeasurementPlan plan = plan_measurements(pairs, 5);
    std::set<BinPair> covered;
    for (const auto& round : plan.rounds) {
        EXPECT_LE(round.size(), 5u);
        std::set<int> bins;
        for (const auto& p : round) {
            EXPECT_TRUE(bins.insert(p.first).second);
            EXPECT_TRUE(bins.insert(p.second).second);
            covered.insert(p);
        }
    }
    EXPECT_EQ(covered.size(), pairs.size());
    EXPECT_EQ(plan.pair_count(), pairs.size());
    EXPECT_THROW(plan_measurements({{2, 2}}, 5), InvalidArgument);
}

Eigen::VectorXd random_state(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::VectorXd a(d);
    for (int i = 0; i < d; ++i) a(i) = g(rng);
    return a.normalized();
}

TEST(MeasureRho, NoiselessMatchesOuterProduct) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        int d = 2 + trial % 12;
        Eigen::VectorXd a = random_state(d, rng);
        std::vector<BinPair> pairs;
        for (int k = 0; k < d; ++k) {
            for (int l = k + 1; l < d; ++l) pairs.emplace_back(k, l);
        }
        MeasurementPlan plan = plan_measurements(pairs, 5);
        for (const Eigen::Matrix2cd& gate : {ideal_hadamard(), hadamard_block(0.8283), hadamard_block(0.6)}) {
            DensityMatrix rho = measure_rho({a, 1.0}, plan, gate, NoiseModel{}, rng);
            EXPECT_TRUE(rho.measured.all());
            EXPECT_LT((rho.rho - a * a.transpose()).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(MeasureRho, RejectsMissingPairsAndBadStates) {
    Eigen::VectorXd a = Eigen::VectorXd::Constant(3, 1.0 / std::sqrt(3.0));
    MeasurementPlan plan = plan_measurements({{0, 1}}, 5);
    EXPECT_THROW(measure_rho({a, 1.0}, plan, 0.8283, NoiseModel{}, {{0, 2}}), IncompleteMeasurement);
    EXPECT_THROW(measure_rho({2.0 * a, 1.0}, plan, 0.8283, NoiseModel{}), NormalizationError);
    DensityMatrix rho = measure_rho({a, 1.0}, plan, 0.8283, NoiseModel{});
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(3, 3);
    h(0, 2) = h(2, 0) = 1.0;
    EXPECT_THROW(rho_expectation(rho, h), IncompleteMeasurement);
}

TEST(MeasureRho, SameSeedSameReadout) {
    Eigen::VectorXd a = Eigen::VectorXd::Constant(4, 0.5);
    MeasurementPlan plan = plan_measurements({{0, 1}, {2, 3}, {0, 3}}, 5);
    NoiseModel noise{0.0, 0.01, 42};
    DensityMatrix r1 = measure_rho({a, 1.0}, plan, 0.8283, noise);
    DensityMatrix r2 = measure_rho({a, 1.0}, plan, 0.8283, noise);
    EXPECT_EQ(r1.rho, r2.rho);
}

TEST(CombState, ExpectationScalesWithFlux) {
    std::mt19937_64 rng(3);
    Eigen::VectorXd a = random_state(6, rng);
    Eigen::MatrixXd h = Eigen::MatrixXd::Random(6, 6);
    h = (h + h.transpose()).eval();
    const double base = comb_expectation({a, 1.0}, h);
    for (double alpha : {0.5, 2.0, 3.0, 10.0}) {
        EXPECT_EQ(comb_expectation({a, alpha}, h), alpha * alpha * base);
    }
}

TEST(CombState, NormalizedReadoutIndependentOfFlux) {
    std::mt19937_64 rng(5);
    Eigen::VectorXd a = random_state(5, rng);
    MeasurementPlan plan = plan_measurements({{0, 1}, {1, 2}, {3, 4}}, 5);
    DensityMatrix r1 = measure_rho({a, 1.0}, plan, 0.8283, NoiseModel{});
    DensityMatrix r2 = measure_rho({a, 4.0}, plan, 0.8283, NoiseModel{});
    EXPECT_LT((r1.rho - r2.rho).cwiseAbs().maxCoeff(), 1e-12);
}

}  // namespace
}  // namespace fvqe
