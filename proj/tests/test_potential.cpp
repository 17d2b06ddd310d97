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
#include "fvqe/potential.hpp"
#include "fvqe/schwinger.hpp"
#include "reference_data.hpp"

namespace fvqe {
namespace {

EnergyTable exact_table() {
    EnergyTable t;
    for (const auto& row : ref::sectors()) t.entries[ChargeConfig::parse(row.charges)] = {row.exact, 0.0, 0.0};
    return t;
}

EnergyTable noisy_table(double stat, double sys) {
    EnergyTable t = exact_table();
    for (auto& [c, e] : t.entries) {
        e.stat_sigma = stat;
        e.sys_sigma = sys * std::abs(e.value);
    }
    return t;
}

TEST(Potentials, FrozenTwoBody) {
    EnergyTable t = exact_table();
    EXPECT_NEAR(heavy_meson_mass(t).value, 1.2825363337, 1e-9);
    const double vqq[] = {0.3683072584, 0.1372180677, 0.0482442815};
    for (int i = 0; i < 3; ++i) {
        EXPECT_NEAR(two_body_potential(t, ChargeConfig{{0, 2 * i}}).value, vqq[i], 1e-9);
    }
    EXPECT_NEAR(two_body_potential(t, ChargeConfig{{0, 1}}).value, -1.4755611384, 1e-9);
    EXPECT_NEAR(two_body_potential(t, ChargeConfig{{0, 3}}).value, -0.2606306746, 1e-9);
}

TEST(Potentials, RingDistanceFoldsPairs) {
    EnergyTable t = exact_table();
    EXPECT_EQ(two_body_potential(t, ChargeConfig{{2, 5}}).value, two_body_potential(t, ChargeConfig{{0, 3}}).value);
    EXPECT_EQ(two_body_potential(t, ChargeConfig{{1, 7}}).value, two_body_potential(t, ChargeConfig{{0, 2}}).value);
    EXPECT_EQ(ring_distance(0, 6, 8), 2);
    EXPECT_EQ(ring_distance(0, 4, 8), 4);
}

TEST(Potentials, SubtractionAlgebraRoundTrip) {
    EnergyTable t = exact_table();
    const double ev = t.at(ChargeConfig{}).value;
    const double mh = heavy_meson_mass(t).value;
    for (int r = 0; r <= 4; ++r) {
        ChargeConfig c{{0, r}};
        EXPECT_NEAR(two_body_potential(t, c).value + 2 * mh + ev, t.at(c).value, 1e-12);
    }
}

TEST(Potentials, MissingEntryNamed) {
    EnergyTable t;
    t.entries[ChargeConfig{}] = {-2.0, 0.0, 0.0};
    try {
        heavy_meson_mass(t);
        FAIL() << "expected MissingEntry";
    } catch (const MissingEntry& e) {
        EXPECT_NE(std::string(e.what()).find("(0)"), std::string::npos);
    }
}

TEST(ThreeBody, JacobiCoordinates) {
    for (const auto& row : ref::three_body()) {
        JacobiPoint j = jacobi_coordinates(ChargeConfig::parse(row.charges));
        EXPECT_DOUBLE_EQ(j.r1, row.r1) << row.charges;
        EXPECT_DOUBLE_EQ(j.r2, row.r2) << row.charges;
    }
}

TEST(ThreeBody, FrozenExactValues) {
    EnergyTable t = exact_table();
    for (const auto& row : ref::three_body()) {
        auto [j, v] = three_body_potential(t, ChargeConfig::parse(row.charges));
        EXPECT_NEAR(v.value, row.v3, 5e-5) << row.charges;
    }
}

TEST(ThreeBody, PairwiseAdditiveTableGivesZero) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1, 1);
    EnergyTable t;
    const double ev = u(rng), mh = 1 + u(rng);
    double v[5];
    for (double& x : v) x = u(rng);
    t.entries[ChargeConfig{}] = {ev, 0, 0};
    t.entries[ChargeConfig{{0}}] = {ev + mh, 0, 0};
    for (int r = 0; r <= 4; ++r) t.entries[ChargeConfig{{0, r}}] = {ev + 2 * mh + v[r], 0, 0};
    for (const auto& row : ref::three_body()) {
        ChargeConfig c = ChargeConfig::parse(row.charges);
        const auto& p = c.positions;
        double e = ev + 3 * mh;
        for (int i = 0; i < 3; ++i) {
            for (int k = i + 1; k < 3; ++k) e += v[ring_distance(p[i], p[k], 8)];
        }
        t.entries[c] = {e, 0, 0};
        EXPECT_NEAR(three_body_potential(t, c).second.value, 0.0, 1e-12) << row.charges;
    }
}

TEST(Uncertainty, QuadratureMatchesMonteCarlo) {
    EnergyTable t = noisy_table(0.003, 0.01);
    ChargeConfig c = ChargeConfig::parse("0,2,1");
    EnergyCombination comb = three_body_combination(c, 8);
    EnergyRecord r = comb.evaluate(t);
    std::mt19937_64 rng(10);
    std::normal_distribution<double> g;
    const int n = 100000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
        double x = 0;
        for (const auto& [cfg, k] : comb.terms()) {
            const EnergyRecord& e = t.at(cfg);
            x += k * (e.value + e.stat_sigma * g(rng) + e.sys_sigma * g(rng));
        }
        s += x;
        s2 += x * x;
    }
    double sd = std::sqrt(s2 / n - (s / n) * (s / n));
    EXPECT_NEAR(sd / r.sigma(), 1.0, 0.02);
    EXPECT_NEAR(s / n, r.value, 5 * r.sigma() / std::sqrt(n));
}

TEST(ImageSum, SymmetricAndConvergent) {
    // Symmetric up to the dropped images, each below 1e-10.
    for (double r : {0.0, 1.0, 2.0, 3.0}) {
        EXPECT_NEAR(image_sum_potential(r, 1.0, 0.6, Channel::like, 8),
                    image_sum_potential(8 - r, 1.0, 0.6, Channel::like, 8), 1e-9);
    }
    EXPECT_DOUBLE_EQ(image_sum_potential(2, 2.0, 0.5, Channel::opposite, INFINITY), -2.0 * std::exp(-1.0));
    // Direct long sum as the oracle.
    double direct = 0;
    for (int n = -200; n <= 200; ++n) direct += std::exp(-0.3 * std::abs(1.0 + 8 * n));
    EXPECT_NEAR(image_sum_potential(1.0, 1.0, 0.3, Channel::like, 8), direct, 1e-10);
}

TEST(Fit, NoiselessRoundTrip) {
    FitOptions o;
    o.samples = 0;
    for (double L : {8.0, 12.0, double(INFINITY)}) {
        std::vector<FitPoint> like, opp;
        for (int r : {0, 2, 4}) like.push_back({double(r), {image_sum_potential(r, 0.37, 0.61, Channel::like, L)}});
        for (int r : {1, 3}) opp.push_back({double(r), {image_sum_potential(r, 3.7, 0.94, Channel::opposite, L)}});
        ExpFit a = fit_exponential(like, L, Channel::like, o);
        ExpFit b = fit_exponential(opp, L, Channel::opposite, o);
        EXPECT_NEAR(a.g2, 0.37, 1e-8);
        EXPECT_NEAR(a.m, 0.61, 1e-8);
        EXPECT_NEAR(b.g2, 3.7, 1e-8);
        EXPECT_NEAR(b.m, 0.94, 1e-8);
    }
}

TEST(Fit, FrozenCentralValuesFromExactTable) {
    EnergyTable t = exact_table();
    std::vector<FitPoint> like, opp;
    for (int r : {0, 2, 4}) like.push_back({double(r), two_body_potential(t, ChargeConfig{{0, r}})});
    for (int r : {1, 3}) opp.push_back({double(r), two_body_potential(t, ChargeConfig{{0, r}})});
    FitOptions o;
    o.samples = 0;
    ExpFit a = fit_exponential(like, 8, Channel::like, o);
    ExpFit b = fit_exponential(opp, 8, Channel::opposite, o);
    EXPECT_NEAR(a.g2, 0.364713, 1e-6);
    EXPECT_NEAR(a.m, 0.602285, 1e-6);
    EXPECT_NEAR(b.g2, 3.748527, 1e-6);
    EXPECT_NEAR(b.m, 0.936504, 1e-6);
}

TEST(Fit, ParityChannelEnforced) {
    std::vector<FitPoint> pts = {{1, {0.1}}, {2, {0.05}}};
    EXPECT_THROW(fit_exponential(pts, 8, Channel::like), ChannelParityError);
    EXPECT_THROW(fit_exponential({{1, {0.1}}}, 8, Channel::opposite), InvalidArgument);
}

TEST(Fit, NoisyCoverage) {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> g;
    const double g2 = 0.365, m = 0.61, sigma = 0.048;
    int hit_g = 0, hit_m = 0, seeds = 100;
    for (int s = 0; s < seeds; ++s) {
        std::vector<FitPoint> pts;
        for (int r : {0, 2, 4}) {
            double v = image_sum_potential(r, g2, m, Channel::like, 8) + 0.4 * sigma * g(rng);
            pts.push_back({double(r), {v, 0.4 * sigma, 0.0}});
        }
        FitOptions o;
        o.samples = 1000;
        o.seed = s + 1;
        try {
            ExpFit f = fit_exponential(pts, 8, Channel::like, o);
            hit_g += std::abs(f.g2 - g2) <= f.sigma_g2;
            hit_m += std::abs(f.m - m) <= f.sigma_m;
        } catch (const FitFailure&) {
        }
    }
    EXPECT_GE(hit_g, 68);
    EXPECT_GE(hit_m, 68);
}

TEST(Fit, EllipseFromCovariance) {
    EnergyTable t = noisy_table(0.0, 0.01);
    std::vector<FitPoint> opp;
    for (int r : {1, 3}) opp.push_back({double(r), two_body_potential(t, ChargeConfig{{0, r}})});
    FitOptions o;
    o.samples = 4000;
    ExpFit f = fit_exponential(opp, 8, Channel::opposite, o);
    Eigen::Matrix2d rebuilt = f.ellipse_axes * (f.ellipse_radii.array().square() / (o.ellipse_scale * o.ellipse_scale))
                                                   .matrix()
                                                   .asDiagonal() *
                              f.ellipse_axes.transpose();
    EXPECT_LT((rebuilt - f.covariance).norm(), 1e-12 + 1e-9 * f.covariance.norm());
    EXPECT_EQ(f.samples + f.failed_samples, 4000);
}

// Independent oracle: for V = -g2 exp(-M|x|) the solutions are Bessel
// functions J_nu(z0 exp(-M x / 2)) with nu = 2 kappa / M and
// z0 = 2 sqrt(2 mu g2) / M. Odd states need J_nu(z0) = 0, even states
// J_nu'(z0) = 0.
std::vector<double> bessel_levels(double g2, double m, double mu, bool odd) {
    const double z0 = 2.0 * std::sqrt(2.0 * mu * g2) / m;
    auto f = [&](double nu) {
        if (odd) return std::cyl_bessel_j(nu, z0);
        return nu / z0 * std::cyl_bessel_j(nu, z0) - std::cyl_bessel_j(nu + 1, z0);
    };
    std::vector<double> out;
    const int n = 20000;
    double prev = f(1e-9);
    for (int i = 1; i <= n; ++i) {
        double a = z0 * (i - 1) / n + 1e-9, b = z0 * i / n;
        double fb = f(b);
        if ((prev < 0) != (fb < 0)) {
            for (int it = 0; it < 100; ++it) {
                double c = 0.5 * (a + b);
                if ((f(c) < 0) == (prev < 0)) a = c;
                else b = c;
            }
            double kappa = 0.5 * (a + b) * m / 2.0;
            out.push_back(-kappa * kappa / (2.0 * mu));
        }
        prev = fb;
    }
    std::sort(out.begin(), out.end());
    return out;
}

TEST(Eft, BoundStatesMatchBesselOracle) {
    EftMatch e = match_eft(3.75, 0.937, 4.5);
    auto even = bessel_levels(3.75, 0.937, 2.25, false);
    auto odd = bessel_levels(3.75, 0.937, 2.25, true);
    ASSERT_EQ(e.bound_state_energies.size(), even.size());
    ASSERT_EQ(e.odd_bound_state_energies.size(), odd.size());
    for (std::size_t i = 0; i < even.size(); ++i) EXPECT_NEAR(e.bound_state_energies[i], even[i], 1e-5);
    for (std::size_t i = 0; i < odd.size(); ++i) EXPECT_NEAR(e.odd_bound_state_energies[i], odd[i], 1e-5);
}

TEST(Eft, FrozenMatch) {
    EftMatch e = match_eft(3.75, 0.937, 4.5);
    EXPECT_NEAR(e.scattering_length, 3.80641, 1e-4);
    EXPECT_NEAR(e.c0, -0.116762, 1e-5);
    EXPECT_LT(e.grid_change, 1e-6);
    ASSERT_EQ(e.bound_state_energies.size(), 3u);
    EXPECT_NEAR(e.bound_state_energies[0], -2.5128, 1e-3);
    EXPECT_NEAR(e.bound_state_energies[1], -0.6290, 1e-3);
    EXPECT_NEAR(e.bound_state_energies[2], -0.0655, 1e-3);
}

TEST(Eft, DeltaPotentialReproducesScatteringLength) {
    EftMatch e = match_eft(3.75, 0.937, 4.5);
    SchrodingerProblem delta;
    delta.potential = [](double) { return 0.0; };
    delta.mu = e.mu;
    delta.contact = e.c0;
    EXPECT_NEAR(scattering_length(delta) / e.scattering_length, 1.0, 1e-6);
}

TEST(Eft, RangeCheck) {
    SchrodingerProblem p;
    p.potential = [](double x) { return -1.0 / (1.0 + x * x); };
    p.r_max = 10;
    EXPECT_THROW(scattering_length(p), DomainTooSmall);
    EXPECT_THROW(match_eft(1.0, 0.5, -1.0), InvalidArgument);
}

TEST(Radius, UniformDensityClosedForm) {
    Eigen::VectorXd c = Eigen::VectorXd::Constant(8, 0.25);
    // sum_{n=-4}^{4} (-1)^n n^2 = 2 (-1 + 4 - 9 + 16) = 20
    EXPECT_NEAR(charge_radius(c, RadiusKind::charge).value, 20 * 0.25, 1e-14);
    // sum of (j + 1/2)^2 over j = 0..3, twice, over 8 links
    EXPECT_NEAR(charge_radius(c, RadiusKind::field_energy).value, 2 * (0.25 + 2.25 + 6.25 + 12.25) / 8, 1e-14);
}

TEST(Radius, FrozenFromExactProfile) {
    Eigen::VectorXd rho(8), e2(8);
    for (int n = 0; n < 8; ++n) {
        rho(n) = ref::kSingleVac.rho[n];
        e2(n) = ref::kSingleVac.e2[n];
    }
    Estimate q = charge_radius(rho, RadiusKind::charge);
    Estimate f = charge_radius(e2, RadiusKind::field_energy);
    EXPECT_NEAR(q.value, -1.78984, 1e-4);
    EXPECT_NEAR(q.sigma, 0.328, 1e-3);
    EXPECT_NEAR(f.value, 0.2776, 1e-3);
    EXPECT_NEAR(f.sigma, 0.129, 1e-3);
    EXPECT_THROW(charge_radius(Eigen::VectorXd::Zero(5), RadiusKind::charge), DimensionError);
}

}  // namespace
}  // namespace fvqe
