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

// Static-charge potentials from ground-state energies, exponential fits with
// periodic images, low-energy contact matching and charge radii.

#ifndef FVQE_POTENTIAL_HPP
#define FVQE_POTENTIAL_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fvqe/schwinger.hpp"
#include "fvqe/vqe.hpp"

namespace fvqe {

// Energies by static-charge configuration, lattice units. Entries are treated
// as independent measurements when propagating uncertainties.
struct EnergyTable {
    int n_sites = 8;
    std::map<ChargeConfig, EnergyRecord> entries;

    const EnergyRecord& at(const ChargeConfig& c) const;
    bool contains(const ChargeConfig& c) const { return entries.count(c) > 0; }
};

// A linear combination of table entries; value and both sigmas follow from
// the merged coefficients.
class EnergyCombination {
public:
    EnergyCombination& add(const ChargeConfig& c, double coefficient);
    EnergyCombination& add(const EnergyCombination& other, double coefficient);
    EnergyRecord evaluate(const EnergyTable& table) const;
    const std::map<ChargeConfig, double>& terms() const { return terms_; }

private:
    std::map<ChargeConfig, double> terms_;
};

enum class Channel { like = +1, opposite = -1 };  // QQ repulsive, QQbar attractive

struct JacobiPoint {
    double r1 = 0.0;
    double r2 = 0.0;
};

int ring_distance(int a, int b, int n_sites);

// M_H = E(0) - E_vac
EnergyCombination heavy_meson_combination();
EnergyRecord heavy_meson_mass(const EnergyTable& table);

// V(r) = E(pair) - E_vac - 2 M_H, looked up by ring separation as (0, r).
EnergyCombination two_body_combination(const ChargeConfig& pair, int n_sites);
EnergyRecord two_body_potential(const EnergyTable& table, const ChargeConfig& pair);
Channel pair_channel(int a, int b);

// V3 = E - E_vac - 3 M_H - sum of the three pairwise potentials.
EnergyCombination three_body_combination(const ChargeConfig& triple, int n_sites);
std::pair<JacobiPoint, EnergyRecord> three_body_potential(const EnergyTable& table, const ChargeConfig& triple);
JacobiPoint jacobi_coordinates(const ChargeConfig& triple);

// sign * g2 * sum_{|n| <= n_max} exp(-M |r + n L|), n_max the smallest n
// with exp(-M n L) < 1e-10. A non-finite L keeps only n = 0.
double image_sum_potential(double r, double g2, double m, Channel channel, double lattice_extent);

struct FitPoint {
    double r = 0.0;
    EnergyRecord v;
};

struct ExpFit {
    Channel channel = Channel::like;
    double g2 = 0.0;
    double m = 0.0;
    double residual_norm = 0.0;
    Eigen::Matrix2d covariance = Eigen::Matrix2d::Zero();
    // 68% joint confidence ellipse: principal radii and axes (columns).
    Eigen::Vector2d ellipse_radii = Eigen::Vector2d::Zero();
    Eigen::Matrix2d ellipse_axes = Eigen::Matrix2d::Identity();
    // Projections of the ellipse on the g2 and M axes.
    double sigma_g2 = 0.0;
    double sigma_m = 0.0;
    int samples = 0;
    int failed_samples = 0;
};

struct FitOptions {
    int samples = 10000;
    std::uint64_t seed = 1;
    // sqrt of the 68.27% quantile of chi^2 with two degrees of freedom.
    double ellipse_scale = 1.5096;
};

// Least-squares central values plus a Monte Carlo over the point
// uncertainties: uniform within +-sys_sigma, Gaussian with stat_sigma.
ExpFit fit_exponential(const std::vector<FitPoint>& points, double lattice_extent, Channel channel,
                       const FitOptions& options = {});

// One-dimensional even/odd Schrodinger problem -psi''/(2 mu) + V psi = E psi
// on x >= 0 with an optional contact term contact * delta(x).
struct SchrodingerProblem {
    std::function<double(double)> potential;
    double mu = 1.0;
    double contact = 0.0;
    double r_max = 0.0;  // 0 selects a range where |V| < 1e-14
    double step = 2e-3;
    double decay_rate = 1.0;  // used only to pick the automatic range
    double depth = 1.0;
};

enum class Parity { even, odd };

// Intercept a of the asymptotic zero-energy solution psi ~ (x - a).
double scattering_length(const SchrodingerProblem& problem, Parity parity = Parity::even);
std::vector<double> bound_states(const SchrodingerProblem& problem, Parity parity = Parity::even);

struct EftMatch {
    double m_h_eft = 0.0;
    double mu = 0.0;
    double scattering_length = 0.0;
    double c0 = 0.0;
    double c0_born = 0.0;
    double grid_change = 0.0;  // relative change of a under grid halving
    std::vector<double> bound_state_energies;  // even channel
    std::vector<double> odd_bound_state_energies;
};

// Reduced mass m_h_eft / 2 on V(x) = -g2 exp(-M |x|); C0 = -1/(mu a).
EftMatch match_eft(const ExpFit& fit, double m_h_eft);
EftMatch match_eft(double g2, double m, double m_h_eft);

struct Estimate {
    double value = 0.0;
    double sigma = 0.0;
};

enum class RadiusKind { charge, field_energy };

// charge:       sum_{n=-N/2}^{N/2} (-1)^n n^2 rho(n mod N)
// field_energy: sum_links d^2 E2 / sum_links E2 with d = n + 1/2 for link n
// Inputs are vacuum-subtracted single-charge profiles; sigma is the mean of
// the last two paired contributions.
Estimate charge_radius(const Eigen::VectorXd& profile, RadiusKind kind);

}  // namespace fvqe

#endif  // FVQE_POTENTIAL_HPP
