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

#include "fvqe/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "fvqe/errors.hpp"

namespace fvqe {

namespace {

const ChargeConfig kVacuum{};
const ChargeConfig kSingle{{0}};

int image_count(double m, double lattice_extent) {
    if (!std::isfinite(lattice_extent)) return 0;
    // exp(-m n L) < 1e-10
    double n = std::log(1e10) / (m * lattice_extent);
    return static_cast<int>(std::floor(n)) + 1;
}

// Model value and its derivatives with respect to (g2, m).
void model_terms(double r, double g2, double m, Channel channel, double lattice_extent, double& value,
                 double& d_g2, double& d_m) {
    const int n_max = image_count(m, lattice_extent);
    double s = 0.0, ds = 0.0;
    for (int n = -n_max; n <= n_max; ++n) {
        double dist = std::abs(r + (n == 0 ? 0.0 : n * lattice_extent));
        double e = std::exp(-m * dist);
        s += e;
        ds -= dist * e;
    }
    const double sign = static_cast<double>(static_cast<int>(channel));
    value = sign * g2 * s;
    d_g2 = sign * s;
    d_m = sign * g2 * ds;
}

struct Central {
    double g2;
    double m;
    double residual;
};

Central least_squares(const std::vector<double>& r, const std::vector<double>& v, double lattice_extent,
                      Channel channel) {
    const int n = static_cast<int>(r.size());
    const double sign = static_cast<double>(static_cast<int>(channel));

    // Start from the two shortest separations, ignoring images.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return r[a] < r[b]; });
    double m0 = 0.5, g0 = 0.0;
    for (double x : v) g0 = std::max(g0, std::abs(x));
    {
        double v1 = sign * v[order[0]], v2 = sign * v[order[1]];
        double dr = r[order[1]] - r[order[0]];
        if (v1 > 0 && v2 > 0 && v1 > v2 && dr > 0) {
            m0 = std::log(v1 / v2) / dr;
            g0 = v1 * std::exp(m0 * r[order[0]]);
        }
    }

    auto cost_of = [&](double g2, double m, Eigen::VectorXd* res, Eigen::MatrixXd* jac) {
        double c = 0.0;
        for (int i = 0; i < n; ++i) {
            double val, dg, dm;
            model_terms(r[i], g2, m, channel, lattice_extent, val, dg, dm);
            double e = val - v[i];
            c += e * e;
            if (res) (*res)(i) = e;
            if (jac) {
                (*jac)(i, 0) = dg;
                (*jac)(i, 1) = dm;
            }
        }
        return c;
    };

    double g2 = g0, m = m0, lambda = 1e-3;
    Eigen::VectorXd res(n);
    Eigen::MatrixXd jac(n, 2);
    double cost = cost_of(g2, m, &res, &jac);
    for (int it = 0; it < 500 && cost > 0; ++it) {
        Eigen::Matrix2d a = jac.transpose() * jac;
        Eigen::Vector2d b = -jac.transpose() * res;
        Eigen::Matrix2d damped = a;
        damped(0, 0) += lambda * a(0, 0);
        damped(1, 1) += lambda * a(1, 1);
        Eigen::Vector2d delta = damped.ldlt().solve(b);
        if (!delta.allFinite()) break;
        double g_new = g2 + delta(0), m_new = m + delta(1);
        double c_new = m_new > 0 ? cost_of(g_new, m_new, nullptr, nullptr) : std::numeric_limits<double>::infinity();
        if (c_new < cost) {
            bool small = std::abs(delta(0)) <= 1e-15 * (std::abs(g2) + 1e-300) &&
                         std::abs(delta(1)) <= 1e-15 * (std::abs(m) + 1e-300);
            g2 = g_new;
            m = m_new;
            cost = cost_of(g2, m, &res, &jac);
            lambda = std::max(lambda / 10.0, 1e-15);
            if (small) break;
        } else {
            lambda *= 10.0;
            if (lambda > 1e15) break;
        }
    }
    if (!(m > 1e-8) || !std::isfinite(g2)) {
        std::ostringstream msg;
        msg << "fit_exponential: fit left the M > 0 region (g2=" << g2 << ", M=" << m << ", cost=" << cost << ")";
        throw FitFailure(msg.str());
    }
    return {g2, m, std::sqrt(cost)};
}

// Zero-energy or bound-state integration on x >= 0 (Numerov, RK4 start).
struct Integration {
    double psi_last = 0.0;
    double psi_prev = 0.0;
    double x_last = 0.0;
    double h = 0.0;
    int nodes = 0;
};

Integration integrate(const SchrodingerProblem& p, double energy, Parity parity, double r_max, double h) {
    const int steps = static_cast<int>(std::ceil(r_max / h));
    auto k2 = [&](double x) { return 2.0 * p.mu * (energy - p.potential(x)); };

    double y0 = parity == Parity::even ? 1.0 : 0.0;
    double dy0 = parity == Parity::even ? p.mu * p.contact : 1.0;

    // First step with fine RK4 so the start does not limit the order.
    double y = y0, dy = dy0, x = 0.0;
    const int sub = 64;
    const double hs = h / sub;
    for (int i = 0; i < sub; ++i) {
        auto f = [&](double xx, double yy, double dd, double& oy, double& od) {
            oy = dd;
            od = -k2(xx) * yy;
        };
        double a1, b1, a2, b2, a3, b3, a4, b4;
        f(x, y, dy, a1, b1);
        f(x + hs / 2, y + hs / 2 * a1, dy + hs / 2 * b1, a2, b2);
        f(x + hs / 2, y + hs / 2 * a2, dy + hs / 2 * b2, a3, b3);
        f(x + hs, y + hs * a3, dy + hs * b3, a4, b4);
        y += hs / 6 * (a1 + 2 * a2 + 2 * a3 + a4);
        dy += hs / 6 * (b1 + 2 * b2 + 2 * b3 + b4);
        x += hs;
    }

    Integration out;
    out.h = h;
    double ym = y0, yc = y;
    double km = k2(0.0), kc = k2(h);
    const double c = h * h / 12.0;
    if (parity == Parity::even && ym * yc < 0) ++out.nodes;
    for (int i = 1; i < steps; ++i) {
        double xn = (i + 1) * h;
        double kn = k2(xn);
        double yn = (2.0 * yc * (1.0 - 5.0 * c * kc) - ym * (1.0 + c * km)) / (1.0 + c * kn);
        if ((yn < 0) != (yc < 0) && yc != 0.0) ++out.nodes;
        ym = yc;
        yc = yn;
        km = kc;
        kc = kn;
        // Rescale to stay finite in classically forbidden regions.
        double big = std::max(std::abs(ym), std::abs(yc));
        if (big > 1e200) {
            ym /= big;
            yc /= big;
        }
    }
    out.psi_last = yc;
    out.psi_prev = ym;
    out.x_last = steps * h;
    return out;
}

double auto_range(const SchrodingerProblem& p) {
    if (p.r_max > 0) return p.r_max;
    double rate = std::max(p.decay_rate, 1e-6);
    double r = std::max(12.0 / rate, std::log(std::max(std::abs(p.depth), 1.0) / 1e-14) / rate);
    return std::max(r, 20.0);
}

void check_range(const SchrodingerProblem& p, double r_max) {
    double tail = std::abs(p.potential(r_max));
    if (tail > 1e-10) {
        std::ostringstream msg;
        msg << "Schrodinger solve: |V(r_max=" << r_max << ")| = " << tail << " is not negligible";
        throw DomainTooSmall(msg.str());
    }
}

// 1/a from the last two grid points of the zero-energy solution.
double inverse_scattering_length(const SchrodingerProblem& p, Parity parity, double h) {
    const double r_max = auto_range(p);
    check_range(p, r_max);
    Integration in = integrate(p, 0.0, parity, r_max, h);
    double dpsi = (in.psi_last - in.psi_prev) / h;
    return dpsi / (in.x_last * dpsi - in.psi_last);
}

}  // namespace

const EnergyRecord& EnergyTable::at(const ChargeConfig& c) const {
    auto it = entries.find(c);
    if (it == entries.end()) throw MissingEntry("energy table has no entry for " + c.label());
    return it->second;
}

EnergyCombination& EnergyCombination::add(const ChargeConfig& c, double coefficient) {
    terms_[c] += coefficient;
    if (terms_[c] == 0.0) terms_.erase(c);
    return *this;
}

EnergyCombination& EnergyCombination::add(const EnergyCombination& other, double coefficient) {
    for (const auto& [c, k] : other.terms_) add(c, coefficient * k);
    return *this;
}

EnergyRecord EnergyCombination::evaluate(const EnergyTable& table) const {
    EnergyRecord out;
    double stat = 0.0, sys = 0.0;
    for (const auto& [c, k] : terms_) {
        const EnergyRecord& e = table.at(c);
        out.value += k * e.value;
        stat += k * k * e.stat_sigma * e.stat_sigma;
        sys += k * k * e.sys_sigma * e.sys_sigma;
    }
    out.stat_sigma = std::sqrt(stat);
    out.sys_sigma = std::sqrt(sys);
    return out;
}

int ring_distance(int a, int b, int n_sites) {
    int d = std::abs(a - b) % n_sites;
    return std::min(d, n_sites - d);
}

Channel pair_channel(int a, int b) { return (std::abs(a - b) % 2 == 0) ? Channel::like : Channel::opposite; }

EnergyCombination heavy_meson_combination() {
    EnergyCombination c;
    c.add(kSingle, 1.0).add(kVacuum, -1.0);
    return c;
}

EnergyRecord heavy_meson_mass(const EnergyTable& table) { return heavy_meson_combination().evaluate(table); }

EnergyCombination two_body_combination(const ChargeConfig& pair, int n_sites) {
    if (pair.positions.size() != 2) throw InvalidArgument("two_body_potential: need exactly two charges");
    int r = ring_distance(pair.positions[0], pair.positions[1], n_sites);
    EnergyCombination c;
    c.add(ChargeConfig{{0, r}}, 1.0).add(kVacuum, -1.0).add(heavy_meson_combination(), -2.0);
    return c;
}

EnergyRecord two_body_potential(const EnergyTable& table, const ChargeConfig& pair) {
    return two_body_combination(pair, table.n_sites).evaluate(table);
}

EnergyCombination three_body_combination(const ChargeConfig& triple, int n_sites) {
    if (triple.positions.size() != 3) throw InvalidArgument("three_body_potential: need exactly three charges");
    EnergyCombination c;
    c.add(triple, 1.0).add(kVacuum, -1.0).add(heavy_meson_combination(), -3.0);
    const auto& p = triple.positions;
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) c.add(two_body_combination(ChargeConfig{{p[i], p[j]}}, n_sites), -1.0);
    }
    return c;
}

JacobiPoint jacobi_coordinates(const ChargeConfig& triple) {
    if (triple.positions.size() != 3) throw InvalidArgument("jacobi_coordinates: need exactly three charges");
    const auto& p = triple.positions;
    int a = 0, b = 1, c = 2;
    if (pair_channel(p[0], p[1]) != Channel::like) {
        if (pair_channel(p[0], p[2]) == Channel::like) {
            b = 2;
            c = 1;
        } else {
            a = 1;
            b = 2;
            c = 0;
        }
    }
    JacobiPoint j;
    j.r1 = std::abs(p[a] - p[b]);
    j.r2 = std::abs(p[c] - 0.5 * (p[a] + p[b]));
    return j;
}

std::pair<JacobiPoint, EnergyRecord> three_body_potential(const EnergyTable& table, const ChargeConfig& triple) {
    return {jacobi_coordinates(triple), three_body_combination(triple, table.n_sites).evaluate(table)};
}

double image_sum_potential(double r, double g2, double m, Channel channel, double lattice_extent) {
    double v, dg, dm;
    model_terms(r, g2, m, channel, lattice_extent, v, dg, dm);
    return v;
}

ExpFit fit_exponential(const std::vector<FitPoint>& points, double lattice_extent, Channel channel,
                       const FitOptions& options) {
    if (points.size() < 2) throw InvalidArgument("fit_exponential: need at least two points");
    if (!(lattice_extent > 0)) throw InvalidArgument("fit_exponential: lattice extent must be positive");
    std::vector<double> r, v;
    for (const auto& pt : points) {
        if (std::isfinite(lattice_extent) && std::abs(std::fmod(pt.r, 2.0)) > 1e-12 &&
            std::abs(std::fmod(pt.r, 2.0) - 1.0) > 1e-12) {
            throw ChannelParityError("fit_exponential: separations must be integers");
        }
        bool even = std::abs(std::fmod(pt.r, 2.0)) < 1e-12;
        if (std::isfinite(lattice_extent) && (even != (channel == Channel::like))) {
            std::ostringstream msg;
            msg << "fit_exponential: separation " << pt.r << " is not allowed in the "
                << (channel == Channel::like ? "like-sign" : "opposite-sign") << " channel";
            throw ChannelParityError(msg.str());
        }
        r.push_back(pt.r);
        v.push_back(pt.v.value);
    }

    Central c = least_squares(r, v, lattice_extent, channel);
    ExpFit fit;
    fit.channel = channel;
    fit.g2 = c.g2;
    fit.m = c.m;
    fit.residual_norm = c.residual;
    if (options.samples <= 1) return fit;

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Eigen::Vector2d> draws;
    draws.reserve(options.samples);
    std::vector<double> vs(v.size());
    for (int s = 0; s < options.samples; ++s) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            vs[i] = v[i] + points[i].v.sys_sigma * uni(rng) + points[i].v.stat_sigma * gauss(rng);
        }
        try {
            Central cs = least_squares(r, vs, lattice_extent, channel);
            draws.emplace_back(cs.g2, cs.m);
        } catch (const FitFailure&) {
            ++fit.failed_samples;
        }
    }
    fit.samples = static_cast<int>(draws.size());
    if (fit.samples < 2) throw FitFailure("fit_exponential: Monte Carlo produced fewer than two valid fits");
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    for (const auto& d : draws) mean += d;
    mean /= fit.samples;
    Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
    for (const auto& d : draws) cov += (d - mean) * (d - mean).transpose();
    cov /= (fit.samples - 1);
    fit.covariance = cov;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov);
    for (int i = 0; i < 2; ++i) {
        fit.ellipse_radii(i) = options.ellipse_scale * std::sqrt(std::max(es.eigenvalues()(i), 0.0));
        Eigen::Vector2d axis = es.eigenvectors().col(i);
        if (axis(0) < 0 || (axis(0) == 0 && axis(1) < 0)) axis = -axis;
        fit.ellipse_axes.col(i) = axis;
    }
    fit.sigma_g2 = options.ellipse_scale * std::sqrt(cov(0, 0));
    fit.sigma_m = options.ellipse_scale * std::sqrt(cov(1, 1));
    return fit;
}

double scattering_length(const SchrodingerProblem& problem, Parity parity) {
    double inv = inverse_scattering_length(problem, parity, problem.step);
    return inv == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / inv;
}

std::vector<double> bound_states(const SchrodingerProblem& problem, Parity parity) {
    const double r_max = auto_range(problem);
    check_range(problem, r_max);
    const double h = problem.step;
    double v_min = 0.0;
    for (double x = 0.0; x <= r_max; x += h) v_min = std::min(v_min, problem.potential(x));
    if (problem.contact < 0) v_min = std::min(v_min, -problem.mu * problem.contact * problem.contact);
    const double top = -1e-10 * std::max(std::abs(v_min), 1e-300);
    if (v_min >= 0) return {};
    // Extra headroom below the well for the contact-only case.
    const double bottom = 2.0 * v_min - 1.0;
    const int count = integrate(problem, top, parity, r_max, h).nodes;
    auto level = [&](int k, double range, double hi) {
        double lo = bottom;
        for (int it = 0; it < 80 && hi - lo > 1e-14 * std::abs(lo); ++it) {
            double mid = 0.5 * (lo + hi);
            if (integrate(problem, mid, parity, range, h).nodes >= k + 1) hi = mid;
            else lo = mid;
        }
        return 0.5 * (lo + hi);
    };
    std::vector<double> out;
    for (int k = 0; k < count; ++k) {
        // A hard wall at r_max pushes shallow levels up; widen the range until
        // it holds eight decay lengths. The potential is negligible out there.
        double range = r_max;
        double e = level(k, range, top);
        for (int grow = 0; grow < 8 && std::sqrt(-2.0 * problem.mu * e) * range <= 8.0; ++grow) {
            range = std::max(2.0 * range, 10.0 / std::sqrt(-2.0 * problem.mu * e));
            // A wider box only lowers the level.
            e = level(k, range, e + 1e-12 * std::abs(e));
        }
        if (std::sqrt(-2.0 * problem.mu * e) * range > 8.0) out.push_back(e);
    }
    return out;
}

EftMatch match_eft(const ExpFit& fit, double m_h_eft) {
    if (fit.channel != Channel::opposite) throw InvalidArgument("match_eft: needs the attractive (opposite-sign) channel");
    return match_eft(fit.g2, fit.m, m_h_eft);
}

EftMatch match_eft(double g2, double m, double m_h_eft) {
    if (!(m_h_eft > 0)) throw InvalidArgument("match_eft: heavy-meson mass must be positive");
    if (!(m > 0)) throw InvalidArgument("match_eft: screening mass must be positive");
    EftMatch out;
    out.m_h_eft = m_h_eft;
    out.mu = m_h_eft / 2.0;
    out.c0_born = -2.0 * g2 / m;

    SchrodingerProblem p;
    p.potential = [g2, m](double x) { return -g2 * std::exp(-m * std::abs(x)); };
    p.mu = out.mu;
    p.decay_rate = m;
    p.depth = g2;

    double inv_h = inverse_scattering_length(p, Parity::even, p.step);
    double inv_h2 = inverse_scattering_length(p, Parity::even, p.step / 2);
    out.scattering_length = inv_h2 == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / inv_h2;
    out.c0 = -inv_h2 / out.mu;
    out.grid_change = std::abs(inv_h - inv_h2) / std::max(std::abs(inv_h2), 1e-300);
    out.bound_state_energies = bound_states(p, Parity::even);
    out.odd_bound_state_energies = bound_states(p, Parity::odd);
    return out;
}

Estimate charge_radius(const Eigen::VectorXd& profile, RadiusKind kind) {
    const int n = static_cast<int>(profile.size());
    if (n < 4 || n % 2 != 0) throw DimensionError("charge_radius: profile length must be even and >= 4");
    const int half = n / 2;
    std::vector<double> c;
    Estimate out;
    if (kind == RadiusKind::charge) {
        for (int m = 0; m <= half; ++m) {
            double sign = (m % 2 == 0) ? 1.0 : -1.0;
            double w = sign * m * m;
            if (m == 0) c.push_back(0.0);
            else if (m == half) c.push_back(2.0 * w * profile(half));
            else c.push_back(w * (profile(m) + profile(n - m)));
        }
        for (double x : c) out.value += x;
        out.sigma = std::abs(0.5 * (c[half - 1] + c[half]));
    } else {
        double norm = profile.sum();
        if (std::abs(norm) < 1e-300) throw DivergenceError("charge_radius: field-energy profile sums to zero");
        for (int j = 0; j < half; ++j) {
            double d = j + 0.5;
            c.push_back(d * d * (profile(j) + profile(n - 1 - j)));
        }
        for (double x : c) out.value += x;
        out.value /= norm;
        out.sigma = std::abs(0.5 * (c[half - 2] + c[half - 1]) / norm);
    }
    return out;
}

}  // namespace fvqe
