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

#include "fvqe/nuclear.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include <boost/math/tools/minima.hpp>
#include <json.hpp>

#include "fvqe/errors.hpp"
#include "fvqe/matrix_io.hpp"

namespace fvqe {

namespace {

constexpr double kPi = 3.14159265358979323846;

// ---- ingestion ----

NuclearMetadata read_metadata(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("missing metadata sidecar " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(path + ": " + e.what());
    }
    NuclearMetadata m;
    try {
        m.nucleus = j.at("nucleus").get<std::string>();
        m.n_max = j.at("N_max").get<int>();
        m.l_fm = j.at("L_fm").get<double>();
        m.hbar_omega = j.value("hbar_omega", 0.0);
        m.units = j.value("units", std::string("MeV"));
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(path + ": " + e.what());
    }
    if (!(m.l_fm > 0)) throw MalformedInput(path + ": L_fm must be positive");
    if (m.units != "MeV") throw MalformedInput(path + ": units must be MeV, got " + m.units);
    return m;
}

// ---- two-nucleon separable algebra ----

Eigen::Matrix2d coupling_matrix(const ChannelCouplings& c) {
    const double s2 = c.momentum_scale * c.momentum_scale;
    Eigen::Matrix2d lam;
    lam << c.c_tilde, c.c / s2, c.c / s2, 0.0;
    return c.normalization * lam;
}

// M/(2 pi^2) PV int_0^L q^(2+2n) / (p^2 - q^2) dq.
double pv_integral(const ChannelCouplings& c, double p, int n) {
    const double lam = c.cutoff;
    double s = 0.0;
    for (int j = 0; j <= n; ++j) {
        int e = 2 * (n - j) + 1;
        s -= std::pow(p, 2 * j) * std::pow(lam, e) / e;
    }
    s += std::pow(p, 2 * n + 2) * std::log((lam + p) / (lam - p)) / (2.0 * p);
    return c.mass / (2.0 * kPi * kPi) * s;
}

// Same at E = -gamma^2 / M.
double bound_integral(const ChannelCouplings& c, double gamma, int n) {
    const double lam = c.cutoff;
    const double g2 = -gamma * gamma;  // plays the role of p^2
    double s = 0.0;
    for (int j = 0; j <= n; ++j) {
        int e = 2 * (n - j) + 1;
        s -= std::pow(g2, j) * std::pow(lam, e) / e;
    }
    s += std::pow(g2, n + 1) * (-std::atan(lam / gamma) / gamma);
    return c.mass / (2.0 * kPi * kPi) * s;
}

Eigen::Matrix2d bound_kernel(const ChannelCouplings& c, double gamma) {
    Eigen::Matrix2d i;
    i << bound_integral(c, gamma, 0), bound_integral(c, gamma, 1), bound_integral(c, gamma, 1),
        bound_integral(c, gamma, 2);
    return i;
}

double pole_condition(const ChannelCouplings& c, double gamma) {
    return (Eigen::Matrix2d::Identity() - coupling_matrix(c) * bound_kernel(c, gamma)).determinant();
}

void check_momentum(const ChannelCouplings& c, double p) {
    if (!(c.cutoff > 0)) throw InvalidArgument("two-nucleon couplings: cutoff must be positive");
    if (!(p > 0) || !(p < c.cutoff)) {
        std::ostringstream msg;
        msg << "two-nucleon scattering: momentum " << p << " MeV outside (0, cutoff=" << c.cutoff << ")";
        throw InvalidArgument(msg.str());
    }
}

// Raw phase shift in (-90, 90] degrees from the real K-matrix.
double raw_phase(const ChannelCouplings& c, double p) {
    Eigen::Matrix2d j;
    j << pv_integral(c, p, 0), pv_integral(c, p, 1), pv_integral(c, p, 1), pv_integral(c, p, 2);
    Eigen::Matrix2d lam = coupling_matrix(c);
    Eigen::Vector2d g(1.0, p * p);
    double k = g.dot((Eigen::Matrix2d::Identity() - lam * j).fullPivLu().solve(lam * g));
    return std::atan(-c.mass * p * k / (4.0 * kPi)) * 180.0 / kPi;
}

// ---- extrapolation ----

struct Central {
    double e_inf = 0.0;
    double a = 0.0;
    double cost = 0.0;
    bool at_bound = false;
};

double k_of(double e_inf, const ExtrapolationOptions& o) {
    return std::sqrt(2.0 * o.mass * (o.threshold - e_inf)) / o.hbar_c;
}

// Best amplitude for fixed E_inf and the resulting squared residual.
double profile(double e_inf, const std::vector<double>& l, const std::vector<double>& y,
               const ExtrapolationOptions& o, double* a_out, bool* bound_out) {
    const double k = k_of(e_inf, o);
    double sw = 0.0, swy = 0.0;
    for (std::size_t i = 0; i < l.size(); ++i) {
        double w = std::exp(-2.0 * k * l[i]);
        sw += w * w;
        swy += w * (y[i] - e_inf);
    }
    // Truncated oscillator spaces are variational, so E(L) approaches E_inf
    // from above and a >= 0.
    double a = sw > 0 ? std::max(swy / sw, 0.0) : 0.0;
    bool bound = false;
    if (a > o.a_max) {
        a = o.a_max;
        bound = true;
    }
    double cost = 0.0;
    for (std::size_t i = 0; i < l.size(); ++i) {
        double r = e_inf + a * std::exp(-2.0 * k * l[i]) - y[i];
        cost += r * r;
    }
    if (a_out) *a_out = a;
    if (bound_out) *bound_out = bound;
    return cost;
}

Central fit_central(const std::vector<double>& l, const std::vector<double>& y, const ExtrapolationOptions& o,
                    int grid_points) {
    const double y_min = *std::min_element(y.begin(), y.end());
    const double y_max = *std::max_element(y.begin(), y.end());
    if (y_min >= o.threshold) {
        throw ExtrapolationInvalid("extrapolate: all energies lie above the separation threshold");
    }
    const double spread = std::max({y_max - y_min, 1e-3 * std::abs(y_min), 1e-6});
    const double top = o.threshold - 1e-12 * std::max(1.0, std::abs(o.threshold));
    const double bottom = std::min(y_min - 20.0 * spread, top - spread);

    std::vector<double> grid(grid_points), cost(grid_points);
    int best = 0;
    for (int i = 0; i < grid_points; ++i) {
        grid[i] = bottom + (top - bottom) * i / (grid_points - 1);
        cost[i] = profile(grid[i], l, y, o, nullptr, nullptr);
        if (cost[i] < cost[best]) best = i;
    }
    if (best == grid_points - 1) {
        throw ExtrapolationInvalid("extrapolate: best fit sits at the separation threshold (unbound)");
    }
    double lo = grid[std::max(best - 1, 0)], hi = grid[std::min(best + 1, grid_points - 1)];
    auto f = [&](double e) { return profile(e, l, y, o, nullptr, nullptr); };
    std::uintmax_t iters = 200;
    auto [e_best, c_best] = boost::math::tools::brent_find_minima(f, lo, hi, 52, iters);

    Central out;
    out.e_inf = e_best;
    out.cost = profile(e_best, l, y, o, &out.a, &out.at_bound);
    if (!out.at_bound) {
        // Gauss-Newton on (E_inf, a) to get past the sqrt(eps) floor of a
        // one-dimensional minimizer.
        for (int it = 0; it < 30; ++it) {
            const double k = k_of(out.e_inf, o);
            if (!(k > 0)) break;
            const double dk = -o.mass / (o.hbar_c * o.hbar_c * k);
            Eigen::MatrixXd jac(l.size(), 2);
            Eigen::VectorXd r(l.size());
            for (std::size_t i = 0; i < l.size(); ++i) {
                double w = std::exp(-2.0 * k * l[i]);
                r(i) = out.e_inf + out.a * w - y[i];
                jac(i, 0) = 1.0 - 2.0 * l[i] * out.a * w * dk;
                jac(i, 1) = w;
            }
            Eigen::Vector2d step = (jac.transpose() * jac).ldlt().solve(-jac.transpose() * r);
            if (!step.allFinite()) break;
            double e_new = out.e_inf + step(0), a_new = out.a + step(1);
            if (!(e_new < o.threshold) || a_new > o.a_max || a_new < 0.0) break;
            double c_new = 0.0;
            for (std::size_t i = 0; i < l.size(); ++i) {
                double rr = e_new + a_new * std::exp(-2.0 * k_of(e_new, o) * l[i]) - y[i];
                c_new += rr * rr;
            }
            if (!(c_new <= out.cost)) break;
            bool done = std::abs(step(0)) < 1e-15 * std::max(1.0, std::abs(out.e_inf));
            out.e_inf = e_new;
            out.a = a_new;
            out.cost = c_new;
            if (done) break;
        }
    }
    return out;
}

double percentile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    double pos = q * (v.size() - 1);
    std::size_t i = static_cast<std::size_t>(std::floor(pos));
    if (i + 1 >= v.size()) return v.back();
    return v[i] + (pos - i) * (v[i + 1] - v[i]);
}

}  // namespace

NuclearProblem make_problem(const Eigen::MatrixXd& h, const NuclearMetadata& meta, std::ostream* warnings) {
    if (h.rows() != h.cols() || h.rows() < 1) throw DimensionError("nuclear Hamiltonian must be square and non-empty");
    if (!h.allFinite()) throw MalformedInput("nuclear Hamiltonian has non-finite entries");
    if (!(meta.l_fm > 0)) throw InvalidArgument("nuclear problem: L must be positive");
    NuclearProblem p;
    p.meta = meta;
    p.max_asymmetry = (h - h.transpose()).cwiseAbs().maxCoeff();
    const double tol = 1e-10 * std::max(1.0, h.cwiseAbs().maxCoeff());
    if (p.max_asymmetry > tol) {
        std::ostringstream msg;
        msg << "nuclear Hamiltonian " << meta.nucleus << " N_max=" << meta.n_max << ": asymmetry "
            << p.max_asymmetry << " exceeds " << tol;
        throw AsymmetricMatrix(msg.str());
    }
    if (p.max_asymmetry > 0) {
        p.symmetrized = true;
        if (warnings) {
            *warnings << "warning: symmetrizing " << meta.nucleus << " N_max=" << meta.n_max
                      << " (max asymmetry " << p.max_asymmetry << ")\n";
        }
        p.h = HermitianOperator(0.5 * (h + h.transpose()));
    } else {
        p.h = HermitianOperator(h);
    }
    return p;
}

NuclearProblem load_problem(const std::string& path, std::ostream* warnings) {
    NuclearMetadata meta = read_metadata(path + ".meta.json");
    return make_problem(read_matrix_file(path), meta, warnings);
}

void write_metadata(const std::string& path, const NuclearMetadata& meta) {
    nlohmann::json j;
    j["nucleus"] = meta.nucleus;
    j["N_max"] = meta.n_max;
    j["L_fm"] = meta.l_fm;
    j["hbar_omega"] = meta.hbar_omega;
    j["units"] = meta.units;
    std::ofstream out(path);
    if (!out) throw MalformedInput("cannot write " + path);
    out << j.dump(2) << '\n';
}

std::vector<NuclearProblem> load_directory(const std::string& dir, std::ostream* warnings) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw MalformedInput("not a directory: " + dir);
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().extension() == ".mat") files.push_back(e.path().string());
    }
    if (files.empty()) throw MalformedInput("no .mat files in " + dir);
    std::sort(files.begin(), files.end());
    std::vector<NuclearProblem> out;
    for (const auto& f : files) out.push_back(load_problem(f, warnings));
    std::stable_sort(out.begin(), out.end(), [](const NuclearProblem& a, const NuclearProblem& b) {
        return a.meta.n_max < b.meta.n_max;
    });
    return out;
}

ChannelCouplings ChannelCouplings::singlet_nlo() {
    ChannelCouplings c;
    c.channel = NnChannel::singlet;
    c.c_tilde = -0.7617;
    c.c = 2.9098;
    return c;
}

ChannelCouplings ChannelCouplings::triplet_nlo() {
    ChannelCouplings c;
    c.channel = NnChannel::triplet;
    c.c_tilde = -1.2014;
    c.c = 3.3984;
    return c;
}

std::complex<double> nn_t_matrix(const ChannelCouplings& c, double p) {
    check_momentum(c, p);
    using cd = std::complex<double>;
    const double im0 = -c.mass * p / (4.0 * kPi);
    Eigen::Matrix2cd j;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) j(a, b) = cd(pv_integral(c, p, a + b), im0 * std::pow(p, 2 * (a + b)));
    }
    Eigen::Matrix2cd lam = coupling_matrix(c).cast<cd>();
    Eigen::Vector2cd g(1.0, p * p);
    return g.dot((Eigen::Matrix2cd::Identity() - lam * j).fullPivLu().solve(lam * g));
}

std::vector<double> nn_bound_states(const ChannelCouplings& c) {
    if (!(c.cutoff > 0)) throw InvalidArgument("two-nucleon couplings: cutoff must be positive");
    // Scan binding momenta geometrically, then bisect each sign change.
    const int n = 4000;
    const double g_lo = 1e-5 * c.cutoff, g_hi = 3.0 * c.cutoff;
    std::vector<double> out;
    double prev_g = g_lo, prev_f = pole_condition(c, g_lo);
    for (int i = 1; i <= n; ++i) {
        double g = g_lo * std::pow(g_hi / g_lo, static_cast<double>(i) / n);
        double f = pole_condition(c, g);
        if ((f < 0) != (prev_f < 0)) {
            double a = prev_g, b = g, fa = prev_f;
            for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
                double m = 0.5 * (a + b);
                double fm = pole_condition(c, m);
                if ((fm < 0) == (fa < 0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            double gamma = 0.5 * (a + b);
            out.push_back(-gamma * gamma / c.mass);
        }
        prev_g = g;
        prev_f = f;
    }
    std::sort(out.begin(), out.end());
    return out;
}

double nn_phase_shift(const ChannelCouplings& c, double p) {
    check_momentum(c, p);
    const double nb = static_cast<double>(nn_bound_states(c).size());
    const double p0 = std::min(1e-6 * c.cutoff, p);
    const int steps = 400;
    double prev = 180.0 * nb;
    for (int i = 0; i <= steps; ++i) {
        double q = p0 + (p - p0) * i / steps;
        double raw = raw_phase(c, q);
        double shift = std::round((prev - raw) / 180.0);
        prev = raw + 180.0 * shift;
    }
    return prev;
}

double calibrate_normalization(const ChannelCouplings& c, double energy) {
    if (!(energy < 0)) throw InvalidArgument("calibrate_normalization: target energy must be negative");
    // det(1 - kappa A) = 1 - kappa tr A + kappa^2 det A with A = lambda/kappa I(E).
    ChannelCouplings unit = c;
    unit.normalization = 1.0;
    Eigen::Matrix2d a = coupling_matrix(unit) * bound_kernel(c, std::sqrt(-energy * c.mass));
    const double tr = a.trace(), det = a.determinant();
    std::vector<double> roots;
    if (std::abs(det) < 1e-300) {
        if (tr != 0) roots.push_back(1.0 / tr);
    } else {
        double disc = tr * tr - 4.0 * det;
        if (disc >= 0) {
            roots.push_back((tr - std::sqrt(disc)) / (2.0 * det));
            roots.push_back((tr + std::sqrt(disc)) / (2.0 * det));
        }
    }
    double best = std::numeric_limits<double>::quiet_NaN();
    for (double r : roots) {
        if (r > 0 && (std::isnan(best) || std::abs(r - c.normalization) < std::abs(best - c.normalization))) best = r;
    }
    if (std::isnan(best)) throw FitFailure("calibrate_normalization: no positive normalization yields that pole");
    return best;
}

double extrapolation_curve(double l_fm, double e_infinity, double a, const ExtrapolationOptions& o) {
    if (!(e_infinity < o.threshold)) throw ExtrapolationInvalid("extrapolation_curve: E_inf above threshold");
    return e_infinity + a * std::exp(-2.0 * k_of(e_infinity, o) * l_fm);
}

ExtrapolationFit extrapolate(const std::vector<ExtrapolationPoint>& points, const ExtrapolationOptions& options) {
    if (points.size() < 3) throw InvalidArgument("extrapolate: need at least three points");
    std::vector<double> l, y;
    for (const auto& pt : points) {
        if (!(pt.l_fm > 0)) throw InvalidArgument("extrapolate: L must be positive");
        l.push_back(pt.l_fm);
        y.push_back(pt.e.value);
    }
    Central c = fit_central(l, y, options, 2000);
    ExtrapolationFit fit;
    fit.e_infinity = c.e_inf;
    fit.a = c.a;
    fit.k_infinity = k_of(c.e_inf, options);
    fit.residual_norm = std::sqrt(c.cost);
    fit.a_at_bound = c.at_bound;

    std::vector<double> band_l = options.band_l.empty() ? l : options.band_l;
    if (options.replicas <= 1) {
        for (double x : band_l) {
            double v = extrapolation_curve(x, c.e_inf, c.a, options);
            fit.band.push_back({x, v, 0.0, v, v});
        }
        fit.e_infinity_mc = {c.e_inf, 0.0};
        return fit;
    }

    std::size_t largest = std::max_element(l.begin(), l.end()) - l.begin();
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<double>> curves(band_l.size());
    std::vector<double> e_inf;
    int inside = 0;
    std::vector<double> ys(y.size());
    for (int r = 0; r < options.replicas; ++r) {
        for (std::size_t i = 0; i < y.size(); ++i) {
            ys[i] = y[i] + points[i].e.sys_sigma * uni(rng) + points[i].e.stat_sigma * gauss(rng);
        }
        try {
            Central cr = fit_central(l, ys, options, 300);
            e_inf.push_back(cr.e_inf);
            for (std::size_t b = 0; b < band_l.size(); ++b) {
                curves[b].push_back(extrapolation_curve(band_l[b], cr.e_inf, cr.a, options));
            }
            double at = extrapolation_curve(l[largest], cr.e_inf, cr.a, options);
            if (std::abs(at - y[largest]) <= points[largest].e.sys_sigma + points[largest].e.stat_sigma) ++inside;
        } catch (const ExtrapolationInvalid&) {
            ++fit.failed_replicas;
        }
    }
    fit.replicas = static_cast<int>(e_inf.size());
    if (fit.replicas < 2) throw ExtrapolationInvalid("extrapolate: fewer than two replicas were bound");
    auto stats = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m += x;
        m /= v.size();
        double s = 0.0;
        for (double x : v) s += (x - m) * (x - m);
        return Estimate{m, std::sqrt(s / (v.size() - 1))};
    };
    fit.e_infinity_mc = stats(e_inf);
    for (std::size_t b = 0; b < band_l.size(); ++b) {
        Estimate s = stats(curves[b]);
        fit.band.push_back({band_l[b], s.value, s.sigma, percentile(curves[b], 0.16), percentile(curves[b], 0.84)});
    }
    fit.coverage_at_largest = static_cast<double>(inside) / fit.replicas;
    return fit;
}

}  // namespace fvqe
