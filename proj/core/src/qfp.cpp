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

#include "fvqe/qfp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "fvqe/errors.hpp"

namespace fvqe {

namespace {

double bessel_j(int order, double x) {
    double v = std::cyl_bessel_j(static_cast<double>(std::abs(order)), x);
    if (order < 0 && (order % 2 != 0)) v = -v;
    return v;
}

double phase_of(cplx z) { return std::abs(z) > 1e-14 ? std::arg(z) : 0.0; }

// Removes the input/output phases of a 2x2 block so that W00, W01 and W10
// become real and non-negative.
Eigen::Matrix2cd align_phases(const Eigen::Matrix2cd& w) {
    double b0 = -phase_of(w(0, 0));
    double b1 = -phase_of(w(0, 1));
    double a1 = -phase_of(w(1, 0)) - b0;
    Eigen::Matrix2cd out;
    out(0, 0) = w(0, 0) * std::polar(1.0, b0);
    out(0, 1) = w(0, 1) * std::polar(1.0, b1);
    out(1, 0) = w(1, 0) * std::polar(1.0, a1 + b0);
    out(1, 1) = w(1, 1) * std::polar(1.0, a1 + b1);
    return out;
}

Eigen::Matrix2cd pair_block(const ModeTransform& u, BinPair pair) {
    auto [k, l] = pair;
    Eigen::Matrix2cd w;
    w << u.at(k, k), u.at(k, l), u.at(l, k), u.at(l, l);
    return w;
}

ModeWindow default_window(BinPair pair) {
    return ModeWindow::around(std::min(pair.first, pair.second), std::max(pair.first, pair.second), 32);
}

BinPair ordered(BinPair p) { return {std::min(p.first, p.second), std::max(p.first, p.second)}; }

}  // namespace

ModeWindow ModeWindow::around(int lo, int hi, int guard) {
    ModeWindow w;
    w.n_lo = lo - guard;
    w.n_hi = hi + guard;
    return w;
}

ShaperMask ShaperMask::pi_step(int /*k*/, int l, const ModeWindow& window) {
    ShaperMask mask;
    for (int n = window.n_lo; n <= window.n_hi; ++n) {
        if (n >= l) mask.coefficient[n] = -1.0;
    }
    return mask;
}

std::size_t MeasurementPlan::pair_count() const {
    std::size_t n = 0;
    for (const auto& r : rounds) n += r.size();
    return n;
}

ModeTransform eom_transform(const EomDrive& drive, const ModeWindow& window) {
    if (window.size() < 1) throw InvalidArgument("eom_transform: empty window");
    if (drive.depth < 0) throw InvalidArgument("eom_transform: negative modulation depth");
    if (drive.harmonic < 1) throw InvalidArgument("eom_transform: harmonic must be >= 1");
    const int n = window.size();
    ModeTransform t{window, Eigen::MatrixXcd::Zero(n, n)};
    const double shift = drive.phase + std::numbers::pi / 2;
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) {
            int diff = r - c;
            if (diff % drive.harmonic != 0) continue;
            int j = diff / drive.harmonic;
            t.matrix(r, c) = bessel_j(j, drive.depth) * std::polar(1.0, j * shift);
        }
    }
    return t;
}

ModeTransform shaper_transform(const ShaperMask& mask, const ModeWindow& window) {
    const int n = window.size();
    ModeTransform t{window, Eigen::MatrixXcd::Identity(n, n)};
    for (const auto& [bin, c] : mask.coefficient) {
        if (std::abs(c) > 1.0 + 1e-12) {
            std::ostringstream msg;
            msg << "shaper mask coefficient at bin " << bin << " has magnitude " << std::abs(c) << " > 1";
            throw InvalidMask(msg.str());
        }
        if (window.contains(bin)) t.matrix(window.index(bin), window.index(bin)) = c;
    }
    return t;
}

ModeTransform compose(const std::vector<ModeTransform>& sequence) {
    if (sequence.empty()) throw InvalidArgument("compose: empty sequence");
    ModeTransform out = sequence.front();
    for (std::size_t i = 1; i < sequence.size(); ++i) {
        if (!(sequence[i].window == out.window)) throw DimensionError("compose: mismatched windows");
        out.matrix = out.matrix * sequence[i].matrix;
    }
    return out;
}

ModeTransform hadamard_transform(double depth, const ModeWindow& window, BinPair pair) {
    auto [k, l] = ordered(pair);
    return compose({eom_transform({depth, 0.0, 1}, window),
                    shaper_transform(ShaperMask::pi_step(k, l, window), window),
                    eom_transform({depth, std::numbers::pi, 1}, window)});
}

GateMetrics hadamard_metrics(double depth, BinPair pair) {
    return hadamard_metrics(depth, default_window(pair), pair);
}

GateMetrics hadamard_metrics(double depth, const ModeWindow& window, BinPair pair) {
    auto [k, l] = ordered(pair);
    if (k == l) throw InvalidArgument("hadamard_metrics: pair bins must differ");
    if (k - window.n_lo < 2 || window.n_hi - l < 2) {
        throw WindowTooSmall("hadamard_metrics: need at least 2 guard bins between the pair and the window edge");
    }
    ModeTransform u = hadamard_transform(depth, window, {k, l});
    Eigen::Matrix2cd w = pair_block(u, {k, l});

    GateMetrics m;
    m.transmissivity = std::norm(w(0, 0));
    m.reflectivity = std::norm(w(1, 0));
    m.leakage = u.matrix.col(window.index(k)).squaredNorm() - m.reflectivity - m.transmissivity;
    const double tr = (w.adjoint() * w).trace().real();
    m.success_probability = tr / 2.0;
    if (tr > 0) {
        Eigen::Matrix2cd wa = align_phases(w);
        m.fidelity = std::norm((wa.adjoint() * ideal_hadamard()).trace()) / (2.0 * tr);
    }
    return m;
}

Eigen::Matrix2cd hadamard_block(double depth, BinPair pair) {
    ModeWindow window = default_window(pair);
    return align_phases(pair_block(hadamard_transform(depth, window, pair), ordered(pair)));
}

Eigen::Matrix2cd ideal_hadamard() {
    Eigen::Matrix2cd h;
    const double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    return h;
}

MeasurementPlan plan_measurements(const std::vector<BinPair>& pairs, int max_parallel) {
    if (max_parallel < 1) throw InvalidArgument("plan_measurements: max_parallel must be >= 1");
    std::vector<BinPair> todo;
    std::set<BinPair> seen;
    for (auto p : pairs) {
        if (p.first == p.second) throw InvalidArgument("plan_measurements: pair with identical bins");
        p = ordered(p);
        if (seen.insert(p).second) todo.push_back(p);
    }
    MeasurementPlan plan;
    plan.max_parallel = max_parallel;
    while (!todo.empty()) {
        std::vector<BinPair> round, rest;
        std::set<int> used;
        for (const auto& p : todo) {
            if (static_cast<int>(round.size()) < max_parallel && !used.count(p.first) && !used.count(p.second)) {
                round.push_back(p);
                used.insert(p.first);
                used.insert(p.second);
            } else {
                rest.push_back(p);
            }
        }
        plan.rounds.push_back(std::move(round));
        todo = std::move(rest);
    }
    return plan;
}

DensityMatrix measure_rho(const CombState& state, const MeasurementPlan& plan,
                          const Eigen::Matrix2cd& gate, const NoiseModel& noise,
                          std::mt19937_64& rng, const std::vector<BinPair>& required) {
    const int d = static_cast<int>(state.amplitudes.size());
    if (d < 1) throw DimensionError("measure_rho: empty state");
    if (std::abs(state.amplitudes.squaredNorm() - 1.0) > 1e-9) {
        throw NormalizationError("measure_rho: state is not normalized");
    }
    std::set<BinPair> planned;
    for (const auto& round : plan.rounds) {
        for (const auto& p : round) {
            if (p.first < 0 || p.second < 0 || p.first >= d || p.second >= d) {
                throw DimensionError("measure_rho: plan references a bin outside the state");
            }
            planned.insert(ordered(p));
        }
    }
    for (const auto& p : required) {
        if (p.first != p.second && !planned.count(ordered(p))) {
            std::ostringstream msg;
            msg << "measure_rho: pair (" << p.first << "," << p.second << ") is required but not in the plan";
            throw IncompleteMeasurement(msg.str());
        }
    }

    const double flux = state.reference_scale * state.reference_scale;
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto reading = [&](double power) {
        double p = flux * power;
        if (noise.statistical_sigma > 0) p += flux * noise.statistical_sigma * gauss(rng);
        return p;
    };

    DensityMatrix out;
    out.rho = Eigen::MatrixXd::Zero(d, d);
    out.measured = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(d, d, false);
    const Eigen::VectorXd& a = state.amplitudes;
    for (int k = 0; k < d; ++k) {
        out.rho(k, k) = reading(a(k) * a(k)) / flux;
        out.measured(k, k) = true;
    }

    // D = P_k - P_l = M00 rho_kk + M11 rho_ll + 2 Re(M01) rho_kl, M = W^+ Z W.
    Eigen::Matrix2cd z = Eigen::Matrix2cd::Zero();
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    const Eigen::Matrix2cd m = gate.adjoint() * z * gate;
    const double cross = 2.0 * m(0, 1).real();
    if (std::abs(cross) < 1e-12) throw DivergenceError("measure_rho: gate cannot resolve the in-phase coherence");

    for (const auto& round : plan.rounds) {
        for (auto p : round) {
            auto [k, l] = ordered(p);
            Eigen::Vector2cd in(a(k), a(l));
            Eigen::Vector2cd o = gate * in;
            double pk = reading(std::norm(o(0)));
            double pl = reading(std::norm(o(1)));
            double diff = (pk - pl) / flux;
            double v = (diff - m(0, 0).real() * out.rho(k, k) - m(1, 1).real() * out.rho(l, l)) / cross;
            out.rho(k, l) = out.rho(l, k) = v;
            out.measured(k, l) = out.measured(l, k) = true;
        }
    }
    return out;
}

DensityMatrix measure_rho(const CombState& state, const MeasurementPlan& plan, double gate_depth,
                          const NoiseModel& noise, const std::vector<BinPair>& required) {
    std::mt19937_64 rng(noise.seed);
    return measure_rho(state, plan, hadamard_block(gate_depth), noise, rng, required);
}

double comb_expectation(const CombState& state, const Eigen::MatrixXd& h) {
    if (h.rows() != h.cols() || h.rows() != state.amplitudes.size()) {
        throw DimensionError("comb_expectation: dimension mismatch");
    }
    const double flux = state.reference_scale * state.reference_scale;
    return flux * state.amplitudes.dot(h * state.amplitudes);
}

double rho_expectation(const DensityMatrix& rho, const Eigen::MatrixXd& h) {
    const int d = rho.dim();
    if (h.rows() != d || h.cols() != d) throw DimensionError("rho_expectation: dimension mismatch");
    double e = 0.0;
    for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
            if (h(k, l) == 0.0) continue;
            if (!rho.measured(k, l)) {
                std::ostringstream msg;
                msg << "rho_expectation: element (" << k << "," << l << ") was not measured";
                throw IncompleteMeasurement(msg.str());
            }
            e += rho.rho(k, l) * h(k, l);
        }
    }
    return e;
}

}  // namespace fvqe
