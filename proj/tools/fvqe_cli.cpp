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

// fvqe: command-line entry point for the gate, lattice, potential and
// nuclear pipelines.
//
// Exit codes: 0 success, 1 unexpected failure, 2 usage error, 10 + the
// library error class otherwise (11 invalid argument, 12 dimension, 13 input,
// 14 missing entry, 15 numerical, 16 symmetry).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fvqe/errors.hpp"
#include "fvqe/matrix_io.hpp"
#include "fvqe/nuclear.hpp"
#include "fvqe/potential.hpp"
#include "fvqe/qfp.hpp"
#include "fvqe/schwinger.hpp"
#include "fvqe/transcript.hpp"
#include "fvqe/vqe.hpp"
#include "table.hpp"

namespace fs = std::filesystem;
using namespace fvqe;
using namespace fvqe::cli;

namespace {

struct Output {
    std::string format = "csv";
    std::string dir;

    // Tables go to <dir>/<stem>.<ext> when a directory is set, else stdout.
    void write(const std::string& stem, const std::vector<Table>& tables) const {
        Format f = parse_format(format);
        if (dir.empty()) {
            emit(std::cout, tables, f);
            return;
        }
        fs::create_directories(dir);
        fs::path path = fs::path(dir) / (stem + "." + extension(f));
        std::ofstream out(path);
        if (!out) throw InvalidArgument("cannot write " + path.string());
        emit(out, tables, f);
        std::cerr << "wrote " << path.string() << '\n';
    }

    // Side files (transcripts, exports) land in dir when the name is relative.
    std::string side_path(const std::string& name) const {
        if (dir.empty() || fs::path(name).is_absolute()) return name;
        fs::create_directories(dir);
        return (fs::path(dir) / name).string();
    }
};

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

ChargeConfig parse_label(std::string s) {
    if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    std::string lower = s;
    for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "vac" || lower == "vacuum") return ChargeConfig{};
    return ChargeConfig::parse(s);
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw MalformedInput("bad number '" + s + "' in " + what);
    }
}

// Columns are located by header name; extra columns are ignored.
EnergyTable read_energy_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open energy table " + path);
    std::string line;
    std::map<std::string, std::size_t> col;
    EnergyTable table;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto f = split_csv(line);
        if (col.empty()) {
            for (std::size_t i = 0; i < f.size(); ++i) col[f[i]] = i;
            for (const char* need : {"config", "value"}) {
                if (!col.count(need)) throw MalformedInput(path + ": header lacks column '" + need + "'");
            }
            continue;
        }
        auto get = [&](const char* name) -> std::string {
            auto it = col.find(name);
            if (it == col.end()) return "0";
            if (it->second >= f.size()) throw MalformedInput(path + ":" + std::to_string(line_no) + ": short row");
            return f[it->second];
        };
        std::string where = path + ":" + std::to_string(line_no);
        ChargeConfig c = parse_label(get("config"));
        if (table.entries.count(c)) throw MalformedInput(where + ": duplicate entry " + c.label());
        table.entries[c] = {parse_double(get("value"), where), parse_double(get("stat_sigma"), where),
                            parse_double(get("sys_sigma"), where)};
    }
    return table;
}

// ---- gate-metrics ----

struct GateArgs {
    std::vector<double> theta;
    std::vector<double> sweep;
};

void run_gate(const GateArgs& a, const Output& o) {
    std::vector<double> depths = a.theta;
    if (!a.sweep.empty()) {
        if (a.sweep.size() != 3 || !(a.sweep[2] > 0) || a.sweep[1] < a.sweep[0]) {
            throw InvalidArgument("--sweep takes lo,hi,step with step > 0 and hi >= lo");
        }
        const int n = static_cast<int>(std::floor((a.sweep[1] - a.sweep[0]) / a.sweep[2] + 1e-9)) + 1;
        for (int i = 0; i < n; ++i) depths.push_back(a.sweep[0] + i * a.sweep[2]);
    }
    if (depths.empty()) throw InvalidArgument("gate-metrics: give --theta or --sweep");
    Table t{"gate_metrics", {"theta", "reflectivity", "transmissivity", "leakage", "fidelity", "success_probability"}};
    for (double d : depths) {
        GateMetrics m = hadamard_metrics(d);
        t.add({d, m.reflectivity, m.transmissivity, m.leakage, m.fidelity, m.success_probability});
    }
    o.write("gate_metrics", {t});
}

// ---- schwinger ----

struct SchwingerArgs {
    std::string charges;
    int lambda = -1;
    std::string project;
    bool project_set = false;
    bool exact = false;
    bool vqe = false;
    bool all = false;
    std::uint64_t seed = 1;
    double noise = 0.0;
    int max_iter = VqeConfig{}.max_iter;
    std::string transcript;
    std::string export_prefix;
};

SectorProblem sector_from(const SchwingerArgs& a, const ChargeConfig& c) {
    LatticeSpec spec;
    SymmetrySector sector;
    const StudyConfiguration* study = nullptr;
    for (const auto& s : study_configurations()) {
        if (s.charges == c) study = &s;
    }
    spec.lambda = a.lambda >= 0 ? a.lambda : study ? study->lambda : 3;
    if (a.project_set) sector = SymmetrySector::parse(a.project);
    else if (study) sector = study->sector;
    return build_sector(spec, c, sector);
}

struct Solved {
    EnergyRecord energy;
    Eigen::VectorXd vector;  // in the projected basis
    int iterations = 0;
    std::unique_ptr<VqeRun> run;
};

Solved solve(const SectorProblem& p, const SchwingerArgs& a, std::uint64_t seed) {
    HermitianOperator h(p.projected.dense());
    Solved s;
    if (a.vqe) {
        VqeConfig c;
        c.max_iter = a.max_iter;
        s.run = std::make_unique<VqeRun>(vqe_minimize(h, NoiseModel{a.noise, 0.0, seed}, c));
        s.energy = s.run->energy;
        s.vector = ucc_amplitudes(s.run->iterations.back().theta);
        s.iterations = static_cast<int>(s.run->iterations.size());
    } else {
        auto [e, v] = exact_ground(h);
        s.energy = {e, 0.0, 0.0};
        s.vector = v;
    }
    return s;
}

void run_schwinger(const SchwingerArgs& a, const Output& o) {
    if (a.exact == a.vqe) throw InvalidArgument("schwinger: choose exactly one of --exact, --vqe");
    if (a.all) {
        Table t{"energies", {"config", "value", "stat_sigma", "sys_sigma", "d", "d_sym"}};
        std::uint64_t i = 0;
        for (const auto& s : study_configurations()) {
            SectorProblem p = sector_from(a, s.charges);
            Solved r = solve(p, a, a.seed + i++);
            t.add({p.charges.label(), r.energy.value, r.energy.stat_sigma, r.energy.sys_sigma,
                   static_cast<long long>(p.full.dim), static_cast<long long>(p.projected.dim)});
        }
        o.write("energies", {t});
        return;
    }
    ChargeConfig c = parse_label(a.charges);
    SectorProblem p = sector_from(a, c);
    Solved r = solve(p, a, a.seed);

    std::vector<Table> out;
    Table e{"sector", {"config", "lambda", "sector", "d", "d_sym", "value", "stat_sigma", "sys_sigma", "iterations"}};
    e.add({p.charges.label(), static_cast<long long>(p.spec.lambda), p.sector.label(),
           static_cast<long long>(p.full.dim), static_cast<long long>(p.projected.dim), r.energy.value,
           r.energy.stat_sigma, r.energy.sys_sigma, static_cast<long long>(r.iterations)});
    out.push_back(e);

    // Two-charge configurations also report V(r); the references are solved
    // the same way in their standard sectors.
    if (c.positions.size() == 1 || c.positions.size() == 2) {
        EnergyTable table;
        table.n_sites = p.spec.n_fermion_sites;
        table.entries[p.charges] = r.energy;
        for (const char* ref : {"", "0"}) {
            ChargeConfig rc = parse_label(ref);
            if (table.contains(rc)) continue;
            SchwingerArgs ra = a;
            ra.lambda = -1;
            ra.project_set = false;
            table.entries[rc] = solve(sector_from(ra, rc), ra, a.seed + 1 + rc.positions.size()).energy;
        }
        Table d{"derived", {"quantity", "value", "stat_sigma", "sys_sigma"}};
        EnergyRecord mh = heavy_meson_mass(table);
        d.add({std::string("M_H"), mh.value, mh.stat_sigma, mh.sys_sigma});
        if (c.positions.size() == 2) {
            int sep = ring_distance(c.positions[0], c.positions[1], table.n_sites);
            ChargeConfig canonical{{0, sep}};
            table.entries[canonical] = r.energy;
            EnergyRecord v = two_body_potential(table, canonical);
            d.add({"V(" + std::to_string(sep) + ")", v.value, v.stat_sigma, v.sys_sigma});
        }
        out.push_back(d);
    }

    LocalObservables obs = local_observables(r.vector, p.projected, p.spec);
    Table prof{"observables", {"site", "rho", "e2"}};
    for (int n = 0; n < obs.rho.size(); ++n) prof.add({static_cast<long long>(n), obs.rho(n), obs.e2(n)});
    out.push_back(prof);
    o.write("schwinger", out);

    if (!a.transcript.empty()) {
        if (!r.run) throw InvalidArgument("--transcript needs --vqe");
        std::ofstream t(o.side_path(a.transcript));
        if (!t) throw InvalidArgument("cannot write transcript " + a.transcript);
        write_transcript(t, *r.run, p.charges.label());
    }
    if (!a.export_prefix.empty()) {
        std::string prefix = o.side_path(a.export_prefix);
        std::ofstream m(prefix + ".mat"), b(prefix + ".basis");
        if (!m || !b) throw InvalidArgument("cannot write export " + prefix);
        write_sparse(m, p.projected);
        write_basis_manifest(b, p.full.basis, p.spec.n_fermion_sites);
    }
}

// ---- analyze ----

struct AnalyzeArgs {
    std::string table;
    std::vector<std::string> fits;
    double eft_mass = 0.0;
    std::string profile;
    int samples = FitOptions{}.samples;
    std::uint64_t seed = 1;
};

void run_analyze(const AnalyzeArgs& a, const Output& o) {
    EnergyTable table = read_energy_table(a.table);
    std::vector<Table> out;

    Table pot{"potentials", {"config", "kind", "r1", "r2", "value", "stat_sigma", "sys_sigma"}};
    EnergyRecord mh = heavy_meson_mass(table);
    pot.add({std::string("(0)"), std::string("M_H"), 0.0, 0.0, mh.value, mh.stat_sigma, mh.sys_sigma});
    for (const auto& [c, rec] : table.entries) {
        if (c.positions.size() == 2) {
            EnergyRecord v = two_body_potential(table, c);
            double r = ring_distance(c.positions[0], c.positions[1], table.n_sites);
            pot.add({c.label(), std::string("V2"), r, 0.0, v.value, v.stat_sigma, v.sys_sigma});
        } else if (c.positions.size() == 3) {
            auto [j, v] = three_body_potential(table, c);
            pot.add({c.label(), std::string("V3"), j.r1, j.r2, v.value, v.stat_sigma, v.sys_sigma});
        }
    }
    out.push_back(pot);

    std::map<std::string, ExpFit> fits;
    for (const auto& name : a.fits) {
        Channel ch;
        if (name == "qq") ch = Channel::like;
        else if (name == "qqbar") ch = Channel::opposite;
        else throw InvalidArgument("--fit takes qq or qqbar, not '" + name + "'");
        std::vector<FitPoint> pts;
        for (int r = 0; r <= table.n_sites / 2; ++r) {
            ChargeConfig c{{0, r}};
            if ((r % 2 == 0) == (ch == Channel::like) && table.contains(c)) {
                pts.push_back({double(r), two_body_potential(table, c)});
            }
        }
        FitOptions opt;
        opt.samples = a.samples;
        opt.seed = a.seed;
        fits[name] = fit_exponential(pts, table.n_sites, ch, opt);
    }
    if (!fits.empty()) {
        Table ft{"fits", {"channel", "g2", "m", "sigma_g2", "sigma_m", "cov_g2g2", "cov_g2m", "cov_mm", "ellipse_r1",
                          "ellipse_r2", "axis1_g2", "axis1_m", "residual_norm", "samples", "failed_samples"}};
        Table curve{"fit_curves", {"channel", "r", "v"}};
        for (const auto& [name, f] : fits) {
            ft.add({name, f.g2, f.m, f.sigma_g2, f.sigma_m, f.covariance(0, 0), f.covariance(0, 1),
                    f.covariance(1, 1), f.ellipse_radii(0), f.ellipse_radii(1), f.ellipse_axes(0, 0),
                    f.ellipse_axes(1, 0), f.residual_norm, static_cast<long long>(f.samples),
                    static_cast<long long>(f.failed_samples)});
            for (int i = 0; i <= 80; ++i) {
                double r = 0.05 * i;
                curve.add({name, r, image_sum_potential(r, f.g2, f.m, f.channel, table.n_sites)});
            }
        }
        out.push_back(ft);
        out.push_back(curve);
    }

    if (a.eft_mass > 0) {
        auto it = fits.find("qqbar");
        if (it == fits.end()) throw InvalidArgument("--eft needs --fit qqbar");
        EftMatch m = match_eft(it->second, a.eft_mass);
        Table et{"eft", {"quantity", "value"}};
        et.add({std::string("m_h_eft"), m.m_h_eft});
        et.add({std::string("scattering_length"), m.scattering_length});
        et.add({std::string("c0"), m.c0});
        et.add({std::string("c0_born"), m.c0_born});
        et.add({std::string("grid_change"), m.grid_change});
        for (std::size_t i = 0; i < m.bound_state_energies.size(); ++i) {
            et.add({"even_bound_" + std::to_string(i), m.bound_state_energies[i]});
        }
        for (std::size_t i = 0; i < m.odd_bound_state_energies.size(); ++i) {
            et.add({"odd_bound_" + std::to_string(i), m.odd_bound_state_energies[i]});
        }
        out.push_back(et);
    }

    if (!a.profile.empty()) {
        std::ifstream in(a.profile);
        if (!in) throw MalformedInput("cannot open profile " + a.profile);
        std::vector<double> rho, e2;
        std::string line;
        bool header = true;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            if (header) {
                header = false;
                continue;
            }
            auto f = split_csv(line);
            if (f.size() < 3) throw MalformedInput(a.profile + ": expected site,rho,e2");
            rho.push_back(parse_double(f[1], a.profile));
            e2.push_back(parse_double(f[2], a.profile));
        }
        Eigen::VectorXd r = Eigen::Map<Eigen::VectorXd>(rho.data(), rho.size());
        Eigen::VectorXd e = Eigen::Map<Eigen::VectorXd>(e2.data(), e2.size());
        Estimate q = charge_radius(r, RadiusKind::charge);
        Estimate fe = charge_radius(e, RadiusKind::field_energy);
        Table rt{"radii", {"kind", "value", "sigma"}};
        rt.add({std::string("charge"), q.value, q.sigma});
        rt.add({std::string("field_energy"), fe.value, fe.sigma});
        out.push_back(rt);
    }
    o.write("analysis", out);
}

// ---- nuclear ----

struct NuclearArgs {
    std::string dir;
    bool exact = false;
    bool vqe = false;
    std::uint64_t seed = 1;
    std::vector<double> systematics;
    bool extrapolate = false;
    std::vector<std::string> thresholds;
    int replicas = ExtrapolationOptions{}.replicas;
    std::vector<double> band_l;
};

double threshold_for(const std::vector<std::string>& items, const std::string& nucleus) {
    std::optional<double> fallback;
    for (const auto& item : items) {
        auto eq = item.find('=');
        if (eq == std::string::npos) {
            fallback = parse_double(item, "--threshold");
        } else if (item.substr(0, eq) == nucleus) {
            return parse_double(item.substr(eq + 1), "--threshold");
        }
    }
    if (!fallback) throw InvalidArgument("no --threshold given for " + nucleus);
    return *fallback;
}

void run_nuclear(const NuclearArgs& a, const Output& o) {
    if (a.exact == a.vqe) throw InvalidArgument("nuclear: choose exactly one of --exact, --vqe");
    auto problems = load_directory(a.dir, &std::cerr);
    if (problems.empty()) throw MalformedInput("no .mat files in " + a.dir);
    std::map<std::string, std::vector<const NuclearProblem*>> by_nucleus;
    for (const auto& p : problems) by_nucleus[p.meta.nucleus].push_back(&p);

    Table et{"energies", {"nucleus", "n_max", "l_fm", "d", "value", "stat_sigma", "sys_sigma", "iterations"}};
    Table bt{"bands", {"nucleus", "l_fm", "mean", "sigma", "lo", "hi"}};
    Table xt{"extrapolation", {"nucleus", "threshold", "e_inf", "a", "k_inf", "e_inf_mc", "e_inf_sigma",
                               "a_at_bound", "replicas", "failed_replicas", "coverage_at_largest"}};
    std::uint64_t run_index = 0;
    for (const auto& [name, list] : by_nucleus) {
        std::vector<ExtrapolationPoint> pts;
        for (std::size_t i = 0; i < list.size(); ++i) {
            const NuclearProblem& p = *list[i];
            double sys = !a.systematics.empty() ? a.systematics[std::min(i, a.systematics.size() - 1)]
                         : p.meta.n_max == 2 ? 0.001
                         : p.meta.n_max == 4 ? 0.005
                                             : 0.01;
            EnergyRecord e;
            long long iters = 0;
            if (a.vqe) {
                VqeConfig c;
                c.max_iter = 25;
                c.trailing_window = 5;
                VqeRun run = vqe_minimize(p.h, NoiseModel{sys, 0.0, a.seed + run_index++}, c);
                e = run.energy;
                iters = static_cast<long long>(run.iterations.size());
            } else {
                // The per-model-space band feeds the extrapolation either way.
                double v = exact_ground(p.h).first;
                e = {v, 0.0, sys * std::abs(v)};
            }
            et.add({name, static_cast<long long>(p.meta.n_max), p.meta.l_fm, static_cast<long long>(p.h.dim()),
                    e.value, e.stat_sigma, e.sys_sigma, iters});
            pts.push_back({p.meta.l_fm, e});
        }
        if (!a.extrapolate) continue;
        ExtrapolationOptions opt;
        opt.threshold = threshold_for(a.thresholds, name);
        opt.replicas = a.replicas;
        opt.seed = a.seed;
        opt.band_l = a.band_l;
        ExtrapolationFit f = extrapolate(pts, opt);
        xt.add({name, opt.threshold, f.e_infinity, f.a, f.k_infinity, f.e_infinity_mc.value, f.e_infinity_mc.sigma,
                static_cast<long long>(f.a_at_bound), static_cast<long long>(f.replicas),
                static_cast<long long>(f.failed_replicas), f.coverage_at_largest});
        for (const auto& b : f.band) bt.add({name, b.l_fm, b.mean, b.sigma, b.lo, b.hi});
    }
    std::vector<Table> out = {et};
    if (a.extrapolate) {
        out.push_back(xt);
        out.push_back(bt);
    }
    o.write("nuclear", out);
}

// ---- nn-phase ----

struct NnArgs {
    std::string channel = "triplet";
    double p_step = 5.0;
    double p_max = 330.0;
    bool calibrate = false;
};

void run_nn(const NnArgs& a, const Output& o) {
    ChannelCouplings c;
    if (a.channel == "singlet") c = ChannelCouplings::singlet_nlo();
    else if (a.channel == "triplet") c = ChannelCouplings::triplet_nlo();
    else throw InvalidArgument("--channel takes singlet or triplet");
    if (a.calibrate) c.normalization = calibrate_normalization(c, -2.2246);
    Table pt{"phase_shift", {"p_mev", "delta_deg"}};
    for (double p = a.p_step; p <= a.p_max + 1e-9; p += a.p_step) pt.add({p, nn_phase_shift(c, p)});
    Table bt{"poles", {"index", "energy_mev", "normalization"}};
    auto poles = nn_bound_states(c);
    for (std::size_t i = 0; i < poles.size(); ++i) bt.add({static_cast<long long>(i), poles[i], c.normalization});
    o.write("nn_" + a.channel, {pt, bt});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fvqe: frequency-bin VQE simulation and analysis"};
    app.require_subcommand(1);
    // Global options are also accepted after the subcommand name.
    app.fallthrough();
    Output out;
    if (const char* env = std::getenv("FVQE_OUTPUT_DIR")) out.dir = env;
    app.add_option("--format", out.format, "csv, jsonl or gnuplot")
        ->check(CLI::IsMember({"csv", "jsonl", "json-lines", "gnuplot", "gnuplot-data"}));
    app.add_option("--output-dir", out.dir, "write tables here instead of stdout (default $FVQE_OUTPUT_DIR)");

    GateArgs ga;
    auto* gate = app.add_subcommand("gate-metrics", "frequency-bin Hadamard metrics");
    gate->add_option("--theta", ga.theta, "modulation depths")->delimiter(',');
    gate->add_option("--sweep", ga.sweep, "lo,hi,step")->delimiter(',')->expected(3);

    SchwingerArgs sa;
    auto* sch = app.add_subcommand("schwinger", "lattice Schwinger model sectors");
    sch->add_option("--charges", sa.charges, "static charge sites, e.g. 0,2 (empty or vac for none)");
    sch->add_option("--lambda", sa.lambda, "electric-energy truncation (default: standard study value, else 3)");
    sch->add_option("--project", sa.project, "symmetry sector, e.g. p@0,momentum or none")
        ->each([&](const std::string&) { sa.project_set = true; });
    sch->add_flag("--exact", sa.exact, "dense diagonalization");
    sch->add_flag("--vqe", sa.vqe, "simulated VQE");
    sch->add_flag("--all", sa.all, "energy table for every standard configuration");
    sch->add_option("--seed", sa.seed, "noise seed");
    sch->add_option("--noise", sa.noise, "systematic fraction, e.g. 0.01");
    sch->add_option("--max-iter", sa.max_iter, "VQE iteration budget");
    sch->add_option("--transcript", sa.transcript, "write the VQE transcript (JSON lines) here");
    sch->add_option("--export", sa.export_prefix, "write <prefix>.mat and <prefix>.basis");

    AnalyzeArgs aa;
    auto* ana = app.add_subcommand("analyze", "potentials, fits, EFT matching and radii from an energy table");
    ana->add_option("table", aa.table, "CSV with config,value,stat_sigma,sys_sigma")->required();
    ana->add_option("--fit", aa.fits, "qq and/or qqbar")->delimiter(',');
    ana->add_option("--eft", aa.eft_mass, "heavy-meson mass for contact matching (needs --fit qqbar)");
    ana->add_option("--profile", aa.profile, "CSV site,rho,e2 of a vacuum-subtracted single charge");
    ana->add_option("--samples", aa.samples, "Monte Carlo samples per fit");
    ana->add_option("--seed", aa.seed, "Monte Carlo seed");

    NuclearArgs na;
    auto* nuc = app.add_subcommand("nuclear", "ingest nuclear Hamiltonians, solve and extrapolate");
    nuc->add_option("dir", na.dir, "directory of *.mat files with .meta.json sidecars")->required();
    nuc->add_flag("--exact", na.exact, "dense diagonalization");
    nuc->add_flag("--vqe", na.vqe, "simulated VQE");
    nuc->add_option("--seed", na.seed, "noise and Monte Carlo seed");
    nuc->add_option("--sys", na.systematics, "systematic fraction per model space, ascending N_max")->delimiter(',');
    nuc->add_flag("--extrapolate", na.extrapolate, "fit E(L) = E_inf + a exp(-2 k L)");
    nuc->add_option("--threshold", na.thresholds, "separation threshold in MeV, or NUCLEUS=MeV");
    nuc->add_option("--replicas", na.replicas, "Monte Carlo replicas");
    nuc->add_option("--band-l", na.band_l, "L values (fm) for the band; default the measured ones")->delimiter(',');

    NnArgs nn;
    auto* nnc = app.add_subcommand("nn-phase", "two-nucleon S-wave phase shifts and poles");
    nnc->add_option("--channel", nn.channel, "singlet or triplet");
    nnc->add_option("--p-step", nn.p_step, "momentum step, MeV");
    nnc->add_option("--p-max", nn.p_max, "largest momentum, MeV (below the cutoff)");
    nnc->add_flag("--calibrate", nn.calibrate, "rescale the normalization to put the pole at -2.2246 MeV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*gate) run_gate(ga, out);
        else if (*sch) run_schwinger(sa, out);
        else if (*ana) run_analyze(aa, out);
        else if (*nuc) run_nuclear(na, out);
        else if (*nnc) run_nn(nn, out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 10 + static_cast<int>(e.error_class());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
