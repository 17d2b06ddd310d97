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

#include "fvqe/schwinger.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "fvqe/errors.hpp"

namespace fvqe {

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

int stagger(int n) { return (n % 2 == 0) ? 1 : -1; }

bool within_truncation(const std::vector<int>& links, const LatticeSpec& spec) {
    if (spec.truncation == Truncation::per_link) {
        return std::all_of(links.begin(), links.end(), [&](int l) { return std::abs(l) <= spec.lambda; });
    }
    long sum = 0;
    for (int l : links) sum += static_cast<long>(l) * l;
    return sum <= spec.lambda;
}

int seed_bound(const LatticeSpec& spec) {
    if (spec.truncation == Truncation::per_link) return spec.lambda;
    return static_cast<int>(std::floor(std::sqrt(static_cast<double>(spec.lambda)) + 1e-12));
}

class BasisIndex {
public:
    explicit BasisIndex(const std::vector<PhysicalBasisState>& basis) : basis_(basis) {
        for (int i = 0; i < static_cast<int>(basis.size()); ++i) {
            index_[{basis[i].occupations, basis[i].links.empty() ? 0 : basis[i].links.back()}] = i;
        }
    }
    int find(const PhysicalBasisState& s) const {
        auto it = index_.find({s.occupations, s.links.empty() ? 0 : s.links.back()});
        if (it == index_.end() || !(basis_[it->second] == s)) return -1;
        return it->second;
    }

private:
    const std::vector<PhysicalBasisState>& basis_;
    std::map<std::pair<std::uint32_t, int>, int> index_;
};

using Permutation = std::vector<int>;

Permutation as_permutation(const std::vector<PhysicalBasisState>& basis, const BasisIndex& index,
                           const std::function<PhysicalBasisState(const PhysicalBasisState&)>& op,
                           const std::string& name) {
    Permutation p(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        int j = index.find(op(basis[i]));
        if (j < 0) throw SymmetryViolation(name + " does not map the physical basis onto itself");
        p[i] = j;
    }
    return p;
}

Permutation multiply(const Permutation& a, const Permutation& b) {
    Permutation c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
    return c;
}

}  // namespace

void LatticeSpec::validate() const {
    if (n_fermion_sites < 2 || n_fermion_sites % 2 != 0 || n_fermion_sites > 30) {
        throw InvalidArgument("LatticeSpec: n_fermion_sites must be even, >= 2 and <= 30");
    }
    if (lambda < 1) throw InvalidArgument("LatticeSpec: lambda must be >= 1");
}

ChargeConfig ChargeConfig::parse(const std::string& text) {
    ChargeConfig c;
    std::string t;
    for (char ch : text) {
        if (ch != '(' && ch != ')' && ch != ' ') t += ch;
    }
    if (t.empty() || t == "vac" || t == "Vac") return c;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw InvalidArgument("ChargeConfig: empty position in '" + text + "'");
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw InvalidArgument("ChargeConfig: bad position '" + item + "'");
        }
        if (used != item.size() || v < 0) throw InvalidArgument("ChargeConfig: bad position '" + item + "'");
        c.positions.push_back(v);
    }
    return c;
}

std::string ChargeConfig::label() const {
    if (positions.empty()) return "Vac";
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < positions.size(); ++i) os << (i ? "," : "") << positions[i];
    os << ')';
    return os.str();
}

std::vector<int> ChargeConfig::static_charges(int n_sites) const {
    std::vector<int> s(n_sites, 0);
    for (int p : positions) {
        if (p < 0 || p >= n_sites) throw InvalidArgument("ChargeConfig: position outside the lattice");
        s[p] += stagger(p);
    }
    return s;
}

int dynamical_charge(const PhysicalBasisState& s, int n) {
    return ((s.occupied(n) ? 1 : -1) + stagger(n)) / 2;
}

std::string SymmetrySector::label() const {
    std::vector<std::string> parts;
    auto sign = [](int e) { return e < 0 ? std::string("-") : std::string(); };
    if (parity_axis) parts.push_back("P@" + std::to_string(*parity_axis) + sign(parity_eigenvalue));
    if (cp_axis) parts.push_back("CP@" + std::to_string(*cp_axis) + sign(cp_eigenvalue));
    if (momentum) parts.push_back("p=0");
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
    return out.empty() ? "none" : out;
}

SymmetrySector SymmetrySector::parse(const std::string& text) {
    SymmetrySector s;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::transform(item.begin(), item.end(), item.begin(), [](unsigned char c) { return std::tolower(c); });
        if (item.empty() || item == "none") continue;
        int eig = +1;
        if (item.back() == '-') {
            eig = -1;
            item.pop_back();
        } else if (item.back() == '+') {
            item.pop_back();
        }
        std::string name = item;
        std::optional<int> axis;
        if (auto at = item.find('@'); at != std::string::npos) {
            name = item.substr(0, at);
            try {
                axis = std::stoi(item.substr(at + 1));
            } catch (const std::exception&) {
                throw InvalidArgument("SymmetrySector: bad axis in '" + item + "'");
            }
        }
        if (name == "momentum" || name == "mom" || name == "p=0") {
            s.momentum = true;
        } else if (name == "p") {
            s.parity_axis = axis.value_or(0);
            s.parity_eigenvalue = eig;
        } else if (name == "cp") {
            s.cp_axis = axis.value_or(1);
            s.cp_eigenvalue = eig;
        } else {
            throw InvalidArgument("SymmetrySector: unknown symmetry '" + item + "'");
        }
    }
    return s;
}

Eigen::MatrixXd SparseHamiltonian::dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto& t : entries) {
        m(t.row, t.col) = t.value;
        m(t.col, t.row) = t.value;
    }
    return m;
}

Eigen::VectorXd SparseHamiltonian::to_physical(const Eigen::VectorXd& v) const {
    if (v.size() != dim) throw DimensionError("to_physical: vector length differs from the matrix dimension");
    if (projection.size() == 0) return v;
    return projection * v;
}

bool satisfies_gauss_law(const PhysicalBasisState& s, const LatticeSpec& spec, const ChargeConfig& charges) {
    const int n = spec.n_fermion_sites;
    if (static_cast<int>(s.links.size()) != n) return false;
    if (n < 32 && (s.occupations >> n) != 0) return false;
    std::vector<int> st = charges.static_charges(n);
    for (int i = 0; i < n; ++i) {
        int prev = s.links[mod(i - 1, n)];
        if (s.links[i] - prev != dynamical_charge(s, i) + st[i]) return false;
    }
    return within_truncation(s.links, spec);
}

std::vector<PhysicalBasisState> enumerate_physical_basis(const LatticeSpec& spec, const ChargeConfig& charges) {
    spec.validate();
    const int n = spec.n_fermion_sites;
    const std::vector<int> st = charges.static_charges(n);
    const int bound = seed_bound(spec);
    std::vector<PhysicalBasisState> out;
    std::vector<int> q(n);
    for (std::uint32_t occ = 0; occ < (1u << n); ++occ) {
        PhysicalBasisState s{occ, {}};
        int total = 0;
        for (int i = 0; i < n; ++i) {
            q[i] = dynamical_charge(s, i) + st[i];
            total += q[i];
        }
        if (total != 0) continue;  // no periodic closure
        for (int seed = -bound; seed <= bound; ++seed) {
            std::vector<int> links(n);
            int l = seed;
            for (int i = 0; i < n; ++i) {
                l += q[i];
                links[i] = l;
            }
            if (within_truncation(links, spec)) out.push_back({occ, std::move(links)});
        }
    }
    return out;
}

SparseHamiltonian build_hamiltonian(const LatticeSpec& spec, const std::vector<PhysicalBasisState>& basis) {
    spec.validate();
    const int n = spec.n_fermion_sites;
    std::vector<int> implied;
    for (const auto& s : basis) {
        if (static_cast<int>(s.links.size()) != n || (n < 32 && (s.occupations >> n) != 0)) {
            throw DimensionError("build_hamiltonian: basis state does not match the lattice size");
        }
        if (!within_truncation(s.links, spec)) {
            throw InvalidArgument("build_hamiltonian: basis state violates the truncation");
        }
        std::vector<int> st(n);
        for (int i = 0; i < n; ++i) st[i] = s.links[i] - s.links[mod(i - 1, n)] - dynamical_charge(s, i);
        if (implied.empty()) implied = st;
        else if (st != implied) throw InvalidArgument("build_hamiltonian: basis states carry different static charges");
    }

    BasisIndex index(basis);
    std::map<std::pair<int, int>, double> acc;
    for (int i = 0; i < static_cast<int>(basis.size()); ++i) {
        const auto& s = basis[i];
        double diag = 0.0;
        for (int k = 0; k < n; ++k) {
            diag += static_cast<double>(s.links[k]) * s.links[k];
            diag += 0.5 * spec.mu * stagger(k) * (s.occupied(k) ? 1.0 : -1.0);
        }
        if (diag != 0.0) acc[{i, i}] += diag;
        for (int k = 0; k < n; ++k) {
            int m = (k + 1) % n;
            if (s.occupied(k) == s.occupied(m)) continue;
            PhysicalBasisState t = s;
            t.occupations ^= (1u << k) | (1u << m);
            t.links[k] += s.occupied(k) ? -1 : 1;
            int j = index.find(t);
            if (j > i) acc[{i, j}] += spec.x;
        }
    }
    SparseHamiltonian h;
    h.dim = static_cast<int>(basis.size());
    h.basis = basis;
    for (const auto& [ij, v] : acc) {
        if (v != 0.0) h.entries.push_back({ij.first, ij.second, v});
    }
    return h;
}

PhysicalBasisState translate_state(const PhysicalBasisState& s, int shift, int n_sites) {
    PhysicalBasisState t{0, std::vector<int>(n_sites)};
    for (int i = 0; i < n_sites; ++i) {
        int j = mod(i + shift, n_sites);
        if (s.occupied(i)) t.occupations |= 1u << j;
        t.links[j] = s.links[i];
    }
    return t;
}

PhysicalBasisState reflect_state(const PhysicalBasisState& s, int axis, bool conjugate, int n_sites) {
    PhysicalBasisState t{0, std::vector<int>(n_sites)};
    for (int i = 0; i < n_sites; ++i) {
        bool o = s.occupied(i) != conjugate;
        if (o) t.occupations |= 1u << mod(axis - i, n_sites);
        // Link i joins sites i and i+1, which land on axis-i and axis-i-1.
        t.links[mod(axis - i - 1, n_sites)] = conjugate ? s.links[i] : -s.links[i];
    }
    return t;
}

SparseHamiltonian project_symmetry(const SparseHamiltonian& h, const SymmetrySector& sector) {
    if (sector.empty()) return h;
    if (h.projection.size() != 0) throw InvalidArgument("project_symmetry: matrix is already projected");
    if (h.basis.empty()) throw InvalidArgument("project_symmetry: matrix has no physical basis");
    const int n = static_cast<int>(h.basis.front().links.size());
    BasisIndex index(h.basis);

    std::vector<std::pair<Permutation, int>> generators;
    if (sector.momentum) {
        generators.push_back({as_permutation(h.basis, index,
                                             [&](const PhysicalBasisState& s) { return translate_state(s, 2, n); },
                                             "translation"),
                              1});
    }
    if (sector.parity_axis) {
        int axis = *sector.parity_axis;
        if (mod(axis, 2) != 0) throw InvalidArgument("project_symmetry: parity axis must be an even site");
        generators.push_back({as_permutation(h.basis, index,
                                             [&](const PhysicalBasisState& s) { return reflect_state(s, axis, false, n); },
                                             "parity about site " + std::to_string(axis)),
                              sector.parity_eigenvalue});
    }
    if (sector.cp_axis) {
        int axis = *sector.cp_axis;
        if (mod(axis, 2) != 1) throw InvalidArgument("project_symmetry: charge-parity axis must be an odd site");
        generators.push_back({as_permutation(h.basis, index,
                                             [&](const PhysicalBasisState& s) { return reflect_state(s, axis, true, n); },
                                             "charge parity about site " + std::to_string(axis)),
                              sector.cp_eigenvalue});
    }

    const Eigen::MatrixXd full = h.dense();
    for (const auto& [p, chi] : generators) {
        double worst = 0.0;
        for (int i = 0; i < h.dim; ++i) {
            for (int j = 0; j < h.dim; ++j) worst = std::max(worst, std::abs(full(p[i], p[j]) - full(i, j)));
        }
        if (worst > 1e-10) {
            std::ostringstream msg;
            msg << "project_symmetry: symmetry does not commute with H (max deviation " << worst << ")";
            throw SymmetryViolation(msg.str());
        }
    }

    // Group closure with characters.
    Permutation id(h.dim);
    for (int i = 0; i < h.dim; ++i) id[i] = i;
    std::map<Permutation, int> group{{id, 1}};
    std::vector<Permutation> frontier{id};
    while (!frontier.empty()) {
        std::vector<Permutation> next;
        for (const auto& g : frontier) {
            for (const auto& [p, chi] : generators) {
                Permutation c = multiply(p, g);
                int character = group.at(g) * chi;
                auto [it, inserted] = group.emplace(c, character);
                if (inserted) next.push_back(c);
                else if (it->second != character) throw SymmetryViolation("project_symmetry: inconsistent sector eigenvalues");
            }
        }
        frontier = std::move(next);
    }

    // One symmetric combination per orbit; orbits have disjoint support.
    std::vector<Eigen::VectorXd> columns;
    std::vector<bool> seen(h.dim, false);
    for (int i = 0; i < h.dim; ++i) {
        if (seen[i]) continue;
        Eigen::VectorXd v = Eigen::VectorXd::Zero(h.dim);
        for (const auto& [g, chi] : group) {
            v(g[i]) += chi;
            seen[g[i]] = true;
        }
        double norm = v.norm();
        if (norm > 1e-12) columns.push_back(v / norm);
    }

    SparseHamiltonian out;
    out.dim = static_cast<int>(columns.size());
    out.basis = h.basis;
    out.projection.resize(h.dim, out.dim);
    for (int c = 0; c < out.dim; ++c) out.projection.col(c) = columns[c];
    Eigen::MatrixXd hp = out.projection.transpose() * full * out.projection;
    for (int r = 0; r < out.dim; ++r) {
        for (int c = r; c < out.dim; ++c) {
            double v = 0.5 * (hp(r, c) + hp(c, r));
            if (std::abs(v) > 1e-13) out.entries.push_back({r, c, v});
        }
    }
    return out;
}

LocalObservables local_observables(const Eigen::VectorXd& vector, const std::vector<PhysicalBasisState>& basis,
                                   const LatticeSpec& spec) {
    const int n = spec.n_fermion_sites;
    if (vector.size() != static_cast<Eigen::Index>(basis.size())) {
        throw DimensionError("local_observables: vector length differs from the basis size");
    }
    if (std::abs(vector.squaredNorm() - 1.0) > 1e-8) throw NormalizationError("local_observables: vector is not normalized");
    LocalObservables out{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const double p = vector(i) * vector(i);
        if (p == 0.0) continue;
        const auto& s = basis[i];
        if (static_cast<int>(s.links.size()) != n) throw DimensionError("local_observables: lattice mismatch");
        for (int k = 0; k < n; ++k) {
            if (dynamical_charge(s, k) != 0) out.rho(k) += p;
            out.e2(k) += p * s.links[k] * s.links[k];
        }
    }
    return out;
}

LocalObservables local_observables(const Eigen::VectorXd& vector, const SparseHamiltonian& h,
                                   const LatticeSpec& spec) {
    return local_observables(h.to_physical(vector), h.basis, spec);
}

LocalObservables translate(const LocalObservables& p, int shift) {
    const int n = static_cast<int>(p.rho.size());
    LocalObservables out{Eigen::VectorXd(n), Eigen::VectorXd(n)};
    for (int i = 0; i < n; ++i) {
        out.rho(i) = p.rho(mod(i - shift, n));
        out.e2(i) = p.e2(mod(i - shift, n));
    }
    return out;
}

LocalObservables operator-(const LocalObservables& a, const LocalObservables& b) {
    if (a.rho.size() != b.rho.size()) throw DimensionError("LocalObservables: lattice mismatch");
    return {a.rho - b.rho, a.e2 - b.e2};
}

LocalObservables operator+(const LocalObservables& a, const LocalObservables& b) {
    if (a.rho.size() != b.rho.size()) throw DimensionError("LocalObservables: lattice mismatch");
    return {a.rho + b.rho, a.e2 + b.e2};
}

LocalObservables subtracted_densities(const LocalObservables& target, const ReferenceProfiles& refs,
                                      const std::vector<int>& positions, SubtractionOrder order) {
    const int n = static_cast<int>(target.rho.size());
    auto one_body = [&](int p) { return translate(refs.single, p) - refs.vacuum; };
    LocalObservables out = target - refs.vacuum;
    if (order == SubtractionOrder::vacuum) return out;
    for (int p : positions) out = out - one_body(p);
    if (order == SubtractionOrder::one_body) return out;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        for (std::size_t j = i + 1; j < positions.size(); ++j) {
            int a = positions[i], b = positions[j];
            int s = mod(b - a, n);
            int anchor = a;
            if (s > n / 2) {
                s = n - s;
                anchor = b;
            }
            if (s >= static_cast<int>(refs.pair_by_offset.size()) || !refs.pair_by_offset[s]) {
                throw MissingEntry("subtracted_densities: no pair profile at separation " + std::to_string(s));
            }
            LocalObservables pair = translate(*refs.pair_by_offset[s], anchor) - refs.vacuum;
            out = out - (pair - one_body(a) - one_body(b));
        }
    }
    return out;
}

const std::vector<StudyConfiguration>& study_configurations() {
    static const std::vector<StudyConfiguration> table = [] {
        auto cfg = [](std::vector<int> pos, int lambda, const std::string& sym) {
            return StudyConfiguration{ChargeConfig{std::move(pos)}, lambda, SymmetrySector::parse(sym)};
        };
        return std::vector<StudyConfiguration>{
            cfg({}, 3, "p@0,momentum"),
            cfg({0}, 4, "p@0"),
            cfg({0, 0}, 5, "p@0"),
            cfg({0, 2}, 5, "p@2"),
            cfg({0, 4}, 5, "p@0"),
            cfg({0, 1}, 5, "cp@1"),
            cfg({0, 3}, 8, "cp@3"),
            cfg({0, 0, 0}, 12, "p@0"),
            cfg({0, 0, 2}, 5, ""),
            cfg({0, 0, 4}, 4, ""),
            cfg({0, 2, 4}, 4, "p@4"),
            cfg({0, 0, 1}, 7, ""),
            cfg({0, 0, 3}, 7, ""),
            cfg({0, 2, 1}, 6, "p@2"),
            cfg({0, 2, 3}, 7, ""),
            cfg({0, 2, 5}, 7, "p@2"),
            cfg({0, 4, 1}, 7, ""),
        };
    }();
    return table;
}

const StudyConfiguration& study_configuration(const ChargeConfig& charges) {
    for (const auto& c : study_configurations()) {
        if (c.charges == charges) return c;
    }
    throw MissingEntry("no study configuration for charges " + charges.label());
}

SparseHamiltonian order_by_diagonal(const SparseHamiltonian& h) {
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(h.dim);
    for (const auto& t : h.entries) {
        if (t.row == t.col) diag(t.row) = t.value;
    }
    std::vector<int> order(h.dim);
    for (int i = 0; i < h.dim; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return diag(a) < diag(b); });
    std::vector<int> where(h.dim);
    for (int i = 0; i < h.dim; ++i) where[order[i]] = i;

    SparseHamiltonian out;
    out.dim = h.dim;
    for (const auto& t : h.entries) {
        int r = where[t.row], c = where[t.col];
        out.entries.push_back({std::min(r, c), std::max(r, c), t.value});
    }
    std::sort(out.entries.begin(), out.entries.end(),
              [](const Triplet& a, const Triplet& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
    if (h.projection.size() == 0) {
        out.basis.resize(h.dim);
        for (int i = 0; i < h.dim; ++i) out.basis[i] = h.basis[order[i]];
    } else {
        out.basis = h.basis;
        out.projection.resize(h.projection.rows(), h.dim);
        for (int i = 0; i < h.dim; ++i) out.projection.col(i) = h.projection.col(order[i]);
    }
    return out;
}

SectorProblem build_sector(const LatticeSpec& spec, const ChargeConfig& charges, const SymmetrySector& sector) {
    SectorProblem p{spec, charges, sector, {}, {}};
    p.full = build_hamiltonian(spec, enumerate_physical_basis(spec, charges));
    p.projected = order_by_diagonal(project_symmetry(p.full, sector));
    return p;
}

}  // namespace fvqe
