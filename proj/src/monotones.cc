// Copyright 2026 The magicsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "magicsim/monotones.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

#include "magicsim/simplex.h"

namespace magicsim {

using cd = std::complex<double>;

namespace {

const double kSqrt2 = std::numbers::sqrt2;
const double kSqrt3 = std::numbers::sqrt3;
const double kQ0 = std::sqrt(2.0 / 3.0);
const double kUMax = 1.0 / std::numbers::sqrt3;  // u = sqrt(1 - q^2) at q = sqrt(2/3)

std::string lower(std::string s) {
    for (auto &c : s) c = (char)std::tolower((unsigned char)c);
    return s;
}

}  // namespace

BlochState BlochState::named(const std::string &name) {
    std::string s = lower(name);
    const double r = 1.0 / kSqrt2;
    const double t = 1.0 / kSqrt3;
    if (s == "h") return {r, 0, r};
    if (s == "t") return {r, r, 0};
    if (s == "f") return {t, t, t};
    if (s == "0" || s == "zero") return {0, 0, 1};
    if (s == "1" || s == "one") return {0, 0, -1};
    if (s == "+" || s == "plus") return {1, 0, 0};
    if (s == "-" || s == "minus") return {-1, 0, 0};
    if (s == "+i" || s == "i") return {0, 1, 0};
    if (s == "-i") return {0, -1, 0};
    if (s == "mixed" || s == "maximally_mixed") return {0, 0, 0};
    throw std::invalid_argument("unknown named state '" + name + "'");
}

BlochState BlochState::noisy(const BlochState &base, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("noise mixing weight must be in [0,1]");
    return {alpha * base.bx, alpha * base.by, alpha * base.bz};
}

double BlochState::norm() const { return std::sqrt(bx * bx + by * by + bz * bz); }
double BlochState::l1() const { return std::abs(bx) + std::abs(by) + std::abs(bz); }
bool BlochState::is_pure(double tol) const { return std::abs(norm() - 1.0) <= tol; }

void BlochState::validate() const {
    if (!std::isfinite(bx) || !std::isfinite(by) || !std::isfinite(bz)) throw std::invalid_argument("non-finite Bloch vector");
    if (bx * bx + by * by + bz * bz > 1.0 + 1e-12) throw std::invalid_argument("Bloch vector norm exceeds 1");
}

double BlochState::rA() const { return (bx + bz - 2 * by) / std::sqrt(6.0); }
double BlochState::rB() const { return (bx - bz) / kSqrt2; }
double BlochState::rF() const { return (bx + by + bz) / kSqrt3; }

DenseOp BlochState::density() const { return bloch_density(bx, by, bz); }

DenseVec BlochState::pure_vector() const {
    double nrm = norm();
    DenseVec v(2);
    double c = std::clamp(bz / std::max(nrm, 1e-300), -1.0, 1.0);
    double th = std::acos(c);
    double ph = std::atan2(by, bx);
    v(0) = std::cos(th / 2);
    v(1) = std::polar(std::sin(th / 2), ph);
    return v;
}

BlochState Clifford1Q::apply(const BlochState &b) const {
    std::array<double, 3> o = b.vec(), r{};
    for (int i = 0; i < 3; i++) r[i] = sign[i] * o[perm[i]];
    return {r[0], r[1], r[2]};
}

BlochState Clifford1Q::apply_inverse(const BlochState &b) const {
    std::array<double, 3> nw = b.vec(), o{};
    for (int i = 0; i < 3; i++) o[perm[i]] = sign[i] * nw[i];
    return {o[0], o[1], o[2]};
}

const std::vector<Clifford1Q> &single_qubit_cliffords() {
    static const std::vector<Clifford1Q> group = [] {
        // H: (x,y,z) -> (z,-y,x) ; S: (x,y,z) -> (-y,x,z)
        Clifford1Q H{{Gate{GateKind::H, 0}}, {2, 1, 0}, {1, -1, 1}};
        Clifford1Q S{{Gate{GateKind::S, 0}}, {1, 0, 2}, {-1, 1, 1}};
        std::vector<Clifford1Q> out;
        std::deque<Clifford1Q> queue;
        auto key = [](const Clifford1Q &c) {
            return std::make_pair(c.perm, c.sign);
        };
        std::map<std::pair<std::array<int, 3>, std::array<int, 3>>, int> seen;
        Clifford1Q id;
        queue.push_back(id);
        seen[key(id)] = 1;
        while (!queue.empty()) {
            Clifford1Q c = queue.front();
            queue.pop_front();
            out.push_back(c);
            for (const Clifford1Q *g : {&H, &S}) {
                Clifford1Q nc;
                nc.gates = c.gates;
                nc.gates.push_back(g->gates[0]);
                for (int i = 0; i < 3; i++) {
                    nc.perm[i] = c.perm[g->perm[i]];
                    nc.sign[i] = g->sign[i] * c.sign[g->perm[i]];
                }
                if (!seen.count(key(nc))) {
                    seen[key(nc)] = 1;
                    queue.push_back(nc);
                }
            }
        }
        return out;
    }();
    return group;
}

bool in_PY(const BlochState &b, double tol) {
    return b.bx >= -tol && b.by >= -tol && b.bz >= -tol && b.by <= b.bx + tol && b.by <= b.bz + tol;
}

bool is_stabilizer_mixture_1q(const BlochState &b, double tol) { return b.l1() <= 1.0 + tol; }

Canonical1Q canonicalize_PY(const BlochState &b) {
    b.validate();
    for (const auto &c : single_qubit_cliffords()) {
        BlochState t = c.apply(b);
        if (in_PY(t)) return {c, t};
    }
    throw std::logic_error("no Clifford maps the state into P_Y");
}

double witness_value(double q, const BlochState &s) {
    double u = std::sqrt(std::max(0.0, 1.0 - q * q));
    return (1.0 + q * (s.bx + s.bz) / kSqrt2 + u * s.by) / (1.0 + q / kSqrt2);
}

namespace {

double witness_value_u(double u, const BlochState &s) {
    double q = std::sqrt(std::max(0.0, 1.0 - u * u));
    return (1.0 + q * (s.bx + s.bz) / kSqrt2 + u * s.by) / (1.0 + q / kSqrt2);
}

std::array<double, 3> omega_direction(double q) {
    double u = std::sqrt(std::max(0.0, 1.0 - q * q));
    return {q / kSqrt2, u, q / kSqrt2};
}

}  // namespace

std::array<double, 6> witness_overlaps(double q) {
    auto n = omega_direction(q);
    const std::array<std::array<double, 3>, 6> stab = {{{0, 0, 1}, {0, 0, -1}, {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}}};
    std::array<double, 6> out{};
    for (int j = 0; j < 6; j++) {
        double dot = n[0] * stab[j][0] + n[1] * stab[j][1] + n[2] * stab[j][2];
        out[j] = std::sqrt(std::max(0.0, (1.0 + dot) / (1.0 + q / kSqrt2)));
    }
    return out;
}

Witness1Q lambda_plus_1q(const BlochState &b) {
    b.validate();
    Witness1Q w;
    if (is_stabilizer_mixture_1q(b)) {
        w.trivial = true;
        w.value = 1.0;
        w.q = 1.0;
        w.direction = {0, 0, 1};
        return w;
    }
    Canonical1Q can = canonicalize_PY(b);
    const BlochState &s = can.state;
    // Optimize over u = sqrt(1-q^2) in [0, 1/sqrt3]; smooth at q = 1.
    const int grid = 1000;
    int best = 0;
    double bestv = -1;
    for (int i = 0; i <= grid; i++) {
        double v = witness_value_u(kUMax * i / grid, s);
        if (v > bestv) {
            bestv = v;
            best = i;
        }
    }
    double lo = kUMax * std::max(0, best - 1) / grid;
    double hi = kUMax * std::min(grid, best + 1) / grid;
    const double gr = (std::sqrt(5.0) - 1) / 2;
    double c1 = hi - gr * (hi - lo), c2 = lo + gr * (hi - lo);
    double f1 = witness_value_u(c1, s), f2 = witness_value_u(c2, s);
    for (int it = 0; it < 200 && hi - lo > 1e-15; it++) {
        if (f1 < f2) {
            lo = c1;
            c1 = c2;
            f1 = f2;
            c2 = lo + gr * (hi - lo);
            f2 = witness_value_u(c2, s);
        } else {
            hi = c2;
            c2 = c1;
            f2 = f1;
            c1 = hi - gr * (hi - lo);
            f1 = witness_value_u(c1, s);
        }
    }
    double u = 0.5 * (lo + hi);
    double val = witness_value_u(u, s);
    for (double cand : {0.0, kUMax}) {
        double v = witness_value_u(cand, s);
        if (v >= val - 1e-15 && std::abs(cand - u) < 1e-7) {
            u = cand;
            val = v;
        }
    }
    w.q = (u == kUMax) ? kQ0 : std::sqrt(1.0 - u * u);
    w.value = std::max(val, 1.0);
    w.canonical = can.clifford;
    auto n = omega_direction(w.q);
    BlochState back = can.clifford.apply_inverse({n[0], n[1], n[2]});
    w.direction = back.vec();
    return w;
}

double PureDecomposition::l1() const {
    double s = 0;
    for (auto c : coeffs) s += std::abs(c);
    return s;
}

PureDecomposition extent_pure_1q(const BlochState &b) {
    b.validate();
    if (!b.is_pure(1e-9)) throw std::invalid_argument("extent requires a pure state (Bloch norm 1)");
    PureDecomposition out;
    DenseVec psi = b.pure_vector();
    // stabilizer input: a single term
    const Circuit preps[6] = {{},
                              {Gate{GateKind::X, 0}},
                              {Gate{GateKind::H, 0}},
                              {Gate{GateKind::X, 0}, Gate{GateKind::H, 0}},
                              {Gate{GateKind::H, 0}, Gate{GateKind::S, 0}},
                              {Gate{GateKind::H, 0}, Gate{GateKind::S_DAG, 0}}};
    if (is_stabilizer_mixture_1q(b, 1e-9)) {
        for (int j = 0; j < 6; j++) {
            StabState phi = StabState::zeros(1).applied(preps[j]);
            cd ov = expand(phi).dot(psi);
            if (std::abs(std::abs(ov) - 1.0) < 1e-6) {
                out.coeffs = {ov};
                out.terms = {phi};
                out.xi = 1.0;
                out.witness_value = 1.0;
                return out;
            }
        }
        throw std::logic_error("pure stabilizer state not recognised");
    }
    Witness1Q w = lambda_plus_1q(b);
    const Circuit &C = w.canonical.gates;
    DenseVec psit = apply_circuit_dense(psi, C, 1);
    // canonical-frame candidates |0>, |+>, |+i>
    const Circuit cand[3] = {{}, {Gate{GateKind::H, 0}}, {Gate{GateKind::H, 0}, Gate{GateKind::S, 0}}};
    auto n = omega_direction(w.q);
    BlochState nb{n[0], n[1], n[2]};
    DenseVec omega = nb.pure_vector() * std::sqrt(2.0 / (1.0 + w.q / kSqrt2));
    std::vector<int> active;
    std::vector<DenseVec> vecs;
    std::vector<cd> u;
    for (int j = 0; j < 3; j++) {
        DenseVec phi = expand(StabState::zeros(1).applied(cand[j]));
        cd ov = omega.dot(phi);  // <omega|phi>
        if (std::abs(ov) > 1.0 - 1e-6) {
            active.push_back(j);
            vecs.push_back(phi);
            u.push_back(ov);
        }
    }
    if (active.size() < 2) throw std::logic_error("unexpected active witness set");
    std::vector<cd> coeffs;
    // |0> and |+> are always active; try the two-term expansion first.
    Eigen::Matrix2cd M2;
    M2.col(0) = vecs[0];
    M2.col(1) = vecs[1];
    Eigen::Vector2cd c2 = M2.partialPivLu().solve(psit);
    double l1_two = std::abs(c2(0)) + std::abs(c2(1));
    if (active.size() == 2 || std::abs(l1_two * l1_two - w.value) < 1e-10) {
        active.resize(2);
        coeffs = {c2(0), c2(1)};
    } else {
        // psi' = e^{-i arg<omega|psi>} psi = sum_j t_j conj(u_j) phi_j with t_j >= 0 real
        cd ow = omega.dot(psit);
        cd ph = ow / std::abs(ow);
        DenseVec target = psit / ph;
        Eigen::Matrix<double, 4, 3> M;
        Eigen::Vector4d rhs;
        for (int j = 0; j < 3; j++) {
            DenseVec col = vecs[j] * std::conj(u[j]);
            M(0, j) = col(0).real();
            M(1, j) = col(0).imag();
            M(2, j) = col(1).real();
            M(3, j) = col(1).imag();
        }
        rhs << target(0).real(), target(0).imag(), target(1).real(), target(1).imag();
        Eigen::Vector3d t = M.colPivHouseholderQr().solve(rhs);
        double resid = (M * t - rhs).norm();
        if (resid > 1e-7) throw std::logic_error("extent decomposition residual too large");
        for (int j = 0; j < 3; j++) coeffs.push_back(std::max(t(j), 0.0) * std::conj(u[j]) * ph);
    }
    Circuit inv = inverse_circuit(C);
    for (size_t j = 0; j < active.size(); j++) {
        if (std::abs(coeffs[j]) < 1e-14) continue;
        out.coeffs.push_back(coeffs[j]);
        out.terms.push_back(StabState::zeros(1).applied(cand[active[j]]).applied(inv));
    }
    double l1 = out.l1();
    out.xi = l1 * l1;
    out.witness_value = w.value;
    if (std::abs(out.xi - w.value) > 1e-8) throw std::logic_error("extent primal/dual mismatch");
    return out;
}

SpecialStates special_states(double f) {
    if (!(f >= 1.0 / kSqrt3 - 1e-12 && f <= 1.0 + 1e-12)) throw std::invalid_argument("slice parameter f out of [1/sqrt3, 1]");
    f = std::clamp(f, 1.0 / kSqrt3, 1.0);
    SpecialStates s;
    s.a = std::max(0.0, (2 * kSqrt3 * f - std::sqrt(6.0) * std::sqrt(std::max(0.0, 1 - f * f))) / 6.0);
    double c = std::sqrt(std::max(0.0, 1 - 2 * s.a * s.a));
    s.X = {c, s.a, s.a};
    s.Y = {s.a, c, s.a};
    s.Z = {s.a, s.a, c};
    return s;
}

EquimagicalDecomp equimagical_decompose(const BlochState &rho) {
    rho.validate();
    if (!in_PY(rho, 1e-12)) throw std::invalid_argument("equimagical decomposition expects a state in P_Y");
    if (is_stabilizer_mixture_1q(rho)) throw std::invalid_argument("stabilizer input has extent 1; nothing to decompose");
    EquimagicalDecomp out;
    double lam = lambda_plus_1q(rho).value;
    out.common_extent = lam;
    if (rho.is_pure(1e-12)) {
        out.parts = {{1.0, rho}};
        return out;
    }
    double f = rho.f();
    if (1.0 - f > 1e-12) {
        SpecialStates sp = special_states(f);
        Eigen::Matrix3d M;
        M << sp.X.bx, sp.Y.bx, sp.Z.bx, sp.X.by, sp.Y.by, sp.Z.by, sp.X.bz, sp.Y.bz, sp.Z.bz;
        Eigen::Vector3d w = M.colPivHouseholderQr().solve(Eigen::Vector3d(rho.bx, rho.by, rho.bz));
        if (w.minCoeff() >= -1e-12) {
            out.from_special = true;
            double tot = 0;
            for (int i = 0; i < 3; i++) tot += std::max(w(i), 0.0);
            const BlochState *ps[3] = {&sp.X, &sp.Y, &sp.Z};
            for (int i = 0; i < 3; i++) {
                double wi = std::max(w(i), 0.0) / tot;
                if (wi > 1e-15) out.parts.push_back({wi, *ps[i]});
            }
            return out;
        }
    }
    double rA = rho.rA(), rB = rho.rB();
    double s = std::sqrt(std::max(0.0, 1 - rA * rA - f * f));
    if (s < 1e-12) throw std::logic_error("degenerate equimagical slice");
    const double eA[3] = {1 / std::sqrt(6.0), -2 / std::sqrt(6.0), 1 / std::sqrt(6.0)};
    const double eB[3] = {1 / kSqrt2, 0, -1 / kSqrt2};
    const double eF[3] = {1 / kSqrt3, 1 / kSqrt3, 1 / kSqrt3};
    for (int sgn : {+1, -1}) {
        double v[3];
        for (int i = 0; i < 3; i++) v[i] = rA * eA[i] + sgn * s * eB[i] + f * eF[i];
        double p = 0.5 * (1 + sgn * rB / s);
        if (p > 1e-15) out.parts.push_back({p, BlochState{v[0], v[1], v[2]}});
    }
    return out;
}

EquimagicalDecomp equimagical_decompose_any(const BlochState &rho) {
    rho.validate();
    EquimagicalDecomp out;
    if (is_stabilizer_mixture_1q(rho, 1e-12)) {
        out.common_extent = 1.0;
        double l1 = rho.l1();
        const double v[3] = {rho.bx, rho.by, rho.bz};
        for (int i = 0; i < 3; i++) {
            if (std::abs(v[i]) < 1e-15) continue;
            BlochState s{0, 0, 0};
            double sg = v[i] > 0 ? 1.0 : -1.0;
            if (i == 0) s.bx = sg;
            if (i == 1) s.by = sg;
            if (i == 2) s.bz = sg;
            out.parts.push_back({std::abs(v[i]), s});
        }
        double rest = std::max(0.0, 1.0 - l1);
        if (rest > 1e-15) {
            out.parts.push_back({rest / 2, BlochState{0, 0, 1}});
            out.parts.push_back({rest / 2, BlochState{0, 0, -1}});
        }
        double tot = 0;
        for (auto &p : out.parts) tot += p.first;
        for (auto &p : out.parts) p.first /= tot;
        return out;
    }
    Canonical1Q can = canonicalize_PY(rho);
    out = equimagical_decompose(can.state);
    for (auto &p : out.parts) p.second = can.clifford.apply_inverse(p.second);
    return out;
}

double product_monotone(const std::vector<BlochState> &states) {
    double v = 1.0;
    for (const auto &s : states) v *= lambda_plus_1q(s).value;
    return v;
}

double stab_norm_1q(const BlochState &b) {
    b.validate();
    return 0.5 * (1.0 + b.l1());
}

double robustness_1q(const BlochState &b) {
    b.validate();
    double s = b.l1();
    return s > 1.0 ? s : 1.0;
}

RobustnessPair1Q generalized_robustness_pair_1q(const BlochState &b) {
    b.validate();
    RobustnessPair1Q out;
    Witness1Q w = lambda_plus_1q(b);
    if (w.trivial) {
        out.lambda = 1.0;
        out.sigma = b;
        return out;
    }
    // rho = lambda sigma - (lambda-1) rho_- with rho_- orthogonal to omega
    double lam = w.value;
    const auto &n = w.direction;
    BlochState s{(b.bx - (lam - 1) * n[0]) / lam, (b.by - (lam - 1) * n[1]) / lam, (b.bz - (lam - 1) * n[2]) / lam};
    double l1 = s.l1();
    if (l1 > 1.0) {
        if (l1 > 1.0 + 1e-7) throw std::logic_error("robustness pair left the stabilizer octahedron");
        s = {s.bx / l1, s.by / l1, s.bz / l1};
    }
    out.lambda = lam;
    out.sigma = s;
    return out;
}

uint64_t stabilizer_state_count(int n) {
    uint64_t c = uint64_t{1} << n;
    for (int k = 1; k <= n; k++) c *= (uint64_t{1} << k) + 1;
    return c;
}

std::vector<StabState> enumerate_stabilizer_states(int n) {
    if (n < 1 || n > 4) throw std::out_of_range("stabilizer enumeration supports 1..4 qubits");
    std::vector<Gate> gens;
    for (int q = 0; q < n; q++) {
        gens.push_back({GateKind::H, q});
        gens.push_back({GateKind::S, q});
    }
    for (int a = 0; a < n; a++)
        for (int b = 0; b < n; b++)
            if (a != b) gens.push_back({GateKind::CX, a, b});
    auto key = [](const StabState &s) {
        DenseVec v = expand(s);
        Eigen::Index first = 0;
        while (std::abs(v(first)) < 1e-9) first++;
        cd ph = std::conj(v(first)) / std::abs(v(first));
        std::string k;
        for (Eigen::Index i = 0; i < v.size(); i++) {
            cd z = v(i) * ph;
            k += std::to_string(std::lround(z.real() * 1e6)) + "," + std::to_string(std::lround(z.imag() * 1e6)) + ";";
        }
        return k;
    };
    std::vector<StabState> out;
    std::unordered_set<std::string> seen;
    std::deque<StabState> queue;
    StabState z = StabState::zeros(n);
    seen.insert(key(z));
    queue.push_back(z);
    while (!queue.empty()) {
        StabState s = queue.front();
        queue.pop_front();
        out.push_back(s);
        for (const auto &g : gens) {
            StabState t = s.applied(g);
            std::string k = key(t);
            if (seen.insert(k).second) queue.push_back(t);
        }
    }
    if (out.size() != stabilizer_state_count(n)) throw std::logic_error("stabilizer enumeration count mismatch");
    return out;
}

RobustnessLPResult robustness_lp(const DenseOp &rho) {
    Eigen::Index dim = rho.rows();
    int n = 0;
    while ((Eigen::Index{1} << n) < dim) n++;
    if ((Eigen::Index{1} << n) != dim || rho.cols() != dim) throw std::invalid_argument("density matrix must be 2^n x 2^n");
    if (n < 1 || n > 3) throw std::out_of_range("robustness LP supports 1..3 qubits");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-9) throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(rho.trace() - cd(1, 0)) > 1e-9) throw std::invalid_argument("density matrix must have unit trace");

    RobustnessLPResult res;
    res.states = enumerate_stabilizer_states(n);
    const int S = (int)res.states.size();
    const int P = 1 << (2 * n);
    std::vector<DenseOp> paulis;
    for (int idx = 0; idx < P; idx++) {
        PauliOp p{n, 0, 0, 0};
        for (int q = 0; q < n; q++) {
            int d = (idx >> (2 * q)) & 3;  // 0=I 1=X 2=Y 3=Z
            if (d == 1 || d == 2) p.x |= uint64_t{1} << q;
            if (d == 2 || d == 3) p.z |= uint64_t{1} << q;
        }
        paulis.push_back(pauli_matrix(p));
    }
    Eigen::MatrixXd Acoef(P, S);
    for (int j = 0; j < S; j++) {
        DenseVec v = expand(res.states[j]);
        for (int k = 0; k < P; k++) Acoef(k, j) = v.dot(paulis[k] * v).real();
    }
    Eigen::VectorXd r(P);
    for (int k = 0; k < P; k++) r(k) = (paulis[k] * rho).trace().real();

    Eigen::MatrixXd A(P, 2 * S);
    A.leftCols(S) = Acoef;
    A.rightCols(S) = -Acoef;
    Eigen::VectorXd c = Eigen::VectorXd::Ones(2 * S);
    LPResult lp = solve_standard_lp(A, r, c);
    res.iterations = lp.iterations;
    if (lp.status == LPStatus::Infeasible) throw std::invalid_argument("robustness LP infeasible: input is not a quantum state");
    if (lp.status != LPStatus::Optimal) throw std::runtime_error("robustness LP did not converge: " + lp_status_name(lp.status));
    res.value = lp.objective;
    res.weights.resize(S);
    for (int j = 0; j < S; j++) res.weights[j] = lp.x(j) - lp.x(S + j);
    res.pauli_dual.assign(lp.y.data(), lp.y.data() + lp.y.size());
    Eigen::VectorXd wj = Acoef.transpose() * lp.y;
    res.witness_max_abs = wj.cwiseAbs().maxCoeff();
    double scale = std::max(1.0, res.witness_max_abs);
    res.dual_value = r.dot(lp.y) / scale;
    res.gap = res.value - res.dual_value;
    return res;
}

LadderReport monotone_ladder_check(const BlochState &b) {
    LadderReport rep;
    rep.single_qubit = true;
    rep.lambda_plus = rep.lambda = rep.xi = lambda_plus_1q(b).value;
    rep.robustness = robustness_1q(b);
    rep.stab_norm = stab_norm_1q(b);
    rep.slack_general = rep.robustness - (2 * rep.lambda_plus - 1);
    rep.slack_1q = rep.robustness - ((1 + kSqrt2) * rep.lambda_plus - kSqrt2);
    rep.ok = rep.slack_general >= -1e-9 && rep.slack_1q >= -1e-9 && rep.lambda_plus <= rep.lambda + 1e-12 &&
             rep.lambda <= rep.xi + 1e-12;
    return rep;
}

LadderReport monotone_ladder_check(const std::vector<BlochState> &product, bool use_lp) {
    if (product.size() == 1) return monotone_ladder_check(product[0]);
    LadderReport rep;
    rep.single_qubit = false;
    rep.lambda_plus = rep.lambda = rep.xi = product_monotone(product);
    double D = 1, R = 1;
    for (const auto &b : product) {
        D *= stab_norm_1q(b);
        R *= robustness_1q(b);
    }
    rep.stab_norm = D;
    rep.robustness = R;  // submultiplicative upper bound unless the LP runs
    if (use_lp && product.size() <= 3) {
        std::vector<DenseOp> f;
        for (const auto &b : product) f.push_back(b.density());
        rep.robustness = robustness_lp(product_density(f)).value;
    }
    rep.slack_general = rep.robustness - (2 * rep.lambda_plus - 1);
    rep.slack_1q = 0;
    rep.ok = rep.slack_general >= -1e-9;
    return rep;
}

}  // namespace magicsim
