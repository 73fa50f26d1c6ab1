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

#include "magicsim/stab_state.h"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace magicsim {

namespace {

inline int parity(uint64_t v) { return std::popcount(v) & 1; }

inline TableauRow row_mul(const TableauRow &a, const TableauRow &b) {
    TableauRow r;
    r.x = a.x ^ b.x;
    r.z = a.z ^ b.z;
    r.k = (uint8_t)((a.k + b.k + 2 * std::popcount(a.z & b.x)) & 3);
    return r;
}

inline bool anticommutes(const TableauRow &a, const TableauRow &b) {
    return parity((a.x & b.z) ^ (a.z & b.x));
}

// Conjugate every generator by the gate (tableau part only).
void conj_rows(std::vector<TableauRow> &rows, const Gate &g) {
    const uint64_t m0 = uint64_t{1} << g.q0;
    const uint64_t m1 = g.two_qubit() ? uint64_t{1} << g.q1 : 0;
    for (auto &r : rows) {
        int a = (r.x & m0) != 0;
        int b = (r.z & m0) != 0;
        switch (g.kind) {
            case GateKind::H:
                if (a != b) {
                    r.x ^= m0;
                    r.z ^= m0;
                }
                r.k = (uint8_t)((r.k + 2 * (a & b)) & 3);
                break;
            case GateKind::S:
                r.k = (uint8_t)((r.k + a) & 3);
                if (a) r.z ^= m0;
                break;
            case GateKind::S_DAG:
                r.k = (uint8_t)((r.k + 3 * a) & 3);
                if (a) r.z ^= m0;
                break;
            case GateKind::X:
                r.k = (uint8_t)((r.k + 2 * b) & 3);
                break;
            case GateKind::Z:
                r.k = (uint8_t)((r.k + 2 * a) & 3);
                break;
            case GateKind::Y:
                r.k = (uint8_t)((r.k + 2 * (a ^ b)) & 3);
                break;
            case GateKind::CX: {
                int bt = (r.z & m1) != 0;
                if (a) r.x ^= m1;
                if (bt) r.z ^= m0;
                break;
            }
            case GateKind::CZ: {
                int at = (r.x & m1) != 0;
                r.k = (uint8_t)((r.k + 2 * (a & at)) & 3);
                if (at) r.z ^= m0;
                if (a) r.z ^= m1;
                break;
            }
            case GateKind::SWAP: {
                int at = (r.x & m1) != 0;
                int bt = (r.z & m1) != 0;
                if (a != at) r.x ^= m0 | m1;
                if (b != bt) r.z ^= m0 | m1;
                break;
            }
        }
    }
}

}  // namespace

TableauRow pauli_to_row(const PauliOp &p) {
    TableauRow r;
    r.x = p.x;
    r.z = p.z;
    r.k = (uint8_t)((p.phase_exp + std::popcount(p.x & p.z)) & 3);
    return r;
}

EquatorialMatrix EquatorialMatrix::zeros(int n) {
    EquatorialMatrix A;
    A.n = n;
    A.diag.assign(n, 0);
    A.adj.assign(n, 0);
    return A;
}

uint64_t EquatorialMatrix::count(int n) {
    int pairs = n * (n - 1) / 2;
    if (2 * n + pairs >= 64) throw std::out_of_range("too many equatorial states to enumerate");
    return uint64_t{1} << (2 * n + pairs);
}

EquatorialMatrix EquatorialMatrix::from_index(int n, uint64_t index) {
    EquatorialMatrix A = zeros(n);
    for (int j = 0; j < n; j++) {
        A.diag[j] = (uint8_t)(index & 3);
        index >>= 2;
    }
    for (int i = 0; i < n; i++) {
        for (int j = i + 1; j < n; j++) {
            if (index & 1) {
                A.adj[i] |= uint64_t{1} << j;
                A.adj[j] |= uint64_t{1} << i;
            }
            index >>= 1;
        }
    }
    return A;
}

int EquatorialMatrix::quadratic_form(uint64_t xbits) const {
    int v = 0;
    for (int i = 0; i < n; i++) {
        if (!((xbits >> i) & 1)) continue;
        v += diag[i];
        // each unordered pair counted once with weight 2
        v += 2 * std::popcount(adj[i] & xbits & ~((uint64_t{2} << i) - 1));
    }
    return v & 3;
}

StabState StabState::zeros(int n) { return basis(n, 0); }

StabState StabState::basis(int n, uint64_t bits) {
    if (n < 1 || n > kMaxQubits) throw std::out_of_range("qubit count out of range");
    StabState s;
    s.n_ = n;
    s.rows_.resize(n);
    for (int j = 0; j < n; j++) {
        s.rows_[j].z = uint64_t{1} << j;
        s.rows_[j].k = (uint8_t)(((bits >> j) & 1) ? 2 : 0);
    }
    s.xref_ = bits;
    s.amp_ = Scalar::one();
    return s;
}

StabState StabState::null_state(int n) {
    StabState s = zeros(n);
    s.null_ = true;
    s.amp_ = Scalar{};
    return s;
}

StabState StabState::tensor(const StabState &lo, const StabState &hi) {
    int n = lo.n_ + hi.n_;
    if (n > kMaxQubits) throw std::out_of_range("qubit count out of range");
    if (lo.null_ || hi.null_) return null_state(n);
    StabState s;
    s.n_ = n;
    s.rows_ = lo.rows_;
    for (auto r : hi.rows_) {
        r.x <<= lo.n_;
        r.z <<= lo.n_;
        s.rows_.push_back(r);
    }
    s.xref_ = lo.xref_ | (hi.xref_ << lo.n_);
    s.amp_ = lo.amp_ * hi.amp_;
    return s;
}

StabState StabState::equatorial(const EquatorialMatrix &A) {
    int n = A.n;
    if (n < 1 || n > kMaxQubits) throw std::out_of_range("qubit count out of range");
    StabState s;
    s.n_ = n;
    s.rows_.resize(n);
    for (int j = 0; j < n; j++) s.rows_[j].x = uint64_t{1} << j;
    for (int j = 0; j < n; j++) {
        for (int t = 0; t < (A.diag[j] & 3); t++) conj_rows(s.rows_, Gate{GateKind::S, j});
    }
    for (int i = 0; i < n; i++) {
        for (int j = i + 1; j < n; j++) {
            if ((A.adj[i] >> j) & 1) conj_rows(s.rows_, Gate{GateKind::CZ, i, j});
        }
    }
    // every gate above is diagonal with <0..0| phase 1
    s.xref_ = 0;
    s.amp_ = Scalar::make(-n, 0);
    return s;
}

StabState::Echelon StabState::echelon() const {
    Echelon e;
    e.rows = rows_;
    int r = 0;
    for (int col = 0; col < n_ && r < n_; col++) {
        uint64_t m = uint64_t{1} << col;
        int piv = -1;
        for (int i = r; i < n_; i++) {
            if (e.rows[i].x & m) {
                piv = i;
                break;
            }
        }
        if (piv < 0) continue;
        std::swap(e.rows[r], e.rows[piv]);
        for (int i = 0; i < n_; i++) {
            if (i != r && (e.rows[i].x & m)) e.rows[i] = row_mul(e.rows[i], e.rows[r]);
        }
        e.pivot.push_back(col);
        r++;
    }
    e.r = r;
    return e;
}

uint64_t StabState::find_support(const Echelon &ech) const {
    // Rows without X part are +-Z^b; support strings satisfy b.x = k/2.
    std::vector<std::pair<uint64_t, int>> eqs;
    for (int i = ech.r; i < n_; i++) eqs.push_back({ech.rows[i].z, (ech.rows[i].k >> 1) & 1});
    int m = (int)eqs.size();
    int r = 0;
    std::vector<int> piv;
    for (int col = 0; col < n_ && r < m; col++) {
        uint64_t bit = uint64_t{1} << col;
        int p = -1;
        for (int i = r; i < m; i++) {
            if (eqs[i].first & bit) {
                p = i;
                break;
            }
        }
        if (p < 0) continue;
        std::swap(eqs[r], eqs[p]);
        for (int i = 0; i < m; i++) {
            if (i != r && (eqs[i].first & bit)) {
                eqs[i].first ^= eqs[r].first;
                eqs[i].second ^= eqs[r].second;
            }
        }
        piv.push_back(col);
        r++;
    }
    uint64_t x = 0;
    for (int i = 0; i < r; i++) {
        if (eqs[i].second) x |= uint64_t{1} << piv[i];
    }
    for (int i = r; i < m; i++) {
        if (eqs[i].second) throw std::logic_error("inconsistent stabilizer tableau");
    }
    return x;
}

Scalar StabState::amplitude_with(const Echelon &ech, uint64_t y) const {
    if (null_) return Scalar{};
    uint64_t a = xref_ ^ y;
    TableauRow g;
    for (int i = 0; i < ech.r; i++) {
        if ((a >> ech.pivot[i]) & 1) g = row_mul(g, ech.rows[i]);
    }
    if (g.x != a) return Scalar{};
    // <y| i^k X^a Z^b |psi> = i^k (-1)^{b.x_ref} psi_{x_ref}
    Scalar v = amp_.times_i(g.k);
    if (parity(g.z & xref_)) v = v.times_i(2);
    return v;
}

Scalar StabState::amplitude(uint64_t y) const {
    if (null_) return Scalar{};
    return amplitude_with(echelon(), y);
}

int StabState::support_rank() const { return echelon().r; }

int StabState::log2_norm2() const { return amp_.p + support_rank(); }

double StabState::norm2() const {
    if (null_ || amp_.zero) return 0.0;
    return std::ldexp(1.0, log2_norm2());
}

double StabState::norm() const { return std::sqrt(norm2()); }

void StabState::apply_inplace(const Gate &g) {
    if (g.q0 < 0 || g.q0 >= n_ || (g.two_qubit() && (g.q1 < 0 || g.q1 >= n_ || g.q1 == g.q0))) {
        throw std::out_of_range("gate qubit index out of range");
    }
    if (null_) return;
    const uint64_t m0 = uint64_t{1} << g.q0;
    const uint64_t m1 = g.two_qubit() ? uint64_t{1} << g.q1 : 0;
    if (g.kind == GateKind::H) {
        Echelon old = echelon();
        conj_rows(rows_, g);
        uint64_t xn = find_support(echelon());
        Scalar t[2] = {amplitude_with(old, xn & ~m0), amplitude_with(old, xn | m0)};
        if (xn & m0) t[1] = t[1].times_i(2);
        amp_ = scalar_sum(t, 2).times_sqrt2(-1);
        xref_ = xn;
        return;
    }
    conj_rows(rows_, g);
    bool b0 = xref_ & m0;
    bool b1 = xref_ & m1;
    switch (g.kind) {
        case GateKind::S:
            if (b0) amp_ = amp_.times_i(1);
            break;
        case GateKind::S_DAG:
            if (b0) amp_ = amp_.times_i(3);
            break;
        case GateKind::X:
            xref_ ^= m0;
            break;
        case GateKind::Y:
            amp_ = amp_.times_i(b0 ? 3 : 1);
            xref_ ^= m0;
            break;
        case GateKind::Z:
            if (b0) amp_ = amp_.times_i(2);
            break;
        case GateKind::CX:
            if (b0) xref_ ^= m1;
            break;
        case GateKind::CZ:
            if (b0 && b1) amp_ = amp_.times_i(2);
            break;
        case GateKind::SWAP:
            if (b0 != b1) xref_ ^= m0 | m1;
            break;
        case GateKind::H:
            break;
    }
}

void StabState::apply_inplace(const Circuit &c) {
    for (const auto &g : c) apply_inplace(g);
}

int StabState::pauli_eigenvalue(const PauliOp &p) const {
    if (p.n != n_) throw std::invalid_argument("Pauli size mismatch");
    if (null_) throw std::logic_error("eigenvalue of null state");
    TableauRow row = pauli_to_row(p);
    for (const auto &g : rows_) {
        if (anticommutes(g, row)) return 0;
    }
    Echelon e = echelon();
    Scalar v = amplitude_with(e, xref_ ^ row.x).times_i(row.k);
    if (parity(row.z & (xref_ ^ row.x))) v = v.times_i(2);
    Scalar lam = v / amp_;
    if (lam.p != 0 || (lam.e != 0 && lam.e != 4)) throw std::logic_error("non-Hermitian eigenvalue");
    return lam.e == 0 ? 1 : -1;
}

void StabState::project_row_inplace(const TableauRow &p, int sign, double *ratio) {
    if (null_) {
        *ratio = 0.0;
        return;
    }
    int first = -1;
    for (int i = 0; i < n_; i++) {
        if (anticommutes(rows_[i], p)) {
            first = i;
            break;
        }
    }
    Echelon old = echelon();
    // <x|P|psi> for P = i^k X^a Z^b
    auto p_amp = [&](uint64_t x) {
        uint64_t src = x ^ p.x;
        Scalar v = amplitude_with(old, src).times_i(p.k);
        if (parity(p.z & src)) v = v.times_i(2);
        if (sign < 0) v = v.times_i(2);
        return v;
    };
    if (first < 0) {
        Scalar lam = p_amp(xref_) / amp_;
        if (lam.p != 0 || (lam.e != 0 && lam.e != 4)) throw std::logic_error("non-Hermitian projector");
        if (lam.e == 0) {
            *ratio = 1.0;
        } else {
            null_ = true;
            amp_ = Scalar{};
            *ratio = 0.0;
        }
        return;
    }
    for (int i = first + 1; i < n_; i++) {
        if (anticommutes(rows_[i], p)) rows_[i] = row_mul(rows_[i], rows_[first]);
    }
    TableauRow np = p;
    if (sign < 0) np.k = (uint8_t)((np.k + 2) & 3);
    rows_[first] = np;
    uint64_t xn = find_support(echelon());
    Scalar t[2] = {amplitude_with(old, xn), p_amp(xn)};
    amp_ = scalar_sum(t, 2).times_sqrt2(-2);
    xref_ = xn;
    *ratio = std::sqrt(0.5);
}

double StabState::project_inplace(const PauliOp &p, int sign) {
    if (p.n != n_) throw std::invalid_argument("Pauli size mismatch");
    if (!p.hermitian()) throw std::invalid_argument("projection onto a non-Hermitian Pauli");
    if (sign != 1 && sign != -1) throw std::invalid_argument("projection sign must be +1 or -1");
    double ratio;
    project_row_inplace(pauli_to_row(p), sign, &ratio);
    return ratio;
}

double StabState::project_inplace(const StabProjector &proj) {
    if (proj.n != n_) throw std::invalid_argument("projector size mismatch");
    double ratio = 1.0;
    for (const auto &[p, s] : proj.generators) {
        ratio *= project_inplace(p, s);
        if (null_) return 0.0;
    }
    return ratio;
}

void StabState::normalize_inplace() {
    if (null_) throw std::logic_error("cannot normalize a null state");
    amp_ = Scalar::make(-support_rank(), amp_.e);
}

void StabState::scale_inplace(const Scalar &s) {
    if (null_) return;
    if (s.zero) {
        null_ = true;
        amp_ = Scalar{};
        return;
    }
    amp_ = amp_ * s;
}

StabState StabState::applied(const Gate &g) const {
    StabState r = *this;
    r.apply_inplace(g);
    return r;
}

StabState StabState::applied(const Circuit &c) const {
    StabState r = *this;
    r.apply_inplace(c);
    return r;
}

std::pair<StabState, double> StabState::projected(const PauliOp &p, int sign) const {
    StabState r = *this;
    double ratio = r.project_inplace(p, sign);
    return {std::move(r), ratio};
}

std::pair<StabState, double> StabState::projected(const StabProjector &proj) const {
    StabState r = *this;
    double ratio = r.project_inplace(proj);
    return {std::move(r), ratio};
}

StabState StabState::normalized() const {
    StabState r = *this;
    r.normalize_inplace();
    return r;
}

Scalar inner_product_exact(const StabState &L, const StabState &R) {
    if (L.n_ != R.n_) throw std::invalid_argument("inner product dimension mismatch");
    if (L.null_ || R.null_) return Scalar{};
    // Project R onto L's stabilizer group; what survives is lambda * L with
    // lambda = <L|R> / <L|L>.
    StabState Rp = R;
    double ratio;
    for (const auto &g : L.rows_) {
        Rp.project_row_inplace(g, +1, &ratio);
        if (Rp.null_) return Scalar{};
    }
    Scalar lam = Rp.amplitude(L.xref_) / L.amp_;
    int log_norm2 = L.amp_.p + L.support_rank();
    return lam * Scalar::make(2 * log_norm2, 0);
}

std::complex<double> inner_product(const StabState &L, const StabState &R) {
    return inner_product_exact(L, R).value();
}

std::complex<double> equatorial_overlap(const StabState &psi, const EquatorialMatrix &A) {
    if (A.n != psi.num_qubits()) throw std::invalid_argument("equatorial matrix dimension mismatch");
    return inner_product(StabState::equatorial(A), psi);
}

StabState apply_gate(const StabState &s, const Gate &g) { return s.applied(g); }

std::pair<StabState, double> project_pauli(const StabState &s, const PauliOp &p, int sign) {
    return s.projected(p, sign);
}

}  // namespace magicsim
