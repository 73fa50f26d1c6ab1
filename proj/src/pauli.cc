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

#include "magicsim/pauli.h"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace magicsim {

GateKind gate_kind_from_name(std::string_view name) {
    std::string u(name);
    for (auto &c : u) c = (char)std::toupper((unsigned char)c);
    if (u == "S") return GateKind::S;
    if (u == "S_DAG" || u == "SDG" || u == "SDAG") return GateKind::S_DAG;
    if (u == "H") return GateKind::H;
    if (u == "X") return GateKind::X;
    if (u == "Y") return GateKind::Y;
    if (u == "Z") return GateKind::Z;
    if (u == "CX" || u == "CNOT") return GateKind::CX;
    if (u == "CZ") return GateKind::CZ;
    if (u == "SWAP") return GateKind::SWAP;
    throw std::invalid_argument("unknown gate '" + std::string(name) + "'");
}

std::string gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::S: return "S";
        case GateKind::S_DAG: return "S_DAG";
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::CX: return "CX";
        case GateKind::CZ: return "CZ";
        case GateKind::SWAP: return "SWAP";
    }
    return "?";
}

Gate inverse_gate(const Gate &g) {
    Gate r = g;
    if (g.kind == GateKind::S) r.kind = GateKind::S_DAG;
    else if (g.kind == GateKind::S_DAG) r.kind = GateKind::S;
    return r;
}

Circuit inverse_circuit(const Circuit &c) {
    Circuit r;
    r.reserve(c.size());
    for (auto it = c.rbegin(); it != c.rend(); ++it) r.push_back(inverse_gate(*it));
    return r;
}

int circuit_width(const Circuit &c) {
    int w = 0;
    for (const auto &g : c) {
        w = std::max(w, g.q0 + 1);
        if (g.two_qubit()) w = std::max(w, g.q1 + 1);
    }
    return w;
}

void check_circuit(const Circuit &c, int n) {
    for (const auto &g : c) {
        if (g.q0 < 0 || g.q0 >= n) throw std::out_of_range("gate qubit index out of range");
        if (g.two_qubit()) {
            if (g.q1 < 0 || g.q1 >= n) throw std::out_of_range("gate qubit index out of range");
            if (g.q1 == g.q0) throw std::invalid_argument("two-qubit gate on a single qubit");
        }
    }
}

PauliOp PauliOp::parse(std::string_view text) {
    PauliOp p;
    size_t i = 0;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        if (text[0] == '-') p.phase_exp = 2;
        i = 1;
    }
    if (text.size() >= i + 1 && text[i] == 'i') {
        p.phase_exp += 1;
        i++;
    }
    int n = (int)(text.size() - i);
    if (n <= 0 || n > kMaxQubits) throw std::invalid_argument("bad Pauli string '" + std::string(text) + "'");
    p.n = n;
    for (int q = 0; q < n; q++) {
        char c = (char)std::toupper((unsigned char)text[i + q]);
        uint64_t m = uint64_t{1} << q;
        switch (c) {
            case 'I': case '_': break;
            case 'X': p.x |= m; break;
            case 'Y': p.x |= m; p.z |= m; break;
            case 'Z': p.z |= m; break;
            default: throw std::invalid_argument("bad Pauli letter in '" + std::string(text) + "'");
        }
    }
    p.phase_exp &= 3;
    return p;
}

PauliOp PauliOp::single(int n, int qubit, char letter) {
    if (qubit < 0 || qubit >= n) throw std::out_of_range("Pauli qubit out of range");
    std::string s(n, 'I');
    s[qubit] = letter;
    return parse(s);
}

PauliOp PauliOp::operator*(const PauliOp &o) const {
    if (n != o.n) throw std::invalid_argument("Pauli size mismatch");
    // convert to i^k X^x Z^z form, multiply, convert back
    int k1 = phase_exp + std::popcount(x & z);
    int k2 = o.phase_exp + std::popcount(o.x & o.z);
    int k = k1 + k2 + 2 * std::popcount(z & o.x);
    PauliOp r{n, x ^ o.x, z ^ o.z, 0};
    r.phase_exp = ((k - std::popcount(r.x & r.z)) % 4 + 4) % 4;
    return r;
}

std::string PauliOp::str() const {
    std::string s;
    switch (phase_exp & 3) {
        case 0: s = "+"; break;
        case 1: s = "+i"; break;
        case 2: s = "-"; break;
        case 3: s = "-i"; break;
    }
    for (int q = 0; q < n; q++) {
        bool bx = (x >> q) & 1, bz = (z >> q) & 1;
        s += bx ? (bz ? 'Y' : 'X') : (bz ? 'Z' : 'I');
    }
    return s;
}

StabProjector StabProjector::basis(int n, int qubit, int bit) {
    StabProjector p;
    p.n = n;
    p.generators.push_back({PauliOp::single(n, qubit, 'Z'), bit ? -1 : +1});
    return p;
}

StabProjector StabProjector::prefix(int n, int w, uint64_t bits) {
    StabProjector p;
    p.n = n;
    for (int q = 0; q < w; q++) p.generators.push_back({PauliOp::single(n, q, 'Z'), ((bits >> q) & 1) ? -1 : +1});
    return p;
}

void StabProjector::validate() const {
    for (size_t i = 0; i < generators.size(); i++) {
        const auto &[p, s] = generators[i];
        if (p.n != n) throw std::invalid_argument("projector generator has wrong size");
        if (!p.hermitian()) throw std::invalid_argument("projector generator is not Hermitian");
        if (s != 1 && s != -1) throw std::invalid_argument("projector sign must be +1 or -1");
        for (size_t j = 0; j < i; j++) {
            if (!p.commutes(generators[j].first)) throw std::invalid_argument("projector generators do not commute");
        }
    }
}

int StabProjector::rank() const {
    // Gaussian elimination on the symplectic vectors, tracking the signed
    // operator so a dependent generator with the wrong sign is detected.
    std::vector<PauliOp> rows;
    for (const auto &[p, s] : generators) {
        PauliOp q = p;
        if (s < 0) q.phase_exp = (q.phase_exp + 2) & 3;
        rows.push_back(q);
    }
    int r = 0;
    int m = (int)rows.size();
    for (int col = 0; col < 2 * n && r < m; col++) {
        auto bit = [&](const PauliOp &p) {
            return col < n ? (p.x >> col) & 1 : (p.z >> (col - n)) & 1;
        };
        int piv = -1;
        for (int i = r; i < m; i++) {
            if (bit(rows[i])) {
                piv = i;
                break;
            }
        }
        if (piv < 0) continue;
        std::swap(rows[r], rows[piv]);
        for (int i = 0; i < m; i++) {
            if (i != r && bit(rows[i])) rows[i] = rows[i] * rows[r];
        }
        r++;
    }
    for (int i = r; i < m; i++) {
        if (rows[i].phase_exp != 0) return -1;
    }
    return r;
}

}  // namespace magicsim
