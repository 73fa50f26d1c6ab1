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

#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace magicsim {

constexpr int kMaxQubits = 64;

enum class GateKind { S, S_DAG, H, X, Y, Z, CX, CZ, SWAP };

struct Gate {
    GateKind kind;
    int q0;
    int q1 = -1;

    bool two_qubit() const { return kind == GateKind::CX || kind == GateKind::CZ || kind == GateKind::SWAP; }
    bool operator==(const Gate &) const = default;
};

using Circuit = std::vector<Gate>;

GateKind gate_kind_from_name(std::string_view name);
std::string gate_name(GateKind kind);
Gate inverse_gate(const Gate &g);
Circuit inverse_circuit(const Circuit &c);
// Largest qubit index touched plus one.
int circuit_width(const Circuit &c);
void check_circuit(const Circuit &c, int n);

// Pauli operator phase * P_0 (x) P_1 (x) ... with P_j from (x_j, z_j):
// (0,0)=I (1,0)=X (1,1)=Y (0,1)=Z.  phase = i^phase_exp.
struct PauliOp {
    int n = 0;
    uint64_t x = 0;
    uint64_t z = 0;
    int phase_exp = 0;

    static PauliOp identity(int n) { return PauliOp{n, 0, 0, 0}; }
    // "+XZI", "-Y_0 Z_2" style strings are not accepted; only dense letter
    // strings with an optional leading sign are.
    static PauliOp parse(std::string_view text);
    static PauliOp single(int n, int qubit, char letter);

    bool hermitian() const { return (phase_exp & 1) == 0; }
    bool commutes(const PauliOp &o) const {
        return ((std::popcount(x & o.z) + std::popcount(z & o.x)) & 1) == 0;
    }
    int weight() const { return std::popcount(x | z); }
    PauliOp operator*(const PauliOp &o) const;
    bool operator==(const PauliOp &) const = default;
    std::string str() const;
};

// Product of commuting projectors (1 + s_j P_j)/2.
struct StabProjector {
    int n = 0;
    std::vector<std::pair<PauliOp, int>> generators;

    static StabProjector basis(int n, int qubit, int bit);
    // Projector onto the first w qubits having value bits (qubit j <-> bit j).
    static StabProjector prefix(int n, int w, uint64_t bits);
    // Throws if generators fail to commute or are not Hermitian.
    void validate() const;
    // Number of independent generators; -1 if the generators are contradictory
    // (the projector is zero).
    int rank() const;
};

}  // namespace magicsim
