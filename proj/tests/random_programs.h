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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "magicsim/dense.h"
#include "magicsim/stab_state.h"

namespace magicsim::testing {

inline Gate random_gate(std::mt19937_64 &rng, int n) {
    static const GateKind one[] = {GateKind::S, GateKind::S_DAG, GateKind::H, GateKind::X, GateKind::Y, GateKind::Z};
    static const GateKind two[] = {GateKind::CX, GateKind::CZ, GateKind::SWAP};
    std::uniform_int_distribution<int> q(0, n - 1);
    if (n > 1 && rng() % 3 == 0) {
        int a = q(rng), b = q(rng);
        while (b == a) b = q(rng);
        return Gate{two[rng() % 3], a, b};
    }
    return Gate{one[rng() % 6], q(rng)};
}

inline Circuit random_circuit(std::mt19937_64 &rng, int n, int len) {
    Circuit c;
    for (int i = 0; i < len; i++) c.push_back(random_gate(rng, n));
    return c;
}

inline PauliOp random_pauli(std::mt19937_64 &rng, int n, bool allow_identity = false) {
    PauliOp p{n, 0, 0, 0};
    uint64_t mask = (n == 64) ? ~uint64_t{0} : ((uint64_t{1} << n) - 1);
    do {
        p.x = rng() & mask;
        p.z = rng() & mask;
    } while (!allow_identity && (p.x | p.z) == 0);
    p.phase_exp = 2 * (int)(rng() & 1);
    return p;
}

inline StabState random_stab_state(std::mt19937_64 &rng, int n, int len = 40) {
    return StabState::zeros(n).applied(random_circuit(rng, n, len));
}

struct ProgramReport {
    double max_state_err = 0;
    double max_norm_err = 0;
    double max_inner_err = 0;
    int projections = 0;
    int gates = 0;
};

// Runs a random gate/projection program on the tableau simulator and on
// dense vectors side by side, tracking worst-case deviations.
inline ProgramReport run_random_program(std::mt19937_64 &rng, int n, int max_gates, int max_proj) {
    ProgramReport rep;
    StabState s = StabState::basis(n, rng() & ((uint64_t{1} << n) - 1));
    DenseVec v = expand(s);
    std::vector<StabState> snaps{s};
    std::vector<DenseVec> dsnaps{v};
    int gates = 1 + (int)(rng() % max_gates);
    int projs = (int)(rng() % (max_proj + 1));
    int total = gates + projs;
    int g_left = gates, p_left = projs;
    for (int step = 0; step < total; step++) {
        bool do_proj = p_left > 0 && (g_left == 0 || (int)(rng() % total) < projs);
        if (do_proj) {
            p_left--;
            PauliOp p = random_pauli(rng, n);
            int sign = (rng() & 1) ? 1 : -1;
            double before = s.norm();
            double ratio = s.project_inplace(p, sign);
            DenseOp P = pauli_matrix(p);
            v = 0.5 * (v + double(sign) * (P * v));
            rep.projections++;
            if (before > 0) rep.max_norm_err = std::max(rep.max_norm_err, std::abs(ratio * before - v.norm()));
            if (s.is_null()) {
                rep.max_state_err = std::max(rep.max_state_err, v.norm());
                s = StabState::basis(n, rng() & ((uint64_t{1} << n) - 1));
                v = expand(s);
            }
        } else {
            g_left--;
            Gate g = random_gate(rng, n);
            s.apply_inplace(g);
            v = gate_matrix(g, n) * v;
            rep.gates++;
        }
        rep.max_state_err = std::max(rep.max_state_err, (expand(s) - v).cwiseAbs().maxCoeff());
        rep.max_norm_err = std::max(rep.max_norm_err, std::abs(s.norm() - v.norm()));
        const size_t j = rng() % snaps.size();
        std::complex<double> ip = inner_product(snaps[j], s);
        rep.max_inner_err = std::max(rep.max_inner_err, std::abs(ip - dsnaps[j].dot(v)));
        if (rng() % 4 == 0) {
            snaps.push_back(s);
            dsnaps.push_back(v);
        }
    }
    return rep;
}

}  // namespace magicsim::testing
