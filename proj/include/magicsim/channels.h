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

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "magicsim/pauli.h"
#include "magicsim/stab_state.h"

namespace magicsim {

struct BlochState;

// |L><R| ; the weight lives in the enclosing decomposition.
struct Dyad {
    StabState L;
    StabState R;
};

struct DyadTerm {
    std::complex<double> alpha;
    Dyad dyad;
};

struct DyadicDecomposition {
    int n = 0;
    std::vector<DyadTerm> terms;

    double l1() const;
    // Structural checks; for n <= kMaxDenseQubits also Hermiticity and unit trace.
    void validate() const;
};

// 2^{h/2} U Pi with Pi a rank 2^{n-h} stabilizer projector.
struct StabKraus {
    int h = 0;
    StabProjector proj;
    Circuit circuit;
};

struct SimulableChannel {
    int n = 0;
    std::string name;
    std::vector<std::pair<double, Circuit>> unitary_part;
    std::vector<std::pair<double, StabKraus>> kraus_part;

    double P_U() const;
    double P_K() const { return 1.0 - P_U(); }
    size_t num_terms() const { return unitary_part.size() + kraus_part.size(); }
    // Structural checks plus, for n <= kMaxDenseQubits, the completeness
    // relation sum p_r I + sum q_s 2^h Pi_s = I to 1e-8.
    void validate(size_t max_terms = 64) const;
};

SimulableChannel identity_channel(int n);
SimulableChannel clifford_channel(int n, const Circuit &c);
SimulableChannel clifford_mix_channel(int n, const std::vector<std::pair<double, Circuit>> &mix);
// rho -> (1-lambda) rho + lambda I/2 on one qubit, as a Pauli mixture.
SimulableChannel depolarizing_channel(int n, int qubit, double lambda);
// Injects T on `data` consuming `ancilla`, which must hold |H> (or |T> when
// ancilla_is_t).  The ancilla is returned to |0>.
SimulableChannel t_gadget_channel(int n, int data, int ancilla, bool ancilla_is_t = false);
// Measures Hermitian Pauli p, keeps the post-measurement state and applies
// `on_minus` after the -1 outcome.
SimulableChannel pauli_measure_channel(int n, const PauliOp &p, const Circuit &on_minus = {});

// Tensor-product dyadic decomposition built from optimal single-qubit
// decompositions: l1 equals the product of the generalized robustness values.
DyadicDecomposition dyadic_decompose_product(const std::vector<BlochState> &states);
DyadicDecomposition single_dyad(const StabState &L, const StabState &R, std::complex<double> alpha = 1.0);

}  // namespace magicsim
