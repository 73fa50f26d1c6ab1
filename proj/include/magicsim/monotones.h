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

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "magicsim/dense.h"
#include "magicsim/pauli.h"
#include "magicsim/stab_state.h"

namespace magicsim {

struct BlochState {
    double bx = 0, by = 0, bz = 0;

    static BlochState named(const std::string &name);
    // alpha * base + (1 - alpha) * I/2
    static BlochState noisy(const BlochState &base, double alpha);

    double norm() const;
    double l1() const;
    bool is_pure(double tol = 1e-9) const;
    void validate() const;
    // Coordinates in the rotated basis sigma_A = (X+Z-2Y)/sqrt6,
    // sigma_B = (X-Z)/sqrt2, sigma_F = (X+Y+Z)/sqrt3.
    double rA() const;
    double rB() const;
    double rF() const;
    double f() const { return rF(); }
    DenseOp density() const;
    // Pure states only: |psi> = (cos(t/2), e^{i phi} sin(t/2)).
    DenseVec pure_vector() const;
    std::array<double, 3> vec() const { return {bx, by, bz}; }
};

// Single-qubit Clifford acting on Bloch vectors as a signed permutation:
// new[i] = sign[i] * old[perm[i]].
struct Clifford1Q {
    Circuit gates;  // on qubit 0
    std::array<int, 3> perm{0, 1, 2};
    std::array<int, 3> sign{1, 1, 1};

    BlochState apply(const BlochState &b) const;
    BlochState apply_inverse(const BlochState &b) const;
};

// All 24 single-qubit Cliffords (mod phase), shortest words in H, S first.
const std::vector<Clifford1Q> &single_qubit_cliffords();

bool in_PY(const BlochState &b, double tol = 0.0);
bool is_stabilizer_mixture_1q(const BlochState &b, double tol = 1e-12);

struct Canonical1Q {
    Clifford1Q clifford;
    BlochState state;
};
Canonical1Q canonicalize_PY(const BlochState &b);

struct Witness1Q {
    double q = 1.0;
    double value = 1.0;
    Clifford1Q canonical;
    // Unit Bloch direction of |omega> in the original frame.
    std::array<double, 3> direction{0, 0, 1};
    bool trivial = false;  // stabilizer-polytope member, value fixed to 1
};

double witness_value(double q, const BlochState &canonical_state);
// |<omega(q)|phi>| for the six stabilizer states, in canonical frame
// order |0>,|1>,|+>,|->,|+i>,|-i>.
std::array<double, 6> witness_overlaps(double q);
Witness1Q lambda_plus_1q(const BlochState &b);

struct PureDecomposition {
    double xi = 1.0;
    double witness_value = 1.0;
    std::vector<std::complex<double>> coeffs;
    std::vector<StabState> terms;  // one-qubit states
    double l1() const;
};
PureDecomposition extent_pure_1q(const BlochState &b);

struct SpecialStates {
    double a = 0;
    BlochState X, Y, Z;
};
SpecialStates special_states(double f);

struct EquimagicalDecomp {
    std::vector<std::pair<double, BlochState>> parts;
    double common_extent = 1.0;
    bool from_special = false;
};
// rho must be in P_Y and non-stabilizer.
EquimagicalDecomp equimagical_decompose(const BlochState &rho);
// Any single-qubit state; stabilizer mixtures split into stabilizer states.
EquimagicalDecomp equimagical_decompose_any(const BlochState &rho);

double product_monotone(const std::vector<BlochState> &states);
double stab_norm_1q(const BlochState &b);
double robustness_1q(const BlochState &b);

// lambda and sigma with rho <= lambda sigma, sigma a stabilizer mixture.
struct RobustnessPair1Q {
    double lambda = 1.0;
    BlochState sigma;
};
RobustnessPair1Q generalized_robustness_pair_1q(const BlochState &b);

// Pure stabilizer states of n qubits (n <= 3 practical): 6, 60, 1080.
std::vector<StabState> enumerate_stabilizer_states(int n);
uint64_t stabilizer_state_count(int n);

struct RobustnessLPResult {
    double value = 0;
    double dual_value = 0;
    double gap = 0;
    std::vector<double> weights;  // signed, aligned with states
    std::vector<StabState> states;
    std::vector<double> pauli_dual;  // witness coefficients y_P
    double witness_max_abs = 0;      // max_j |Tr[W phi_j]|
    int iterations = 0;
};
RobustnessLPResult robustness_lp(const DenseOp &rho);

struct LadderReport {
    double lambda_plus = 1, lambda = 1, xi = 1;
    double robustness = 1;
    double stab_norm = 1;
    double slack_general = 0;  // R - (2 Lambda+ - 1)
    double slack_1q = 0;       // R - ((1+sqrt2) Lambda+ - sqrt2), single-qubit only
    bool single_qubit = true;
    bool ok = true;
};
LadderReport monotone_ladder_check(const BlochState &b);
LadderReport monotone_ladder_check(const std::vector<BlochState> &product, bool use_lp = true);

}  // namespace magicsim
