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

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "magicsim/dense.h"
#include "magicsim/scalar.h"
#include "magicsim/stab_state.h"
#include "random_programs.h"

using namespace magicsim;
using magicsim::testing::random_circuit;
using magicsim::testing::random_pauli;
using magicsim::testing::random_stab_state;

TEST_SUITE("stab_core") {

TEST_CASE("scalar lattice arithmetic") {
    Scalar a = Scalar::make(-1, 1);  // e^{i pi/4}/sqrt2
    CHECK(std::abs(a.value() - std::polar(1 / std::numbers::sqrt2, std::numbers::pi / 4)) < 1e-15);
    CHECK((a * a.conj()).value().real() == doctest::Approx(0.5));
    CHECK(scalar_snap(a.value()) == a);
    CHECK(scalar_snap({0, 0}).zero);
    CHECK_THROWS(scalar_snap({0.3, 0.0}));
    Scalar terms[2] = {Scalar::make(0, 0), Scalar::make(0, 2)};  // 1 + i
    CHECK(scalar_sum(terms, 2) == Scalar::make(1, 1));
    Scalar cancel[2] = {Scalar::make(0, 0), Scalar::make(0, 4)};
    CHECK(scalar_sum(cancel, 2).zero);
}

TEST_CASE("basis and equatorial states expand correctly") {
    StabState b = StabState::basis(3, 0b101);
    DenseVec v = expand(b);
    CHECK(std::abs(v(5) - 1.0) < 1e-15);
    CHECK(v.norm() == doctest::Approx(1.0));
    for (uint64_t idx = 0; idx < EquatorialMatrix::count(2); idx++) {
        EquatorialMatrix A = EquatorialMatrix::from_index(2, idx);
        DenseVec e = expand(StabState::equatorial(A));
        for (uint64_t x = 0; x < 4; x++) {
            std::complex<double> want = std::pow(std::complex<double>(0, 1), A.quadratic_form(x)) * 0.5;
            CHECK(std::abs(e(x) - want) < 1e-14);
        }
    }
}

TEST_CASE("single gates match dense matrices") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; trial++) {
        int n = 1 + trial % 4;
        StabState s = random_stab_state(rng, n);
        Gate g = magicsim::testing::random_gate(rng, n);
        DenseVec want = gate_matrix(g, n) * expand(s);
        CHECK((expand(s.applied(g)) - want).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("projections track norm ratios") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; trial++) {
        int n = 1 + trial % 4;
        StabState s = random_stab_state(rng, n);
        PauliOp p = random_pauli(rng, n);
        int sign = (trial & 1) ? 1 : -1;
        DenseVec want = 0.5 * (expand(s) + double(sign) * (pauli_matrix(p) * expand(s)));
        auto [t, ratio] = s.projected(p, sign);
        CHECK((expand(t) - want).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(ratio == doctest::Approx(want.norm()));
        bool valid = ratio == 0.0 || std::abs(ratio - 1.0) < 1e-15 || std::abs(ratio - 1 / std::numbers::sqrt2) < 1e-15;
        CHECK(valid);
    }
}

TEST_CASE("inner products and Pauli eigenvalues") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 300; trial++) {
        int n = 1 + trial % 5;
        StabState a = random_stab_state(rng, n), b = random_stab_state(rng, n);
        std::complex<double> want = expand(a).dot(expand(b));
        CHECK(std::abs(inner_product(a, b) - want) < 1e-12);
        PauliOp p = random_pauli(rng, n);
        int ev = a.pauli_eigenvalue(p);
        double dense_ev = expand(a).dot(pauli_matrix(p) * expand(a)).real();
        CHECK(std::abs(ev - dense_ev) < 1e-12);
    }
}

TEST_CASE("tensor product places qubits low to high") {
    StabState lo = StabState::basis(1, 1);
    StabState hi = StabState::zeros(2).applied(Circuit{Gate{GateKind::H, 0}, Gate{GateKind::CX, 0, 1}});
    DenseVec got = expand(StabState::tensor(lo, hi));
    DenseVec want = kron(expand(hi), expand(lo));
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("randomized programs agree with dense vectors") {
    std::mt19937_64 rng(2026);
    double worst = 0;
    for (int prog = 0; prog < 150; prog++) {
        auto rep = magicsim::testing::run_random_program(rng, 1 + prog % 5, 60, 10);
        worst = std::max({worst, rep.max_state_err, rep.max_norm_err, rep.max_inner_err});
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("wide registers stay exact") {
    // 40 qubits: no dense check, but algebraic identities must hold.
    std::mt19937_64 rng(7);
    int n = 40;
    StabState s = random_stab_state(rng, n, 400);
    Circuit c = random_circuit(rng, n, 200);
    StabState t = s.applied(c).applied(inverse_circuit(c));
    CHECK(std::abs(inner_product(s, t) - 1.0) < 1e-12);
    CHECK(s.norm() == doctest::Approx(1.0));
}

TEST_CASE("invalid inputs are rejected") {
    CHECK_THROWS(StabState::zeros(0));
    CHECK_THROWS(StabState::zeros(65));
    CHECK_THROWS(check_circuit(Circuit{Gate{GateKind::CX, 0, 0}}, 2));
    CHECK_THROWS(check_circuit(Circuit{Gate{GateKind::H, 3}}, 2));
    CHECK_THROWS(PauliOp::parse("XQ"));
}

}
