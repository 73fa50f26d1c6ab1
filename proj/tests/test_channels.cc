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

#include "doctest.h"
#include "magicsim/channels.h"
#include "magicsim/dense.h"
#include "magicsim/monotones.h"

using namespace magicsim;

TEST_SUITE("channels") {

TEST_CASE("depolarizing channel") {
    SimulableChannel d0 = depolarizing_channel(1, 0, 0.0);
    CHECK(d0.num_terms() == 1);
    SimulableChannel d1 = depolarizing_channel(1, 0, 1.0);
    d1.validate();
    DenseOp out = apply_channel_dense(BlochState::named("H").density(), d1);
    CHECK((out - 0.5 * DenseOp::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
    SimulableChannel dh = depolarizing_channel(2, 1, 0.3);
    CHECK(dh.num_terms() == 4);
    CHECK_THROWS(depolarizing_channel(1, 0, 1.5));
}

TEST_CASE("T gadget injects T") {
    for (bool anc_t : {false, true}) {
        SimulableChannel g = t_gadget_channel(2, 0, 1, anc_t);
        g.validate();
        CHECK(g.num_terms() == 2);
        for (const char *name : {"+", "0", "+i", "H"}) {
            DenseOp data = BlochState::named(name).density();
            DenseOp anc = BlochState::named(anc_t ? "T" : "H").density();
            DenseOp out = apply_channel_dense(kron(anc, data), g);
            DenseOp T = DenseOp::Identity(2, 2);
            T(1, 1) = std::polar(1.0, std::numbers::pi / 4);
            DenseOp want = kron(BlochState::named("0").density(), T * data * T.adjoint());
            CHECK((out - want).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("Pauli measurement channel") {
    SimulableChannel m = pauli_measure_channel(1, PauliOp::parse("Z"));
    m.validate();
    DenseOp out = apply_channel_dense(BlochState::named("+").density(), m);
    CHECK((out - 0.5 * DenseOp::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK_THROWS(pauli_measure_channel(1, PauliOp::parse("I")));
}

TEST_CASE("completeness violations are reported") {
    SimulableChannel bad = pauli_measure_channel(1, PauliOp::parse("Z"));
    bad.kraus_part[0].first = 0.3;
    CHECK_THROWS(bad.validate());
    SimulableChannel wrong_h = pauli_measure_channel(1, PauliOp::parse("Z"));
    wrong_h.kraus_part[0].second.h = 0;
    CHECK_THROWS(wrong_h.validate());
}

TEST_CASE("Kraus outputs stay stabilizer") {
    std::vector<SimulableChannel> lib = {t_gadget_channel(2, 0, 1), t_gadget_channel(2, 1, 0, true),
                                         pauli_measure_channel(2, PauliOp::parse("XY"), {Gate{GateKind::H, 0}}),
                                         depolarizing_channel(2, 0, 0.5)};
    for (const auto &ch : lib) {
        for (const auto &s : enumerate_stabilizer_states(2)) {
            for (const auto &[q, k] : ch.kraus_part) {
                auto [t, ratio] = s.projected(k.proj);
                if (t.is_null()) continue;
                t.apply_inplace(k.circuit);
                DenseVec want = std::ldexp(1.0, 0) * circuit_unitary(k.circuit, 2) * projector_matrix(k.proj) * expand(s);
                CHECK((expand(t) - want).cwiseAbs().maxCoeff() < 1e-12);
            }
        }
    }
}

TEST_CASE("product dyadic decompositions") {
    DyadicDecomposition z = dyadic_decompose_product({BlochState::named("0")});
    CHECK(z.terms.size() == 1);
    CHECK(z.l1() == doctest::Approx(1.0));
    DyadicDecomposition h = dyadic_decompose_product({BlochState::named("H")});
    CHECK(h.terms.size() == 4);
    CHECK(h.l1() == doctest::Approx(4 - 2 * std::numbers::sqrt2).epsilon(1e-12));
    DyadicDecomposition hh = dyadic_decompose_product({BlochState::named("H"), BlochState::named("H")});
    CHECK(hh.terms.size() == 16);
    CHECK(hh.l1() == doctest::Approx(std::pow(4 - 2 * std::numbers::sqrt2, 2)).epsilon(1e-12));
    std::vector<BlochState> mix = {BlochState::noisy(BlochState::named("H"), 0.9), BlochState{0.2, -0.5, 0.1},
                                   BlochState::named("F")};
    DyadicDecomposition d = dyadic_decompose_product(mix);
    d.validate();
    std::vector<DenseOp> f;
    for (const auto &b : mix) f.push_back(b.density());
    CHECK((dyads_to_dense(d) - product_density(f)).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(d.l1() == doctest::Approx(product_monotone(mix)).epsilon(1e-8));
}

}
