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
#include <random>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "fixtures.h"
#include "magicsim/constrained.h"

using namespace magicsim;
using magicsim::testing::dense_value;
using magicsim::testing::random_bloch_state;
using magicsim::testing::random_circuit;
using magicsim::testing::random_pauli;

TEST_SUITE("constrained_sim") {

TEST_CASE("interval cases") {
    ConstrainedReport r = constrained_interval(1.0, 0.05, 0.3, -1, 1);
    CHECK(r.which == ConstrainedCase::ConstantError);
    CHECK(r.Delta == doctest::Approx(0.05));
    CHECK(r.E_hat == doctest::Approx(0.3));

    r = constrained_interval(1.3, 0.05, 0.1, -1, 1);
    CHECK(r.which == ConstrainedCase::ConstantError);
    CHECK(r.Delta == doctest::Approx(1.3 * 1.05 - 1));

    r = constrained_interval(2.5, 0.05, 0.0, -1, 1);
    CHECK(r.which == ConstrainedCase::Failure);
    CHECK(r.E_hat == 0.0);
    CHECK(r.Delta == 1.0);

    r = constrained_interval(1.3, 0.05, 0.9, -1, 1);
    CHECK(r.which == ConstrainedCase::ShrunkError);
    CHECK(r.E_max == 1.0);
    CHECK(r.E_min == doctest::Approx(0.9 - 0.065 - 0.3));
    CHECK(r.Delta == doctest::Approx(0.5 * (r.E_max - r.E_min)));
    CHECK(r.E_min <= r.E_hat);
    CHECK(r.E_hat <= r.E_max);

    r = constrained_interval(1.1, 0.05, 0.05, 0, 1);
    CHECK(r.E_min == 0.0);
    CHECK(r.which == ConstrainedCase::ShrunkError);
    CHECK_THROWS_AS(constrained_interval(0.9, 0.05, 0, -1, 1), std::invalid_argument);
}

TEST_CASE("pairs dominate the state") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 40; t++) {
        int n = 1 + t % 3;
        std::vector<BlochState> s;
        for (int q = 0; q < n; q++) s.push_back(t % 5 == 0 ? BlochState::named("H") : random_bloch_state(rng));
        RobustnessPair pair = robustness_pair_product(s);
        pair.validate();
        std::vector<DenseOp> f;
        for (const auto &b : s) f.push_back(b.density());
        DenseOp gap = pair.lambda * dyads_to_dense(pair.sigma) - product_density(f);
        Eigen::SelfAdjointEigenSolver<DenseOp> es(gap);
        CHECK(es.eigenvalues().minCoeff() >= -1e-8);
        CHECK(pair.lambda == doctest::Approx(product_monotone(s)).epsilon(1e-12));
    }
    CHECK(robustness_pair_product({BlochState::named("H")}).lambda == doctest::Approx(4 - 2 * std::sqrt(2.0)));
}

TEST_CASE("sample count does not depend on lambda") {
    RobustnessPair pair;
    pair.sigma = single_dyad(StabState::zeros(1), StabState::zeros(1));
    Measurement m = Measurement::observable(PauliOp::parse("Z"));
    uint64_t expect = (uint64_t)std::ceil(2.0 / (0.05 * 0.05) * std::log(2.0 / 0.05));
    for (double lam : {1.0, 1.17, 2.0, 5.0}) {
        pair.lambda = lam;
        ConstrainedReport r = constrained_estimate(pair, {}, m, {});
        CHECK(r.samples == expect);
        CHECK(r.E_sigma == doctest::Approx(lam));
    }
    pair.lambda = 1.0;
    ConstrainedReport r = constrained_estimate(pair, {}, m, {});
    CHECK(r.which == ConstrainedCase::ShrunkError);
    pair.lambda = 0.5;
    CHECK_THROWS_AS(constrained_estimate(pair, {}, m, {}), std::invalid_argument);
}

TEST_CASE("stabilizer input hits the constant-error case") {
    RobustnessPair pair = robustness_pair_product({BlochState{0, 0, 0}});
    CHECK(pair.lambda == 1.0);
    ConstrainedReport r = constrained_estimate(pair, {}, Measurement::observable(PauliOp::parse("X")), {});
    CHECK(r.which == ConstrainedCase::ConstantError);
    CHECK(r.Delta == doctest::Approx(0.05));
}

TEST_CASE("H state coverage") {
    RobustnessPair pair = robustness_pair_product({BlochState::named("H")});
    Measurement m = Measurement::observable(PauliOp::parse("X"));
    const double truth = 1 / std::sqrt(2.0);
    int hit = 0;
    const int runs = 200;
    ConstrainedOptions o;
    for (int r = 0; r < runs; r++) {
        o.seed = 1000 + r;
        ConstrainedReport rep = constrained_estimate(pair, {}, m, o);
        hit += truth >= rep.E_min && truth <= rep.E_max;
    }
    CHECK(hit >= (0.95 - 3 * std::sqrt(0.95 * 0.05 / runs)) * runs);
}

TEST_CASE("random two-qubit Clifford circuits are covered") {
    std::mt19937_64 rng(43);
    ConstrainedOptions o;
    o.p_fail = 0.01;
    for (int t = 0; t < 30; t++) {
        std::vector<BlochState> s = {random_bloch_state(rng), random_bloch_state(rng)};
        if (t % 3 == 0) s[0] = BlochState::named("H");
        RobustnessPair pair = robustness_pair_product(s);
        Circuit c = random_circuit(rng, 2, 8);
        std::vector<SimulableChannel> circ = {clifford_channel(2, c)};
        Measurement m = t % 2 ? Measurement::observable(random_pauli(rng, 2))
                              : Measurement::projector(StabProjector::basis(2, 1, rng() & 1));
        std::vector<DenseOp> f;
        for (const auto &b : s) f.push_back(b.density());
        DenseOp rho = apply_channel_dense(product_density(f), circ[0]);
        double truth = dense_value(rho, m);
        o.seed = t;
        ConstrainedReport rep = constrained_estimate(pair, circ, m, o);
        CAPTURE(t);
        CHECK(truth >= rep.E_min - 1e-12);
        CHECK(truth <= rep.E_max + 1e-12);
    }
}

}  // TEST_SUITE
