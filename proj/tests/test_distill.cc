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

#include "doctest.h"
#include "magicsim/distill.h"

using namespace magicsim;

TEST_SUITE("distill") {

TEST_CASE("self-distillation of H") {
    DistillQuery q;
    q.rho = {BlochState::named("H")};
    CopiesBound b = copies_lower_bound(q);
    CHECK(b.k1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b.k2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b.k == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(asymptotic_rate_bound(q.rho, DistillTarget::H) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(asymptotic_rate_bound(q.rho, DistillTarget::T) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rates between targets") {
    double r = asymptotic_rate_bound({BlochState::named("H")}, DistillTarget::F);
    CHECK(r == doctest::Approx(std::log(4 - 2 * std::sqrt(2.0)) / std::log(3 - std::sqrt(3.0))).epsilon(1e-12));
    CHECK(r == doctest::Approx(0.66700).epsilon(1e-4));
    BlochState noisy = BlochState::noisy(BlochState::named("H"), 0.75);
    double lp = product_monotone({noisy});
    CHECK(lp == doctest::Approx(1.02513).epsilon(1e-5));
    CHECK(asymptotic_rate_bound({noisy}, DistillTarget::H) ==
          doctest::Approx(std::log(lp) / std::log(4 - 2 * std::sqrt(2.0))).epsilon(1e-12));
    CHECK(inverse_stabilizer_fidelity(DistillTarget::F) == doctest::Approx(3 - std::sqrt(3.0)));
}

TEST_CASE("efficiency form of the first bound") {
    DistillQuery q;
    q.rho = {BlochState::noisy(BlochState::named("H"), 0.9)};
    for (int m : {1, 3, 10}) {
        q.m = m;
        CopiesBound b = copies_lower_bound(q);
        double lp = product_monotone(q.rho);
        CHECK(b.k1 / m == doctest::Approx(std::log(4 - 2 * std::sqrt(2.0)) / std::log(lp)).epsilon(1e-12));
    }
}

TEST_CASE("monotone in epsilon and m") {
    DistillQuery q;
    q.rho = {BlochState::noisy(BlochState::named("H"), 0.75)};
    q.m = 4;
    q.p = 0.9;
    double prev1 = INFINITY, prev2 = INFINITY;
    for (int e = 0; e <= 20; e++) {
        q.epsilon = e == 0 ? 0.0 : std::pow(10.0, -21 + e);
        if (q.epsilon >= 1) break;
        CopiesBound b = copies_lower_bound(q);
        CHECK(b.k1 <= prev1);
        CHECK(b.k2 <= prev2);
        prev1 = b.k1;
        prev2 = b.k2;
    }
    q.epsilon = 1e-10;
    prev1 = prev2 = -INFINITY;
    for (int m = 1; m <= 40; m++) {
        q.m = m;
        CopiesBound b = copies_lower_bound(q);
        CHECK(b.k1 >= prev1);
        CHECK(b.k2 >= prev2);
        prev1 = b.k1;
        prev2 = b.k2;
    }
}

TEST_CASE("alpha sweep marks stabilizer inputs") {
    std::vector<double> alphas;
    for (int i = 0; i <= 38; i++) alphas.push_back(0.6 + 0.01 * i);
    auto rows = sweep_alpha(alphas, DistillTarget::H, 24, 1e-20, 0.9);
    REQUIRE(rows.size() == alphas.size());
    double prev = INFINITY;
    for (const auto &r : rows) {
        CHECK(r.defined == (r.alpha > 1 / std::sqrt(2.0) + 1e-9));
        if (r.defined) {
            CHECK(r.bound.k < prev);
            prev = r.bound.k;
        } else {
            CHECK(std::isinf(r.bound.k));
        }
    }
    auto m1 = sweep_m(0.9, DistillTarget::H, {1, 24, 48}, 1e-20, 0.9);
    CHECK(m1[0].bound.k < m1[1].bound.k);
    CHECK(m1[1].bound.k < m1[2].bound.k);
}

TEST_CASE("validation") {
    DistillQuery q;
    q.rho = {BlochState{0, 0, 1}};
    CHECK_THROWS_AS(copies_lower_bound(q), std::invalid_argument);
    q.rho = {BlochState::named("H")};
    q.p = 0;
    CHECK_THROWS_AS(copies_lower_bound(q), std::invalid_argument);
    q.p = 1;
    q.epsilon = 1;
    CHECK_THROWS_AS(copies_lower_bound(q), std::invalid_argument);
    q.epsilon = 0;
    q.m = 0;
    CHECK_THROWS_AS(copies_lower_bound(q), std::invalid_argument);
    CHECK_THROWS_AS(distill_target_from_name("Q"), std::invalid_argument);
    CHECK(distill_target_from_name("F") == DistillTarget::F);
}

}  // TEST_SUITE
