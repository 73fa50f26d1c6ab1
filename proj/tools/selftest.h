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
#include <string>
#include <vector>

#include "fixtures.h"
#include "magicsim/monotones.h"
#include "magicsim/rank.h"
#include "random_programs.h"

namespace magicsim {

struct SelftestCheck {
    std::string name;
    bool passed = true;
    int cases = 0;
    double max_error = 0;
    double tolerance = 0;
};

struct SelftestSummary {
    bool passed = true;
    std::vector<SelftestCheck> checks;
};

inline SelftestSummary run_selftest_suite(uint64_t seed) {
    SelftestSummary s;
    auto finish = [&](SelftestCheck c) {
        c.passed = c.max_error <= c.tolerance;
        s.passed = s.passed && c.passed;
        s.checks.push_back(c);
    };

    {
        SelftestCheck c{"tableau_vs_dense", true, 0, 0, 1e-9};
        std::mt19937_64 rng(seed ^ 0x7461626cULL);
        for (int i = 0; i < 300; i++) {
            auto r = testing::run_random_program(rng, 1 + i % 5, 30, 6);
            c.max_error = std::max({c.max_error, r.max_state_err, r.max_norm_err, r.max_inner_err});
            c.cases++;
        }
        finish(c);
    }
    {
        SelftestCheck c{"dyadic_trajectories_vs_dense", true, 0, 0, 1e-9};
        std::mt19937_64 rng(seed ^ 0x64796164ULL);
        for (int i = 0; i < 60; i++) {
            auto f = testing::make_dyadic_fixture(rng, i);
            double v = trajectory_expectation(f.decomp, f.circuit, f.meas);
            c.max_error = std::max(c.max_error, std::abs(v - f.exact));
            c.cases++;
        }
        finish(c);
    }
    {
        SelftestCheck c{"monotone_constants", true, 0, 0, 1e-9};
        const double want[] = {4 - 2 * std::sqrt(2.0), 4 - 2 * std::sqrt(2.0), 3 - std::sqrt(3.0), 1.0, 1.0};
        const char *names[] = {"H", "T", "F", "0", "+"};
        for (int i = 0; i < 5; i++) {
            double got = lambda_plus_1q(BlochState::named(names[i])).value;
            c.max_error = std::max(c.max_error, std::abs(got - want[i]));
            c.cases++;
        }
        finish(c);
    }
    {
        SelftestCheck c{"monotone_ladder", true, 0, 0, 1e-7};
        std::mt19937_64 rng(seed ^ 0x6c616464ULL);
        for (int i = 0; i < 100; i++) {
            LadderReport r = monotone_ladder_check(testing::random_bloch_state(rng));
            double bad = std::max({0.0, -r.slack_general, r.single_qubit ? -r.slack_1q : 0.0});
            if (!r.ok) bad = std::max(bad, 1.0);
            c.max_error = std::max(c.max_error, bad);
            c.cases++;
        }
        finish(c);
    }
    {
        SelftestCheck c{"sparse_variance_constant", true, 0, 0, 1e-9};
        std::mt19937_64 rng(seed ^ 0x73707273ULL);
        for (int i = 0; i < 20; i++) {
            std::vector<BlochState> pure;
            int n = 1 + i % 4;
            for (int q = 0; q < n; q++) {
                BlochState b = testing::random_bloch_state(rng);
                double r = b.norm();
                pure.push_back({b.bx / r, b.by / r, b.bz / r});
            }
            SparseDecomposition d = sparse_decompose_product(pure);
            ProductDiagnostics pd = product_diagnostics(pure);
            c.max_error = std::max({c.max_error, std::abs(d.C - pd.C), std::abs(d.l1 - pd.l1)});
            c.cases++;
        }
        finish(c);
    }
    return s;
}

}  // namespace magicsim
