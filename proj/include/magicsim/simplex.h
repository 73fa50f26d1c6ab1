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

#include <Eigen/Dense>
#include <string>

namespace magicsim {

enum class LPStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LPResult {
    LPStatus status = LPStatus::IterationLimit;
    double objective = 0;
    Eigen::VectorXd x;
    Eigen::VectorXd y;  // equality-constraint duals, c - A^T y >= 0 at optimum
    int iterations = 0;
};

struct SimplexOptions {
    double tol = 1e-10;
    int max_iterations = 200000;
    int refactor_every = 40;
};

// Dense two-phase revised simplex for  min c^T x  s.t.  A x = b, x >= 0,
// using largest-coefficient pricing, with Bland's rule as the anti-cycling
// fallback once degenerate pivots pile up.
LPResult solve_standard_lp(const Eigen::MatrixXd &A, const Eigen::VectorXd &b, const Eigen::VectorXd &c,
                           const SimplexOptions &opts = {});

std::string lp_status_name(LPStatus s);

}  // namespace magicsim
