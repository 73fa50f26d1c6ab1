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

#include <string>
#include <vector>

#include "magicsim/monotones.h"

namespace magicsim {

// Targets with F(psi^m) = F(psi)^m; F is the stabilizer fidelity.
enum class DistillTarget { H, T, F };
DistillTarget distill_target_from_name(const std::string &name);
std::string distill_target_name(DistillTarget t);
double inverse_stabilizer_fidelity(DistillTarget t);

struct DistillQuery {
    std::vector<BlochState> rho;  // one entry per input qubit of a single copy
    DistillTarget target = DistillTarget::H;
    int m = 1;
    double epsilon = 0;  // output infidelity
    double p = 1;        // success probability

    void validate() const;
};

struct CopiesBound {
    double lambda_plus = 1;
    double k1 = 0, k2 = 0, k = 0;
};

CopiesBound copies_lower_bound(const DistillQuery &q);
double asymptotic_rate_bound(const std::vector<BlochState> &rho, DistillTarget target);

struct SweepRow {
    double alpha = 1, epsilon = 0, p = 1;
    int m = 1;
    bool defined = true;  // false for stabilizer inputs, where no k suffices
    CopiesBound bound;
};

// Noisy-H family alpha |H><H| + (1-alpha) I/2, one parameter varied at a time.
std::vector<SweepRow> sweep_epsilon(double alpha, DistillTarget t, int m, double p, const std::vector<double> &eps);
std::vector<SweepRow> sweep_alpha(const std::vector<double> &alphas, DistillTarget t, int m, double eps, double p);
std::vector<SweepRow> sweep_m(double alpha, DistillTarget t, const std::vector<int> &ms, double eps, double p);

}  // namespace magicsim
