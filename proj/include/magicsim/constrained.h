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

#include "magicsim/dyadic.h"
#include "magicsim/monotones.h"

namespace magicsim {

// rho <= lambda * sigma with sigma a convex mixture of stabilizer states.
struct RobustnessPair {
    double lambda = 1.0;
    DyadicDecomposition sigma;

    void validate() const;
};

// Optimal pair for a product of single-qubit states: lambda is the product of
// the per-qubit values and sigma the product of the per-qubit partners.
RobustnessPair robustness_pair_product(const std::vector<BlochState> &states);

enum class ConstrainedCase { Failure, ConstantError, ShrunkError };
std::string constrained_case_name(ConstrainedCase c);

struct ConstrainedReport {
    double E_hat = 0;
    double Delta = 1;
    ConstrainedCase which = ConstrainedCase::Failure;
    double E_sigma = 0, E_max = 1, E_min = -1;
    double lambda = 1, c = 0, epsilon = 0, p_fail = 0;
    uint64_t samples = 0;
    uint64_t seed = 0;
};

uint64_t constrained_samples(double c, double p_fail);

// Interval logic alone, given an estimate E_sigma of lambda Tr[E O(sigma)].
ConstrainedReport constrained_interval(double lambda, double c, double E_sigma, double lower, double upper);

struct ConstrainedOptions {
    double c = 0.05;
    double p_fail = 0.05;
    uint64_t seed = 0;
    int workers = 1;
};

ConstrainedReport constrained_estimate(const RobustnessPair &pair, const std::vector<SimulableChannel> &circuit,
                                       const Measurement &meas, const ConstrainedOptions &opts);

}  // namespace magicsim
