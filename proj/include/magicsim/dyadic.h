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
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "magicsim/channels.h"

namespace magicsim {

// Either a stabilizer projector or a Hermitian Pauli observable.
struct Measurement {
    bool is_pauli = false;
    StabProjector proj;
    PauliOp pauli;

    static Measurement projector(const StabProjector &p);
    static Measurement observable(const PauliOp &p);
    int num_qubits() const { return is_pauli ? pauli.n : proj.n; }
    void validate() const;
    // Lower/upper a-priori bounds on the measured value.
    double lower() const { return is_pauli ? -1.0 : 0.0; }
    double upper() const { return 1.0; }
    // <R| M |L>
    std::complex<double> dyad_trace(const StabState &L, const StabState &R) const;
};

// Trace-norm transition probabilities of one channel step.  Entry i < N_U is
// the unitary term i, entry N_U + s the Kraus term s; the abort probability is
// 1 - sum.  These are the unconditional probabilities P_X * P_r.
std::vector<double> transition_probabilities(const Dyad &d, const SimulableChannel &ch);

// Applies branch number choice (indexing as above) to a normalized dyad and
// renormalizes; phases stay inside the states.
Dyad apply_branch(const Dyad &d, const SimulableChannel &ch, size_t choice);

// One stochastic step: returns nullopt on abort.
std::optional<Dyad> stabilizer_update(const Dyad &d, const SimulableChannel &ch, std::mt19937_64 &rng);

struct EstimateOptions {
    double epsilon = 0.02;
    double p_fail = 0.05;
    uint64_t seed = 0;
    int workers = 1;
    uint64_t min_samples = 0;     // M is at least this (and at least the Hoeffding count)
    uint64_t fixed_samples = 0;   // if nonzero, overrides M entirely (used by wrappers)
    double l1_override = -1;      // if >= 0, the per-sample scale replacing ||alpha||_1
    size_t memo_node_limit = size_t{1} << 21;
};

struct EstimateReport {
    double mu_hat = 0;
    double epsilon = 0;
    double p_fail = 0;
    uint64_t M = 0;
    uint64_t seed = 0;
    double per_sample_bound = 0;  // ||alpha||_1
    double max_abs_sample = 0;
    uint64_t aborted = 0;
    double std_error = 0;
    int workers = 1;
    bool memoized = false;
    size_t memo_nodes = 0;
    int num_dyads = 0;
    int circuit_depth = 0;
};

uint64_t hoeffding_samples(double l1, double epsilon, double p_fail);

EstimateReport estimate_born(const DyadicDecomposition &decomp, const std::vector<SimulableChannel> &circuit,
                             const Measurement &meas, const EstimateOptions &opts);

// Expected value of one sample, summed over every trajectory exactly.  Equals
// Tr[M E(rho)] when the estimator is unbiased; exponential cost, tests only.
double trajectory_expectation(const DyadicDecomposition &decomp, const std::vector<SimulableChannel> &circuit,
                              const Measurement &meas);

}  // namespace magicsim
