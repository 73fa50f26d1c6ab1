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
#include <random>
#include <string>
#include <vector>

#include "magicsim/dense.h"
#include "magicsim/monotones.h"
#include "magicsim/stab_state.h"

namespace magicsim {

// psi = sum_j c_j |phi_j>, together with the sparsification diagnostics.
struct SparseDecomposition {
    int n = 0;
    std::vector<std::complex<double>> coeffs;
    std::vector<StabState> terms;
    double l1 = 0;
    double C = 1;
    double delta_c = 0;

    void validate() const;
    // (C - 1) / ||c||_1^2
    double D() const { return l1 > 0 ? (C - 1.0) / (l1 * l1) : 0.0; }
};

// Fills l1, C and delta_c from coeffs and terms (Gram matrix, O(m^2)).
void compute_C(SparseDecomposition &d);

// Tensor product of the per-qubit optimal two-term decompositions.  The
// number of terms grows as 2^n, so keep n modest.
SparseDecomposition sparse_decompose_product(const std::vector<BlochState> &pure_states);

struct ProductDiagnostics {
    double l1 = 1, C = 1, delta_c = 0;
};
// l1, C and delta_c of the product decomposition without building it; both
// ||c||_1 and C are multiplicative, so any number of qubits works.
ProductDiagnostics product_diagnostics(const std::vector<BlochState> &pure_states);

// |Omega> = prefactor * sum_a counts[a] phases[a] |terms[a]>; the counts sum
// to k.  Repeated draws of the same term are merged; phases[a] = c_j/|c_j|.
struct SparseVector {
    int n = 0;
    uint64_t k = 0;
    double prefactor = 0;
    std::vector<StabState> terms;
    std::vector<std::complex<double>> phases;
    std::vector<uint64_t> counts;
    std::vector<size_t> source;  // index into the decomposition, per term

    double norm2() const;  // exact, via the Gram matrix
    DenseVec dense() const;
    // Projects qubits [0, w) onto the bit string (bit i on qubit i).
    SparseVector projected(uint64_t bits, int w) const;
    SparseVector scaled(double s) const;
    SparseVector applied(const Circuit &c) const;
    // <phi|Omega> for an arbitrary stabilizer state phi.
    std::complex<double> overlap(const StabState &phi) const;
};

SparseVector sparsify(const SparseDecomposition &d, uint64_t k, std::mt19937_64 &rng);

// Uniformly random equatorial matrix.
EquatorialMatrix random_equatorial(int n, std::mt19937_64 &rng);

enum class NormMode {
    Sampled,     // random equatorial states
    Enumerated,  // same distribution, but every equatorial overlap computed once (n <= 3)
    Auto,        // Enumerated when n <= 3, else Sampled
    Exact        // exact norm; test hook
};

struct FastNormOptions {
    double epsilon = 0.1;
    double p_fail = 0.05;
    NormMode mode = NormMode::Auto;
};

struct FastNormCounts {
    uint64_t batches = 0;
    uint64_t batch_size = 0;
};
FastNormCounts fast_norm_counts(double epsilon, double p_fail);

double fast_norm(const SparseVector &v, const FastNormOptions &opts, std::mt19937_64 &rng);

// Mixture of pure states, each with its own decomposition.
struct MixedInput {
    int n = 0;
    std::vector<double> probs;
    std::vector<SparseDecomposition> ensemble;
    double Xi_tilde = 1;
    bool equimagical = true;

    void validate() const;
    double D() const;
    DenseOp density() const;
};

// Product of single-qubit states, each split into its equimagical pure parts.
MixedInput mixed_input_product(const std::vector<BlochState> &states);

struct SampleOptions {
    double delta = 0.1;
    double p_fail = 0.05;
    int w = 1;
    uint64_t count = 1;
    uint64_t seed = 0;
    int workers = 1;
    NormMode norm_mode = NormMode::Auto;
    Circuit prefix;  // Clifford applied to the input before measuring
};

struct RuntimeReport {
    std::string regime;  // "standard" or "sharpened"
    double delta_S = 0, epsilon = 0, epsilon_FN = 0, p_FN = 0, D = 0, Xi_tilde = 0;
    uint64_t fastnorm_calls = 0;
    uint64_t k_min = 0, k_max = 0;
    double k_mean = 0;
    bool k_constant = true;
    double wall_seconds = 0;
    int workers = 1;
};

struct SampleResult {
    std::vector<std::string> strings;
    std::vector<uint64_t> k_used;
    RuntimeReport report;
};

// k for one string given ||c||_1^2, the global D and the error budget.
uint64_t sparsity_for(double l1_sq, double delta, double D, bool *sharpened = nullptr);

struct StringDraw {
    uint64_t bits = 0;
    double probability = 1;  // the product of conditionals used to draw it
    uint64_t fastnorm_calls = 0;
};
// Conditional-bit loop on a fixed |Omega>.
StringDraw sample_from_vector(const SparseVector &omega, int w, const FastNormOptions &fn, std::mt19937_64 &rng);

SampleResult sample_bitstrings(const MixedInput &input, const SampleOptions &opts);

std::string bits_to_string(uint64_t bits, int w);

// Upper bound on Var<Omega|Omega> for k terms.
double variance_bound(double C, double l1, uint64_t k);
// E<Omega|Omega> for a normalized psi.
double mean_norm2(double l1, uint64_t k);

}  // namespace magicsim
