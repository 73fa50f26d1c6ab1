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
#include <utility>
#include <vector>

#include "magicsim/pauli.h"
#include "magicsim/scalar.h"

namespace magicsim {

// Generator i^k X^x Z^z (X part to the left).
struct TableauRow {
    uint64_t x = 0;
    uint64_t z = 0;
    uint8_t k = 0;
};

// Symmetric matrix indexing an equatorial state
//   2^{-n/2} sum_x i^{x^T A x} |x>
// diag entries live in Z_4, off-diagonal entries in {0,1}.
struct EquatorialMatrix {
    int n = 0;
    std::vector<uint8_t> diag;
    std::vector<uint64_t> adj;  // adj[i] bit j set <=> A_ij = 1 (i != j)

    static EquatorialMatrix zeros(int n);
    // Decode index in [0, 4^n * 2^(n(n-1)/2)) into a matrix, for enumeration.
    static EquatorialMatrix from_index(int n, uint64_t index);
    static uint64_t count(int n);
    int quadratic_form(uint64_t xbits) const;
};

// Pure stabilizer state with exact global phase and (possibly non-unit) norm.
//
// The state is stored as a stabilizer group (n commuting generators with
// signs) together with one computational basis string x_ref in its support
// and the exact amplitude <x_ref|psi>.  Any other amplitude follows from the
// group element whose X part is x_ref ^ y.
class StabState {
   public:
    StabState() = default;
    static StabState zeros(int n);
    static StabState basis(int n, uint64_t bits);
    static StabState equatorial(const EquatorialMatrix &A);
    static StabState null_state(int n);
    // lo occupies qubits [0, lo.n), hi the qubits above.
    static StabState tensor(const StabState &lo, const StabState &hi);

    int num_qubits() const { return n_; }
    bool is_null() const { return null_; }

    // Exact <y|psi>.
    Scalar amplitude(uint64_t y) const;
    std::complex<double> amplitude_value(uint64_t y) const { return amplitude(y).value(); }
    // Number of X-independent generators; support has 2^r strings.
    int support_rank() const;
    double norm2() const;
    double norm() const;
    // Exact log2 of the squared norm (meaningless for null states).
    int log2_norm2() const;
    uint64_t reference_string() const { return xref_; }
    const Scalar &reference_amplitude() const { return amp_; }
    const std::vector<TableauRow> &generators() const { return rows_; }

    void apply_inplace(const Gate &g);
    void apply_inplace(const Circuit &c);
    // Replace psi by (1 + sign*P)/2 psi; returns ||new|| / ||old|| (0 or 1 or 1/sqrt2).
    double project_inplace(const PauliOp &p, int sign);
    double project_inplace(const StabProjector &proj);
    void normalize_inplace();
    void scale_inplace(const Scalar &s);

    // Value-returning wrappers.
    StabState applied(const Gate &g) const;
    StabState applied(const Circuit &c) const;
    std::pair<StabState, double> projected(const PauliOp &p, int sign) const;
    std::pair<StabState, double> projected(const StabProjector &proj) const;
    StabState normalized() const;

    // Is +-P in the stabilizer group?  Returns 0 if P anticommutes with some
    // generator, otherwise the eigenvalue (+1 or -1).
    int pauli_eigenvalue(const PauliOp &p) const;

   private:
    struct Echelon {
        std::vector<TableauRow> rows;
        std::vector<int> pivot;
        int r = 0;
    };
    Echelon echelon() const;
    Scalar amplitude_with(const Echelon &ech, uint64_t y) const;
    uint64_t find_support(const Echelon &ech) const;
    void project_row_inplace(const TableauRow &p, int sign, double *ratio);

    int n_ = 0;
    std::vector<TableauRow> rows_;
    uint64_t xref_ = 0;
    Scalar amp_;
    bool null_ = false;

    friend Scalar inner_product_exact(const StabState &L, const StabState &R);
};

TableauRow pauli_to_row(const PauliOp &p);

Scalar inner_product_exact(const StabState &L, const StabState &R);
std::complex<double> inner_product(const StabState &L, const StabState &R);
std::complex<double> equatorial_overlap(const StabState &psi, const EquatorialMatrix &A);

StabState apply_gate(const StabState &s, const Gate &g);
std::pair<StabState, double> project_pauli(const StabState &s, const PauliOp &p, int sign);

}  // namespace magicsim
