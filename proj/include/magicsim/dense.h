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

// Brute-force reference linear algebra used by tests and input validation.
// Qubit j is bit j of the basis index.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "magicsim/pauli.h"
#include "magicsim/stab_state.h"

namespace magicsim {

struct SimulableChannel;
struct DyadicDecomposition;

constexpr int kMaxDenseQubits = 6;

using DenseVec = Eigen::VectorXcd;
using DenseOp = Eigen::MatrixXcd;

void check_dense_size(int n);

DenseVec expand(const StabState &s);
DenseOp gate_matrix(const Gate &g, int n);
DenseOp circuit_unitary(const Circuit &c, int n);
DenseVec apply_circuit_dense(const DenseVec &v, const Circuit &c, int n);
DenseOp pauli_matrix(const PauliOp &p);
DenseOp projector_matrix(const StabProjector &proj);
DenseOp apply_channel_dense(const DenseOp &rho, const SimulableChannel &ch);
double born_probability_dense(const DenseOp &rho, const StabProjector &proj);
double expectation_dense(const DenseOp &rho, const PauliOp &p);

DenseOp bloch_density(double bx, double by, double bz);
DenseOp kron(const DenseOp &a, const DenseOp &b);
// Tensor product with factor 0 acting on qubit 0 (least significant bit).
DenseOp product_density(const std::vector<DenseOp> &factors);
DenseOp dyads_to_dense(const DyadicDecomposition &d);
DenseVec zero_vector(int n);

}  // namespace magicsim
