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

#include "magicsim/dense.h"

#include <cmath>
#include <stdexcept>

#include "magicsim/channels.h"

namespace magicsim {

using cd = std::complex<double>;

void check_dense_size(int n) {
    if (n < 1 || n > kMaxDenseQubits) throw std::out_of_range("dense oracle supports 1..6 qubits");
}

DenseVec zero_vector(int n) {
    check_dense_size(n);
    DenseVec v = DenseVec::Zero(Eigen::Index{1} << n);
    v(0) = 1.0;
    return v;
}

DenseVec expand(const StabState &s) {
    int n = s.num_qubits();
    check_dense_size(n);
    DenseVec v = DenseVec::Zero(Eigen::Index{1} << n);
    if (s.is_null()) return v;
    for (uint64_t y = 0; y < (uint64_t{1} << n); y++) v((Eigen::Index)y) = s.amplitude_value(y);
    return v;
}

namespace {

void apply_gate_vec(DenseVec &v, const Gate &g) {
    const Eigen::Index dim = v.size();
    const uint64_t m0 = uint64_t{1} << g.q0;
    const uint64_t m1 = g.two_qubit() ? uint64_t{1} << g.q1 : 0;
    const double r = std::sqrt(0.5);
    const cd I(0, 1);
    for (Eigen::Index y = 0; y < dim; y++) {
        uint64_t u = (uint64_t)y;
        bool b0 = u & m0, b1 = u & m1;
        switch (g.kind) {
            case GateKind::H:
                if (!b0) {
                    cd a = v(y), b = v((Eigen::Index)(u | m0));
                    v(y) = r * (a + b);
                    v((Eigen::Index)(u | m0)) = r * (a - b);
                }
                break;
            case GateKind::S:
                if (b0) v(y) *= I;
                break;
            case GateKind::S_DAG:
                if (b0) v(y) *= -I;
                break;
            case GateKind::Z:
                if (b0) v(y) = -v(y);
                break;
            case GateKind::X:
                if (!b0) std::swap(v(y), v((Eigen::Index)(u | m0)));
                break;
            case GateKind::Y:
                if (!b0) {
                    cd a = v(y), b = v((Eigen::Index)(u | m0));
                    v(y) = -I * b;
                    v((Eigen::Index)(u | m0)) = I * a;
                }
                break;
            case GateKind::CX:
                if (b0 && !b1) std::swap(v(y), v((Eigen::Index)(u | m1)));
                break;
            case GateKind::CZ:
                if (b0 && b1) v(y) = -v(y);
                break;
            case GateKind::SWAP:
                if (b0 && !b1) std::swap(v(y), v((Eigen::Index)((u ^ m0) | m1)));
                break;
        }
    }
}

}  // namespace

DenseVec apply_circuit_dense(const DenseVec &v, const Circuit &c, int n) {
    check_dense_size(n);
    check_circuit(c, n);
    DenseVec w = v;
    for (const auto &g : c) apply_gate_vec(w, g);
    return w;
}

DenseOp gate_matrix(const Gate &g, int n) { return circuit_unitary(Circuit{g}, n); }

DenseOp circuit_unitary(const Circuit &c, int n) {
    check_dense_size(n);
    check_circuit(c, n);
    Eigen::Index dim = Eigen::Index{1} << n;
    DenseOp U = DenseOp::Identity(dim, dim);
    for (Eigen::Index col = 0; col < dim; col++) {
        DenseVec v = U.col(col);
        for (const auto &g : c) apply_gate_vec(v, g);
        U.col(col) = v;
    }
    return U;
}

DenseOp pauli_matrix(const PauliOp &p) {
    check_dense_size(p.n);
    Eigen::Index dim = Eigen::Index{1} << p.n;
    DenseOp M = DenseOp::Zero(dim, dim);
    const cd ph[4] = {cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)};
    for (uint64_t y = 0; y < (uint64_t)dim; y++) {
        // P|y> = phase * prod_j P_j |y_j>
        uint64_t out = y ^ p.x;
        int k = p.phase_exp;
        for (int j = 0; j < p.n; j++) {
            bool bx = (p.x >> j) & 1, bz = (p.z >> j) & 1, by = (y >> j) & 1;
            if (bx && bz) k += by ? 3 : 1;  // Y|0>=i|1>, Y|1>=-i|0>
            else if (bz && by) k += 2;
        }
        M((Eigen::Index)out, (Eigen::Index)y) = ph[k & 3];
    }
    return M;
}

DenseOp projector_matrix(const StabProjector &proj) {
    check_dense_size(proj.n);
    Eigen::Index dim = Eigen::Index{1} << proj.n;
    DenseOp M = DenseOp::Identity(dim, dim);
    for (const auto &[p, s] : proj.generators) {
        DenseOp f = 0.5 * (DenseOp::Identity(dim, dim) + (double)s * pauli_matrix(p));
        M = f * M;
    }
    return M;
}

DenseOp apply_channel_dense(const DenseOp &rho, const SimulableChannel &ch) {
    check_dense_size(ch.n);
    Eigen::Index dim = Eigen::Index{1} << ch.n;
    if (rho.rows() != dim || rho.cols() != dim) throw std::invalid_argument("density matrix dimension mismatch");
    DenseOp out = DenseOp::Zero(dim, dim);
    DenseOp completeness = DenseOp::Zero(dim, dim);
    for (const auto &[p, c] : ch.unitary_part) {
        DenseOp U = circuit_unitary(c, ch.n);
        out += p * U * rho * U.adjoint();
        completeness += p * DenseOp::Identity(dim, dim);
    }
    for (const auto &[q, k] : ch.kraus_part) {
        DenseOp K = std::sqrt(std::ldexp(1.0, k.h)) * circuit_unitary(k.circuit, ch.n) * projector_matrix(k.proj);
        out += q * K * rho * K.adjoint();
        completeness += q * K.adjoint() * K;
    }
    double dev = (completeness - DenseOp::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (dev > 1e-8) throw std::invalid_argument("channel violates Kraus completeness (deviation " + std::to_string(dev) + ")");
    return out;
}

double born_probability_dense(const DenseOp &rho, const StabProjector &proj) {
    return (projector_matrix(proj) * rho).trace().real();
}

double expectation_dense(const DenseOp &rho, const PauliOp &p) { return (pauli_matrix(p) * rho).trace().real(); }

DenseOp bloch_density(double bx, double by, double bz) {
    DenseOp r(2, 2);
    r << cd(1 + bz, 0), cd(bx, -by), cd(bx, by), cd(1 - bz, 0);
    return 0.5 * r;
}

DenseOp kron(const DenseOp &a, const DenseOp &b) {
    DenseOp out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++)
        for (Eigen::Index j = 0; j < a.cols(); j++) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

DenseOp product_density(const std::vector<DenseOp> &factors) {
    if (factors.empty()) throw std::invalid_argument("empty product");
    DenseOp out = factors[0];
    for (size_t i = 1; i < factors.size(); i++) out = kron(factors[i], out);
    return out;
}

DenseOp dyads_to_dense(const DyadicDecomposition &d) {
    check_dense_size(d.n);
    Eigen::Index dim = Eigen::Index{1} << d.n;
    DenseOp out = DenseOp::Zero(dim, dim);
    for (const auto &t : d.terms) out += t.alpha * expand(t.dyad.L) * expand(t.dyad.R).adjoint();
    return out;
}

}  // namespace magicsim
