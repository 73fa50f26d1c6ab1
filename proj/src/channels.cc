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

#include "magicsim/channels.h"

#include <cmath>
#include <stdexcept>

#include "magicsim/dense.h"
#include "magicsim/monotones.h"

namespace magicsim {

double DyadicDecomposition::l1() const {
    double s = 0;
    for (const auto &t : terms) s += std::abs(t.alpha);
    return s;
}

void DyadicDecomposition::validate() const {
    if (terms.empty()) throw std::invalid_argument("empty dyadic decomposition");
    for (const auto &t : terms) {
        if (t.dyad.L.num_qubits() != n || t.dyad.R.num_qubits() != n) throw std::invalid_argument("dyad size mismatch");
        if (t.dyad.L.is_null() || t.dyad.R.is_null()) throw std::invalid_argument("dyad contains a null state");
        if (!std::isfinite(t.alpha.real()) || !std::isfinite(t.alpha.imag())) throw std::invalid_argument("non-finite dyad weight");
    }
    if (n <= kMaxDenseQubits) {
        DenseOp rho = dyads_to_dense(*this);
        if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-8) throw std::invalid_argument("dyadic decomposition is not Hermitian");
        if (std::abs(rho.trace() - std::complex<double>(1, 0)) > 1e-8) throw std::invalid_argument("dyadic decomposition does not have unit trace");
    }
}

double SimulableChannel::P_U() const {
    double s = 0;
    for (const auto &[p, c] : unitary_part) s += p;
    return s;
}

void SimulableChannel::validate(size_t max_terms) const {
    if (n < 1 || n > kMaxQubits) throw std::invalid_argument("channel qubit count out of range");
    if (num_terms() == 0) throw std::invalid_argument("channel has no terms");
    if (num_terms() > max_terms) throw std::invalid_argument("channel has too many terms");
    double pu = 0;
    for (const auto &[p, c] : unitary_part) {
        if (!(p >= 0) || !std::isfinite(p)) throw std::invalid_argument("unitary weight must be nonnegative");
        check_circuit(c, n);
        pu += p;
    }
    if (pu > 1.0 + 1e-12) throw std::invalid_argument("unitary weights exceed 1");
    for (const auto &[q, k] : kraus_part) {
        if (!(q >= 0) || !std::isfinite(q)) throw std::invalid_argument("Kraus weight must be nonnegative");
        if (k.proj.n != n) throw std::invalid_argument("Kraus projector size mismatch");
        k.proj.validate();
        int r = k.proj.rank();
        if (r != k.h) throw std::invalid_argument("Kraus h does not match the number of independent generators");
        check_circuit(k.circuit, n);
    }
    if (n <= kMaxDenseQubits) {
        Eigen::Index dim = Eigen::Index{1} << n;
        DenseOp acc = pu * DenseOp::Identity(dim, dim);
        for (const auto &[q, k] : kraus_part) acc += q * std::ldexp(1.0, k.h) * projector_matrix(k.proj);
        double dev = (acc - DenseOp::Identity(dim, dim)).cwiseAbs().maxCoeff();
        if (dev > 1e-8) throw std::invalid_argument("channel violates Kraus completeness");
    }
}

SimulableChannel identity_channel(int n) {
    SimulableChannel ch;
    ch.n = n;
    ch.name = "identity";
    ch.unitary_part.push_back({1.0, {}});
    return ch;
}

SimulableChannel clifford_channel(int n, const Circuit &c) {
    check_circuit(c, n);
    SimulableChannel ch;
    ch.n = n;
    ch.name = "clifford";
    ch.unitary_part.push_back({1.0, c});
    return ch;
}

SimulableChannel clifford_mix_channel(int n, const std::vector<std::pair<double, Circuit>> &mix) {
    SimulableChannel ch;
    ch.n = n;
    ch.name = "clifford_mix";
    double tot = 0;
    for (const auto &[p, c] : mix) {
        if (!(p >= 0)) throw std::invalid_argument("mixture weights must be nonnegative");
        check_circuit(c, n);
        tot += p;
        if (p > 0) ch.unitary_part.push_back({p, c});
    }
    if (std::abs(tot - 1.0) > 1e-9) throw std::invalid_argument("mixture weights must sum to 1");
    return ch;
}

SimulableChannel depolarizing_channel(int n, int qubit, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("depolarizing strength must be in [0,1]");
    if (qubit < 0 || qubit >= n) throw std::out_of_range("depolarizing qubit out of range");
    SimulableChannel ch;
    ch.n = n;
    ch.name = "depolarizing";
    double p0 = 1.0 - 0.75 * lambda;
    if (p0 > 0) ch.unitary_part.push_back({p0, {}});
    if (lambda > 0) {
        for (GateKind k : {GateKind::X, GateKind::Y, GateKind::Z}) ch.unitary_part.push_back({lambda / 4, {Gate{k, qubit}}});
    }
    return ch;
}

SimulableChannel t_gadget_channel(int n, int data, int ancilla, bool ancilla_is_t) {
    if (data < 0 || data >= n || ancilla < 0 || ancilla >= n || data == ancilla) throw std::out_of_range("bad T-gadget qubits");
    SimulableChannel ch;
    ch.n = n;
    ch.name = "t_gadget";
    // Measure Z_d Z_a on the |T> ancilla, disentangle with CX, fix the -1
    // branch with S and reset the ancilla with X.  For an |H> ancilla the map
    // F = H S^dag is folded in, turning Z_d Z_a into Z_d Y_a.
    Circuit pre;
    std::string letters(n, 'I');
    letters[data] = 'Z';
    letters[ancilla] = 'Z';
    if (!ancilla_is_t) {
        pre = {Gate{GateKind::S_DAG, ancilla}, Gate{GateKind::H, ancilla}};
        letters[ancilla] = 'Y';
    }
    PauliOp zz = PauliOp::parse(letters);
    for (int s = 0; s < 2; s++) {
        StabKraus k;
        k.h = 1;
        k.proj.n = n;
        k.proj.generators.push_back({zz, s == 0 ? +1 : -1});
        k.circuit = pre;
        k.circuit.push_back(Gate{GateKind::CX, data, ancilla});
        if (s == 1) {
            k.circuit.push_back(Gate{GateKind::S, data});
            k.circuit.push_back(Gate{GateKind::X, ancilla});
        }
        ch.kraus_part.push_back({0.5, k});
    }
    return ch;
}

SimulableChannel pauli_measure_channel(int n, const PauliOp &p, const Circuit &on_minus) {
    if (p.n != n) throw std::invalid_argument("Pauli size mismatch");
    if (!p.hermitian()) throw std::invalid_argument("measured Pauli must be Hermitian");
    if (p.weight() == 0) throw std::invalid_argument("cannot measure the identity");
    check_circuit(on_minus, n);
    SimulableChannel ch;
    ch.n = n;
    ch.name = "pauli_measure_and_forward";
    for (int s : {+1, -1}) {
        StabKraus k;
        k.h = 1;
        k.proj.n = n;
        k.proj.generators.push_back({p, s});
        if (s < 0) k.circuit = on_minus;
        ch.kraus_part.push_back({0.5, k});
    }
    return ch;
}

DyadicDecomposition single_dyad(const StabState &L, const StabState &R, std::complex<double> alpha) {
    DyadicDecomposition d;
    d.n = L.num_qubits();
    d.terms.push_back({alpha, {L, R}});
    return d;
}

DyadicDecomposition dyadic_decompose_product(const std::vector<BlochState> &states) {
    if (states.empty()) throw std::invalid_argument("empty product state");
    DyadicDecomposition acc;
    bool first = true;
    for (const auto &b : states) {
        b.validate();
        std::vector<DyadTerm> local;
        EquimagicalDecomp eq = equimagical_decompose_any(b);
        for (const auto &[p, part] : eq.parts) {
            PureDecomposition pd = extent_pure_1q(part);
            for (size_t a = 0; a < pd.terms.size(); a++)
                for (size_t c = 0; c < pd.terms.size(); c++)
                    local.push_back({p * pd.coeffs[a] * std::conj(pd.coeffs[c]), {pd.terms[a], pd.terms[c]}});
        }
        if (first) {
            acc.n = 1;
            acc.terms = local;
            first = false;
            continue;
        }
        DyadicDecomposition next;
        next.n = acc.n + 1;
        for (const auto &t : acc.terms)
            for (const auto &u : local)
                next.terms.push_back({t.alpha * u.alpha,
                                      {StabState::tensor(t.dyad.L, u.dyad.L), StabState::tensor(t.dyad.R, u.dyad.R)}});
        acc = std::move(next);
    }
    return acc;
}

}  // namespace magicsim
