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

#include "magicsim/spec_io.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace magicsim {

using nlohmann::json;

namespace {

std::string at(const std::string &path, const std::string &key) { return path + "/" + key; }
std::string at(const std::string &path, size_t i) { return path + "/" + std::to_string(i); }

void check_keys(const json &j, const std::string &path, std::initializer_list<const char *> allowed) {
    if (!j.is_object()) throw SpecError(path, "expected an object");
    for (const auto &[k, v] : j.items()) {
        bool ok = false;
        for (const char *a : allowed) ok |= k == a;
        if (!ok) throw SpecError(at(path, k), "unknown field '" + k + "'");
    }
}

const json &need(const json &j, const std::string &path, const char *key) {
    auto it = j.find(key);
    if (it == j.end()) throw SpecError(at(path, key), std::string("missing required field '") + key + "'");
    return *it;
}

double num(const json &j, const std::string &path) {
    if (!j.is_number()) throw SpecError(path, "expected a number");
    double v = j.get<double>();
    if (!std::isfinite(v)) throw SpecError(path, "expected a finite number");
    return v;
}

int integer(const json &j, const std::string &path) {
    if (!j.is_number_integer()) throw SpecError(path, "expected an integer");
    int64_t v = j.get<int64_t>();
    if (v < -(int64_t{1} << 30) || v > (int64_t{1} << 30)) throw SpecError(path, "integer out of range");
    return (int)v;
}

std::string str(const json &j, const std::string &path) {
    if (!j.is_string()) throw SpecError(path, "expected a string");
    return j.get<std::string>();
}

const json &arr(const json &j, const std::string &path) {
    if (!j.is_array()) throw SpecError(path, "expected an array");
    return j;
}

std::complex<double> complex_value(const json &j, const std::string &path) {
    if (j.is_number()) return {num(j, path), 0.0};
    if (j.is_array() && j.size() == 2) return {num(j[0], at(path, 0)), num(j[1], at(path, 1))};
    throw SpecError(path, "expected a number or a [re, im] pair");
}

// Runs f, relabelling library validation errors with the JSON path.
template <class F>
auto guarded(const std::string &path, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const SpecError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw SpecError(path, e.what());
    } catch (const std::out_of_range &e) {
        throw SpecError(path, e.what());
    }
}

PauliOp parse_pauli(const json &j, int n, const std::string &path) {
    std::string s = str(j, path);
    PauliOp p = guarded(path, [&] { return PauliOp::parse(s); });
    if (p.n != n) throw SpecError(path, "Pauli string length " + std::to_string(p.n) + " does not match " + std::to_string(n) + " qubits");
    if (!p.hermitian()) throw SpecError(path, "Pauli must be Hermitian");
    return p;
}

StabState parse_stab_state(const json &j, int n, const std::string &path) {
    check_keys(j, path, {"basis", "gates"});
    uint64_t bits = 0;
    if (j.contains("basis")) {
        std::string b = str(j["basis"], at(path, "basis"));
        if ((int)b.size() != n) throw SpecError(at(path, "basis"), "basis string must have one character per qubit");
        for (int i = 0; i < n; i++) {
            if (b[i] != '0' && b[i] != '1') throw SpecError(at(path, "basis"), "basis string must contain only 0 and 1");
            if (b[i] == '1') bits |= uint64_t{1} << i;
        }
    }
    StabState s = StabState::basis(n, bits);
    if (j.contains("gates")) s.apply_inplace(parse_gates(j["gates"], n, at(path, "gates")));
    return s;
}

int parse_qubits(const json &state, const std::string &path) {
    int n = integer(need(state, path, "qubits"), at(path, "qubits"));
    if (n < 1 || n > kMaxQubits) throw SpecError(at(path, "qubits"), "qubit count must be in 1..64");
    return n;
}

}  // namespace

const std::vector<std::string> &known_params() {
    static const std::vector<std::string> k = {"epsilon", "delta", "p_fail", "samples", "seed", "workers", "w", "c", "norm_mode"};
    return k;
}

BlochState parse_bloch(const json &j, const std::string &path) {
    BlochState b;
    if (j.is_string()) {
        b = guarded(path, [&] { return BlochState::named(j.get<std::string>()); });
    } else {
        check_keys(j, path, {"named", "bloch", "alpha"});
        bool has_named = j.contains("named"), has_bloch = j.contains("bloch");
        if (has_named == has_bloch) throw SpecError(path, "give exactly one of 'named' or 'bloch'");
        if (has_named) {
            std::string name = str(j["named"], at(path, "named"));
            b = guarded(at(path, "named"), [&] { return BlochState::named(name); });
        } else {
            const json &v = j["bloch"];
            if (!v.is_array() || v.size() != 3) throw SpecError(at(path, "bloch"), "expected [x, y, z]");
            b = {num(v[0], at(path, "bloch/0")), num(v[1], at(path, "bloch/1")), num(v[2], at(path, "bloch/2"))};
        }
        if (j.contains("alpha")) {
            double a = num(j["alpha"], at(path, "alpha"));
            b = guarded(at(path, "alpha"), [&] { return BlochState::noisy(b, a); });
        }
    }
    guarded(path, [&] { b.validate(); });
    return b;
}

Circuit parse_gates(const json &j, int n, const std::string &path) {
    arr(j, path);
    Circuit c;
    for (size_t i = 0; i < j.size(); i++) {
        std::string p = at(path, i);
        const json &g = j[i];
        if (!g.is_array() || g.size() < 2 || g.size() > 3) throw SpecError(p, "a gate is [name, qubit] or [name, qubit, qubit]");
        std::string name = str(g[0], at(p, 0));
        GateKind k = guarded(at(p, 0), [&] { return gate_kind_from_name(name); });
        Gate gate{k, integer(g[1], at(p, 1))};
        if (g.size() == 3) gate.q1 = integer(g[2], at(p, 2));
        if (gate.two_qubit() != (g.size() == 3)) throw SpecError(p, "wrong number of qubits for gate " + name);
        guarded(p, [&] { check_circuit({gate}, n); });
        c.push_back(gate);
    }
    return c;
}

namespace {

// Local-to-global qubit map of a channel; local index i is qubits[i].
struct Support {
    int n = 0;
    std::vector<int> qubits;

    int local() const { return (int)qubits.size(); }
    Circuit circuit(const Circuit &c) const {
        Circuit out = c;
        for (auto &g : out) {
            g.q0 = qubits[g.q0];
            if (g.q1 >= 0) g.q1 = qubits[g.q1];
        }
        return out;
    }
    PauliOp pauli(const PauliOp &p) const {
        PauliOp out = PauliOp::identity(n);
        out.phase_exp = p.phase_exp;
        for (int i = 0; i < local(); i++) {
            out.x |= ((p.x >> i) & 1) << qubits[i];
            out.z |= ((p.z >> i) & 1) << qubits[i];
        }
        return out;
    }
};

Support parse_support(const json &j, int n, const std::string &path) {
    Support s{n, {}};
    if (!j.contains("qubits")) {
        for (int q = 0; q < n; q++) s.qubits.push_back(q);
        return s;
    }
    const json &qs = arr(j["qubits"], at(path, "qubits"));
    if (qs.empty()) throw SpecError(at(path, "qubits"), "qubit list must not be empty");
    uint64_t seen = 0;
    for (size_t i = 0; i < qs.size(); i++) {
        int q = integer(qs[i], at(at(path, "qubits"), i));
        if (q < 0 || q >= n) throw SpecError(at(at(path, "qubits"), i), "qubit index out of range");
        if ((seen >> q) & 1) throw SpecError(at(at(path, "qubits"), i), "repeated qubit index");
        seen |= uint64_t{1} << q;
        s.qubits.push_back(q);
    }
    return s;
}

// "+XZ", "-ZZ" or {"pauli": "XZ", "sign": -1}
std::pair<PauliOp, int> parse_generator(const json &j, const Support &sup, const std::string &path) {
    PauliOp op;
    int sign = 1;
    if (j.is_string()) {
        std::string t = j.get<std::string>();
        op = guarded(path, [&] { return PauliOp::parse(t); });
        if (!op.hermitian()) throw SpecError(path, "generator must be Hermitian");
        sign = op.phase_exp == 2 ? -1 : 1;
        op.phase_exp = 0;
    } else {
        check_keys(j, path, {"pauli", "sign"});
        std::string t = str(need(j, path, "pauli"), at(path, "pauli"));
        op = guarded(at(path, "pauli"), [&] { return PauliOp::parse(t); });
        if (op.phase_exp != 0) throw SpecError(at(path, "pauli"), "put the sign in 'sign'");
        if (j.contains("sign")) sign = integer(j["sign"], at(path, "sign"));
        if (sign != 1 && sign != -1) throw SpecError(at(path, "sign"), "sign must be +1 or -1");
    }
    if (op.n != sup.local()) throw SpecError(path, "generator length must equal the channel's qubit count");
    if (op.weight() == 0) throw SpecError(path, "identity is not a valid generator");
    return {sup.pauli(op), sign};
}

StabProjector parse_generators(const json &j, const Support &sup, const std::string &path) {
    arr(j, path);
    StabProjector proj;
    proj.n = sup.n;
    for (size_t i = 0; i < j.size(); i++) proj.generators.push_back(parse_generator(j[i], sup, at(path, i)));
    guarded(path, [&] { proj.validate(); });
    if (proj.rank() < 0) throw SpecError(path, "projector generators are contradictory");
    return proj;
}

// [[p, gates], ...] in local indices
std::vector<std::pair<double, Circuit>> parse_weighted(const json &j, const Support &sup, const std::string &path) {
    arr(j, path);
    std::vector<std::pair<double, Circuit>> mix;
    for (size_t i = 0; i < j.size(); i++) {
        std::string p = at(path, i);
        if (!j[i].is_array() || j[i].size() != 2) throw SpecError(p, "expected [p, gates]");
        mix.push_back({num(j[i][0], at(p, 0)), sup.circuit(parse_gates(j[i][1], sup.local(), at(p, 1)))});
    }
    return mix;
}

}  // namespace

SimulableChannel parse_channel(const json &j, int n, const std::string &path) {
    if (!j.is_object()) throw SpecError(path, "expected an object");
    Support sup = parse_support(j, n, path);
    SimulableChannel ch;
    if (!j.contains("type")) {
        check_keys(j, path, {"qubits", "unitary", "kraus"});
        if (!j.contains("unitary") && !j.contains("kraus")) throw SpecError(path, "channel needs 'type', or 'unitary'/'kraus'");
        ch.n = n;
        ch.name = "explicit";
        if (j.contains("unitary")) ch.unitary_part = parse_weighted(j["unitary"], sup, at(path, "unitary"));
        if (j.contains("kraus")) {
            const json &ks = arr(j["kraus"], at(path, "kraus"));
            for (size_t i = 0; i < ks.size(); i++) {
                std::string p = at(at(path, "kraus"), i);
                if (!ks[i].is_array() || ks[i].size() != 4) throw SpecError(p, "expected [q, h, generators, gates]");
                double q = num(ks[i][0], at(p, 0));
                int h = integer(ks[i][1], at(p, 1));
                StabKraus k;
                k.proj = parse_generators(ks[i][2], sup, at(p, 2));
                k.h = k.proj.rank();
                if (h != k.h) throw SpecError(at(p, 1), "h must equal the number of independent generators (" + std::to_string(k.h) + ")");
                k.circuit = sup.circuit(parse_gates(ks[i][3], sup.local(), at(p, 3)));
                ch.kraus_part.push_back({q, k});
            }
        }
        guarded(path, [&] { ch.validate(); });
        return ch;
    }
    check_keys(j, path, {"type", "qubits", "params"});
    std::string type = str(j["type"], at(path, "type"));
    static const json empty = json::object();
    const json &pr = j.contains("params") ? j["params"] : empty;
    std::string pp = at(path, "params");
    auto need_width = [&](int w) {
        if (sup.local() != w)
            throw SpecError(at(path, "qubits"), "'" + type + "' acts on exactly " + std::to_string(w) + " qubit(s)");
    };
    if (type == "clifford") {
        check_keys(pr, pp, {"gates"});
        ch = clifford_channel(n, sup.circuit(parse_gates(need(pr, pp, "gates"), sup.local(), at(pp, "gates"))));
    } else if (type == "clifford_mix") {
        check_keys(pr, pp, {"mix"});
        auto mix = parse_weighted(need(pr, pp, "mix"), sup, at(pp, "mix"));
        ch = guarded(at(pp, "mix"), [&] { return clifford_mix_channel(n, mix); });
    } else if (type == "depolarizing") {
        need_width(1);
        check_keys(pr, pp, {"lambda"});
        double l = num(need(pr, pp, "lambda"), at(pp, "lambda"));
        ch = guarded(at(pp, "lambda"), [&] { return depolarizing_channel(n, sup.qubits[0], l); });
    } else if (type == "t_gadget") {
        need_width(2);
        check_keys(pr, pp, {"ancilla_state"});
        std::string st = pr.contains("ancilla_state") ? str(pr["ancilla_state"], at(pp, "ancilla_state")) : "H";
        if (st != "H" && st != "T") throw SpecError(at(pp, "ancilla_state"), "ancilla_state must be H or T");
        ch = guarded(path, [&] { return t_gadget_channel(n, sup.qubits[0], sup.qubits[1], st == "T"); });
    } else if (type == "pauli_measure" || type == "pauli_measure_and_forward") {
        check_keys(pr, pp, {"pauli", "on_minus"});
        auto [op, sign] = parse_generator(need(pr, pp, "pauli"), sup, at(pp, "pauli"));
        if (sign != 1) throw SpecError(at(pp, "pauli"), "give the Pauli without a sign");
        Circuit fix = pr.contains("on_minus") ? sup.circuit(parse_gates(pr["on_minus"], sup.local(), at(pp, "on_minus"))) : Circuit{};
        ch = guarded(path, [&] { return pauli_measure_channel(n, op, fix); });
    } else {
        throw SpecError(at(path, "type"), "unknown channel type '" + type + "'");
    }
    guarded(path, [&] { ch.validate(); });
    return ch;
}

Measurement parse_measurement(const json &j, int n, const std::string &path) {
    check_keys(j, path, {"pauli", "projector", "bits"});
    if (j.size() != 1) throw SpecError(path, "give exactly one of 'pauli', 'projector' or 'bits'");
    Measurement m;
    if (j.contains("pauli")) {
        PauliOp p = parse_pauli(j["pauli"], n, at(path, "pauli"));
        m = Measurement::observable(p);
    } else if (j.contains("projector")) {
        Support all{n, {}};
        for (int q = 0; q < n; q++) all.qubits.push_back(q);
        if (!j["projector"].is_array() || j["projector"].empty())
            throw SpecError(at(path, "projector"), "projector needs at least one generator");
        m = Measurement::projector(parse_generators(j["projector"], all, at(path, "projector")));
    } else {
        std::string b = str(j["bits"], at(path, "bits"));
        if (b.empty() || (int)b.size() > n) throw SpecError(at(path, "bits"), "bit string must have 1..n characters");
        uint64_t bits = 0;
        for (size_t i = 0; i < b.size(); i++) {
            if (b[i] != '0' && b[i] != '1') throw SpecError(at(path, "bits"), "bit string must contain only 0 and 1");
            if (b[i] == '1') bits |= uint64_t{1} << i;
        }
        m = Measurement::projector(StabProjector::prefix(n, (int)b.size(), bits));
    }
    guarded(path, [&] { m.validate(); });
    return m;
}

ProblemSpec parse_problem(const json &j) {
    check_keys(j, "", {"$comment", "description", "state", "circuit", "measurement", "prefix", "params"});
    if (j.contains("description")) str(j["description"], "/description");
    if (j.contains("$comment")) str(j["$comment"], "/$comment");
    ProblemSpec p;
    const json &st = need(j, "", "state");
    const std::string sp = "/state";
    if (!st.is_object()) throw SpecError(sp, "expected an object");
    int kinds = (int)st.contains("product") + (int)st.contains("dyads") + (int)st.contains("ensemble");
    if (kinds != 1) throw SpecError(sp, "give exactly one of 'product', 'dyads' or 'ensemble'");
    if (st.contains("product")) {
        check_keys(st, sp, {"product"});
        const json &pr = arr(st["product"], at(sp, "product"));
        if (pr.empty() || pr.size() > (size_t)kMaxQubits) throw SpecError(at(sp, "product"), "product needs 1..64 qubits");
        for (size_t i = 0; i < pr.size(); i++) p.product.push_back(parse_bloch(pr[i], at(at(sp, "product"), i)));
        p.n = (int)p.product.size();
        p.kind = StateKind::Product;
    } else if (st.contains("dyads")) {
        check_keys(st, sp, {"qubits", "dyads"});
        p.n = parse_qubits(st, sp);
        p.kind = StateKind::Dyads;
        p.dyads.n = p.n;
        const json &ds = arr(st["dyads"], at(sp, "dyads"));
        for (size_t i = 0; i < ds.size(); i++) {
            std::string q = at(at(sp, "dyads"), i);
            check_keys(ds[i], q, {"alpha", "L", "R"});
            DyadTerm t{complex_value(need(ds[i], q, "alpha"), at(q, "alpha")),
                       {parse_stab_state(need(ds[i], q, "L"), p.n, at(q, "L")),
                        parse_stab_state(need(ds[i], q, "R"), p.n, at(q, "R"))}};
            p.dyads.terms.push_back(t);
        }
        guarded(at(sp, "dyads"), [&] { p.dyads.validate(); });
    } else {
        check_keys(st, sp, {"qubits", "ensemble"});
        p.n = parse_qubits(st, sp);
        p.kind = StateKind::Ensemble;
        const json &es = arr(st["ensemble"], at(sp, "ensemble"));
        p.ensemble.n = p.n;
        for (size_t i = 0; i < es.size(); i++) {
            std::string q = at(at(sp, "ensemble"), i);
            check_keys(es[i], q, {"p", "terms"});
            SparseDecomposition d;
            d.n = p.n;
            const json &ts = arr(need(es[i], q, "terms"), at(q, "terms"));
            for (size_t r = 0; r < ts.size(); r++) {
                std::string tp = at(at(q, "terms"), r);
                check_keys(ts[r], tp, {"c", "state"});
                d.coeffs.push_back(complex_value(need(ts[r], tp, "c"), at(tp, "c")));
                d.terms.push_back(parse_stab_state(need(ts[r], tp, "state"), p.n, at(tp, "state")));
            }
            guarded(q, [&] { compute_C(d); });
            p.ensemble.probs.push_back(num(need(es[i], q, "p"), at(q, "p")));
            p.ensemble.ensemble.push_back(std::move(d));
        }
        guarded(at(sp, "ensemble"), [&] { p.ensemble.validate(); });
        double lo = 1e300, hi = 0;
        p.ensemble.Xi_tilde = 0;
        for (size_t i = 0; i < p.ensemble.ensemble.size(); i++) {
            double s = p.ensemble.ensemble[i].l1 * p.ensemble.ensemble[i].l1;
            p.ensemble.Xi_tilde += p.ensemble.probs[i] * s;
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        p.ensemble.equimagical = hi - lo <= 1e-8;
    }
    if (j.contains("circuit")) {
        const json &c = arr(j["circuit"], "/circuit");
        for (size_t i = 0; i < c.size(); i++) p.circuit.push_back(parse_channel(c[i], p.n, at("/circuit", i)));
    }
    if (j.contains("measurement")) p.measurement = parse_measurement(j["measurement"], p.n, "/measurement");
    if (j.contains("prefix")) p.prefix = parse_gates(j["prefix"], p.n, "/prefix");
    if (j.contains("params")) {
        const json &pr = j["params"];
        if (!pr.is_object()) throw SpecError("/params", "expected an object");
        for (const auto &[k, v] : pr.items()) {
            const auto &kp = known_params();
            if (std::find(kp.begin(), kp.end(), k) == kp.end()) throw SpecError("/params/" + k, "unknown field '" + k + "'");
            if (k == "norm_mode") str(v, "/params/" + k);
            else num(v, "/params/" + k);
        }
        p.params = pr;
    }
    return p;
}

ProblemSpec load_problem(const std::string &file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open input file '" + file + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error &e) {
        throw SpecError("", std::string("malformed JSON: ") + e.what());
    }
    return parse_problem(j);
}

DyadicDecomposition problem_dyads(const ProblemSpec &p) {
    switch (p.kind) {
        case StateKind::Product: return dyadic_decompose_product(p.product);
        case StateKind::Dyads: return p.dyads;
        case StateKind::Ensemble: {
            DyadicDecomposition d;
            d.n = p.n;
            for (size_t j = 0; j < p.ensemble.ensemble.size(); j++) {
                const auto &e = p.ensemble.ensemble[j];
                for (size_t a = 0; a < e.terms.size(); a++)
                    for (size_t b = 0; b < e.terms.size(); b++)
                        d.terms.push_back({p.ensemble.probs[j] * e.coeffs[a] * std::conj(e.coeffs[b]), {e.terms[a], e.terms[b]}});
            }
            return d;
        }
    }
    throw std::logic_error("unreachable");
}

MixedInput problem_mixed_input(const ProblemSpec &p) {
    if (p.kind == StateKind::Product) return guarded("/state", [&] { return mixed_input_product(p.product); });
    if (p.kind == StateKind::Ensemble) return p.ensemble;
    throw SpecError("/state", "bit-string sampling needs a 'product' or 'ensemble' state");
}

RobustnessPair problem_robustness_pair(const ProblemSpec &p) {
    if (p.kind != StateKind::Product) throw SpecError("/state", "the constrained simulator needs a 'product' state");
    return robustness_pair_product(p.product);
}

}  // namespace magicsim
