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

#include "magicsim/dyadic.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "magicsim/parallel.h"

namespace magicsim {

namespace {

constexpr uint64_t kChunk = 4096;
constexpr double kAbortTol = 1e-12;

struct Prepared {
    int n = 0;
    std::vector<double> cum;  // cumulative |alpha_j| / l1
    std::vector<std::complex<double>> phase;
    std::vector<Dyad> dyads;
    double l1 = 0;
};

Prepared prepare(const DyadicDecomposition &decomp) {
    if (decomp.terms.empty()) throw std::invalid_argument("empty dyadic decomposition");
    Prepared p;
    p.n = decomp.n;
    std::vector<double> w;
    for (const auto &t : decomp.terms) {
        if (t.dyad.L.num_qubits() != decomp.n || t.dyad.R.num_qubits() != decomp.n)
            throw std::invalid_argument("dyad size mismatch");
        if (t.dyad.L.is_null() || t.dyad.R.is_null()) throw std::invalid_argument("dyad contains a null state");
        double a = std::abs(t.alpha) * t.dyad.L.norm() * t.dyad.R.norm();
        if (a == 0.0) continue;
        w.push_back(a);
        p.phase.push_back(t.alpha / std::abs(t.alpha));
        p.dyads.push_back({t.dyad.L.normalized(), t.dyad.R.normalized()});
        p.l1 += a;
    }
    if (p.dyads.empty()) throw std::invalid_argument("dyadic decomposition has zero weight");
    double acc = 0;
    for (double x : w) {
        acc += x;
        p.cum.push_back(acc / p.l1);
    }
    p.cum.back() = 1.0;
    return p;
}

size_t pick(const std::vector<double> &cum, double u) {
    return (size_t)(std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
}

// Branch cumulative distribution; index == size means abort.
std::vector<double> cumulative(const std::vector<double> &probs) {
    std::vector<double> c(probs.size());
    double acc = 0;
    for (size_t i = 0; i < probs.size(); i++) {
        acc += probs[i];
        c[i] = acc;
    }
    return c;
}

struct Node {
    std::vector<double> cum;
    std::vector<int32_t> child;  // -1: impossible branch
    std::complex<double> value;  // leaves only
    bool leaf = false;
};

class Tree {
   public:
    Tree(const std::vector<SimulableChannel> &circ, const Measurement &m, size_t limit)
        : circ_(circ), meas_(m), limit_(limit) {}

    // Returns root index or -1 when the limit is exceeded.
    int32_t build(const Dyad &d, size_t t) {
        if (nodes_.size() >= limit_) return -1;
        int32_t id = (int32_t)nodes_.size();
        nodes_.emplace_back();
        if (t == circ_.size()) {
            nodes_[id].leaf = true;
            nodes_[id].value = meas_.dyad_trace(d.L, d.R);
            return id;
        }
        std::vector<double> probs = transition_probabilities(d, circ_[t]);
        std::vector<int32_t> kids(probs.size(), -1);
        for (size_t i = 0; i < probs.size(); i++) {
            if (probs[i] <= 0.0) continue;
            int32_t c = build(apply_branch(d, circ_[t], i), t + 1);
            if (c < 0) return -1;
            kids[i] = c;
        }
        nodes_[id].cum = cumulative(probs);
        nodes_[id].child = std::move(kids);
        return id;
    }

    const Node &node(int32_t i) const { return nodes_[i]; }
    size_t size() const { return nodes_.size(); }

   private:
    const std::vector<SimulableChannel> &circ_;
    const Measurement &meas_;
    size_t limit_;
    std::vector<Node> nodes_;
};

struct ChunkResult {
    KahanSum sum, sum2;
    double max_abs = 0;
    uint64_t aborted = 0;
};

}  // namespace

Measurement Measurement::projector(const StabProjector &p) {
    Measurement m;
    m.proj = p;
    m.validate();
    return m;
}

Measurement Measurement::observable(const PauliOp &p) {
    Measurement m;
    m.is_pauli = true;
    m.pauli = p;
    m.validate();
    return m;
}

void Measurement::validate() const {
    if (is_pauli) {
        if (!pauli.hermitian()) throw std::invalid_argument("observable must be a Hermitian Pauli");
    } else {
        proj.validate();
        if (proj.rank() < 0) throw std::invalid_argument("measurement projector is zero (contradictory generators)");
    }
}

std::complex<double> Measurement::dyad_trace(const StabState &L, const StabState &R) const {
    if (!is_pauli) {
        StabState pl = L;
        pl.project_inplace(proj);
        if (pl.is_null()) return 0.0;
        return inner_product(R, pl);
    }
    std::complex<double> acc = 0.0;
    for (int s : {+1, -1}) {
        StabState pl = L;
        pl.project_inplace(pauli, s);
        if (!pl.is_null()) acc += double(s) * inner_product(R, pl);
    }
    return acc;
}

std::vector<double> transition_probabilities(const Dyad &d, const SimulableChannel &ch) {
    std::vector<double> probs;
    probs.reserve(ch.num_terms());
    for (const auto &[p, c] : ch.unitary_part) probs.push_back(p);
    double total = ch.P_U();
    for (const auto &[q, k] : ch.kraus_part) {
        double pr = 0.0;
        if (q > 0) {
            double nl = d.L.projected(k.proj).second;
            double nr = nl > 0 ? d.R.projected(k.proj).second : 0.0;
            pr = q * std::ldexp(1.0, k.h) * nl * nr;
        }
        probs.push_back(pr);
        total += pr;
    }
    if (total > 1.0 + kAbortTol) throw std::runtime_error("invalid channel '" + ch.name + "': transition probabilities sum to " + std::to_string(total));
    return probs;
}

Dyad apply_branch(const Dyad &d, const SimulableChannel &ch, size_t choice) {
    Dyad out = d;
    if (choice < ch.unitary_part.size()) {
        const Circuit &c = ch.unitary_part[choice].second;
        out.L.apply_inplace(c);
        out.R.apply_inplace(c);
        return out;
    }
    size_t s = choice - ch.unitary_part.size();
    if (s >= ch.kraus_part.size()) throw std::out_of_range("branch index out of range");
    const StabKraus &k = ch.kraus_part[s].second;
    out.L.project_inplace(k.proj);
    out.R.project_inplace(k.proj);
    if (out.L.is_null() || out.R.is_null()) throw std::logic_error("selected a zero-probability Kraus branch");
    out.L.normalize_inplace();
    out.R.normalize_inplace();
    out.L.apply_inplace(k.circuit);
    out.R.apply_inplace(k.circuit);
    return out;
}

std::optional<Dyad> stabilizer_update(const Dyad &d, const SimulableChannel &ch, std::mt19937_64 &rng) {
    std::vector<double> cum = cumulative(transition_probabilities(d, ch));
    size_t i = pick(cum, uniform01(rng));
    if (i >= cum.size()) return std::nullopt;
    return apply_branch(d, ch, i);
}

uint64_t hoeffding_samples(double l1, double epsilon, double p_fail) {
    if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
    if (!(p_fail > 0 && p_fail < 1)) throw std::invalid_argument("p_fail must lie in (0,1)");
    double m = std::ceil(2.0 * l1 * l1 / (epsilon * epsilon) * std::log(2.0 / p_fail) - 1e-9);
    if (!(m < 1e15)) throw std::invalid_argument("required sample count is too large");
    return std::max<uint64_t>(1, (uint64_t)m);
}

namespace {

void check_circuit_list(int n, const std::vector<SimulableChannel> &circuit) {
    for (const auto &ch : circuit) {
        if (ch.n != n) throw std::invalid_argument("channel '" + ch.name + "' has the wrong qubit count");
        ch.validate();
    }
}

}  // namespace

EstimateReport estimate_born(const DyadicDecomposition &decomp, const std::vector<SimulableChannel> &circuit,
                             const Measurement &meas, const EstimateOptions &opts) {
    Prepared prep = prepare(decomp);
    if (meas.num_qubits() != prep.n) throw std::invalid_argument("measurement has the wrong qubit count");
    meas.validate();
    check_circuit_list(prep.n, circuit);

    EstimateReport rep;
    rep.epsilon = opts.epsilon;
    rep.p_fail = opts.p_fail;
    rep.seed = opts.seed;
    rep.workers = std::max(1, opts.workers);
    double scale = opts.l1_override >= 0 ? opts.l1_override : prep.l1;
    rep.per_sample_bound = scale;
    rep.M = opts.fixed_samples ? opts.fixed_samples : std::max(hoeffding_samples(scale, opts.epsilon, opts.p_fail), opts.min_samples);
    rep.num_dyads = (int)prep.dyads.size();
    rep.circuit_depth = (int)circuit.size();

    Tree tree(circuit, meas, opts.memo_node_limit);
    std::vector<int32_t> roots;
    bool memo = opts.memo_node_limit > 0;
    for (const auto &d : prep.dyads) {
        if (!memo) break;
        int32_t r = tree.build(d, 0);
        if (r < 0) {
            memo = false;
            break;
        }
        roots.push_back(r);
    }
    rep.memoized = memo;
    rep.memo_nodes = memo ? tree.size() : 0;

    const uint64_t chunks = (rep.M + kChunk - 1) / kChunk;
    std::vector<ChunkResult> results(chunks);
    parallel_chunks(chunks, rep.workers, [&](uint64_t c) {
        std::mt19937_64 rng = chunk_rng(opts.seed, 0x64796164ULL, c);
        uint64_t lo = c * kChunk, hi = std::min(rep.M, lo + kChunk);
        ChunkResult &res = results[c];
        for (uint64_t m = lo; m < hi; m++) {
            size_t j = pick(prep.cum, uniform01(rng));
            std::complex<double> val = 0.0;
            bool alive = true;
            if (memo) {
                int32_t id = roots[j];
                while (!tree.node(id).leaf) {
                    const Node &nd = tree.node(id);
                    size_t b = pick(nd.cum, uniform01(rng));
                    if (b >= nd.cum.size()) {
                        alive = false;
                        break;
                    }
                    id = nd.child[b];
                }
                if (alive) val = tree.node(id).value;
            } else {
                Dyad d = prep.dyads[j];
                for (const auto &ch : circuit) {
                    std::vector<double> cum = cumulative(transition_probabilities(d, ch));
                    size_t b = pick(cum, uniform01(rng));
                    if (b >= cum.size()) {
                        alive = false;
                        break;
                    }
                    d = apply_branch(d, ch, b);
                }
                if (alive) val = meas.dyad_trace(d.L, d.R);
            }
            double mu = 0.0;
            if (alive) {
                mu = scale * (prep.phase[j] * val).real();
            } else {
                res.aborted++;
            }
            res.sum.add(mu);
            res.sum2.add(mu * mu);
            res.max_abs = std::max(res.max_abs, std::abs(mu));
        }
    });
    KahanSum s, s2;
    for (const auto &r : results) {
        s.add(r.sum.sum);
        s2.add(r.sum2.sum);
        rep.max_abs_sample = std::max(rep.max_abs_sample, r.max_abs);
        rep.aborted += r.aborted;
    }
    double M = (double)rep.M;
    rep.mu_hat = s.sum / M;
    double var = rep.M > 1 ? std::max(0.0, (s2.sum - M * rep.mu_hat * rep.mu_hat) / (M - 1)) : 0.0;
    rep.std_error = std::sqrt(var / M);
    return rep;
}

double trajectory_expectation(const DyadicDecomposition &decomp, const std::vector<SimulableChannel> &circuit,
                              const Measurement &meas) {
    Prepared prep = prepare(decomp);
    check_circuit_list(prep.n, circuit);
    // E[mu] = sum_j |alpha_j| Re{e^{i theta_j} sum_paths P(path) value(path)}
    std::function<std::complex<double>(const Dyad &, size_t)> walk = [&](const Dyad &d, size_t t) -> std::complex<double> {
        if (t == circuit.size()) return meas.dyad_trace(d.L, d.R);
        std::vector<double> probs = transition_probabilities(d, circuit[t]);
        std::complex<double> acc = 0.0;
        for (size_t i = 0; i < probs.size(); i++)
            if (probs[i] > 0) acc += probs[i] * walk(apply_branch(d, circuit[t], i), t + 1);
        return acc;
    };
    double total = 0;
    double prev = 0;
    for (size_t j = 0; j < prep.dyads.size(); j++) {
        double w = (prep.cum[j] - prev) * prep.l1;
        prev = prep.cum[j];
        total += w * (prep.phase[j] * walk(prep.dyads[j], 0)).real();
    }
    return total;
}

}  // namespace magicsim
