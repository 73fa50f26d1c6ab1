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

#include "magicsim/rank.h"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "magicsim/parallel.h"

namespace magicsim {

namespace {

using cd = std::complex<double>;

constexpr uint64_t kSparsifyStream = 0x72616e6b;  // "rank"
constexpr size_t kMaxProductTerms = size_t{1} << 20;

size_t draw_index(const std::vector<double> &cdf, std::mt19937_64 &rng) {
    double u = uniform01(rng) * cdf.back();
    size_t j = std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    return std::min(j, cdf.size() - 1);
}

uint64_t ceil_safe(double x) {
    if (!std::isfinite(x) || x > 1e18) throw std::overflow_error("requested sparsity is too large");
    double c = std::ceil(x - 1e-9 * std::max(1.0, x));
    return std::max<uint64_t>(1, (uint64_t)c);
}

// Rows are <phi_A| for every equatorial state of n <= 3 qubits, built once.
const DenseOp &equatorial_bras(int n) {
    static std::array<std::once_flag, 4> once;
    static std::array<DenseOp, 4> cache;
    if (n < 1 || n > 3) throw std::out_of_range("equatorial enumeration supports 1..3 qubits");
    std::call_once(once[n], [n] {
        uint64_t N = EquatorialMatrix::count(n);
        cache[n].resize((Eigen::Index)N, Eigen::Index{1} << n);
        for (uint64_t i = 0; i < N; i++)
            cache[n].row((Eigen::Index)i) = expand(StabState::equatorial(EquatorialMatrix::from_index(n, i))).adjoint();
    });
    return cache[n];
}

double median_of(std::vector<double> &v) {
    size_t m = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + m, v.end());
    double hi = v[m];
    if (v.size() % 2 == 1) return hi;
    double lo = *std::max_element(v.begin(), v.begin() + m);
    return 0.5 * (lo + hi);
}

}  // namespace

void SparseDecomposition::validate() const {
    if (terms.empty()) throw std::invalid_argument("empty sparse decomposition");
    if (coeffs.size() != terms.size()) throw std::invalid_argument("coefficient and term counts differ");
    for (size_t j = 0; j < terms.size(); j++) {
        if (terms[j].num_qubits() != n) throw std::invalid_argument("term size mismatch");
        if (terms[j].is_null()) throw std::invalid_argument("decomposition contains a null state");
        if (!std::isfinite(coeffs[j].real()) || !std::isfinite(coeffs[j].imag()))
            throw std::invalid_argument("non-finite coefficient");
    }
}

void compute_C(SparseDecomposition &d) {
    d.validate();
    size_t m = d.terms.size();
    d.l1 = 0;
    for (const auto &c : d.coeffs) d.l1 += std::abs(c);
    std::vector<cd> ov(m, 0.0);  // <psi|phi_j>
    for (size_t j = 0; j < m; j++) {
        for (size_t i = 0; i < m; i++) {
            cd g = i == j ? cd(d.terms[i].norm2(), 0) : inner_product(d.terms[i], d.terms[j]);
            ov[j] += std::conj(d.coeffs[i]) * g;
        }
    }
    double norm2 = 0, s = 0;
    for (size_t j = 0; j < m; j++) {
        norm2 += (d.coeffs[j] * ov[j]).real();
        s += std::abs(d.coeffs[j]) * std::norm(ov[j]);
    }
    if (std::abs(norm2 - 1.0) > 1e-8) throw std::invalid_argument("decomposed state is not normalized");
    d.C = d.l1 * s;
    d.delta_c = 8.0 * (d.C - 1.0) / (d.l1 * d.l1);
}

SparseDecomposition sparse_decompose_product(const std::vector<BlochState> &pure_states) {
    if (pure_states.empty()) throw std::invalid_argument("empty product state");
    if ((int)pure_states.size() > kMaxQubits) throw std::out_of_range("too many qubits");
    SparseDecomposition d;
    d.n = 0;
    d.coeffs = {cd(1, 0)};
    d.terms = {StabState()};
    bool first = true;
    for (const auto &b : pure_states) {
        PureDecomposition pd = extent_pure_1q(b);
        if (d.terms.size() * pd.terms.size() > kMaxProductTerms) throw std::out_of_range("product decomposition too large");
        std::vector<cd> nc;
        std::vector<StabState> nt;
        for (size_t i = 0; i < d.terms.size(); i++) {
            for (size_t a = 0; a < pd.terms.size(); a++) {
                nc.push_back(d.coeffs[i] * pd.coeffs[a]);
                nt.push_back(first ? pd.terms[a] : StabState::tensor(d.terms[i], pd.terms[a]));
            }
        }
        first = false;
        d.coeffs = std::move(nc);
        d.terms = std::move(nt);
        d.n++;
    }
    compute_C(d);
    return d;
}

ProductDiagnostics product_diagnostics(const std::vector<BlochState> &pure_states) {
    ProductDiagnostics r;
    for (const auto &b : pure_states) {
        PureDecomposition pd = extent_pure_1q(b);
        DenseVec psi = b.pure_vector();
        double l1 = 0, s = 0;
        for (size_t a = 0; a < pd.terms.size(); a++) {
            l1 += std::abs(pd.coeffs[a]);
            s += std::abs(pd.coeffs[a]) * std::norm(psi.dot(expand(pd.terms[a])));
        }
        r.l1 *= l1;
        r.C *= l1 * s;
    }
    r.delta_c = 8.0 * (r.C - 1.0) / (r.l1 * r.l1);
    return r;
}

cd SparseVector::overlap(const StabState &phi) const {
    cd acc = 0;
    for (size_t a = 0; a < terms.size(); a++) {
        if (terms[a].is_null()) continue;
        acc += (double)counts[a] * phases[a] * inner_product(phi, terms[a]);
    }
    return prefactor * acc;
}

double SparseVector::norm2() const {
    double acc = 0;
    for (size_t a = 0; a < terms.size(); a++) {
        if (terms[a].is_null()) continue;
        double ca = (double)counts[a];
        acc += ca * ca * terms[a].norm2();
        for (size_t b = a + 1; b < terms.size(); b++) {
            if (terms[b].is_null()) continue;
            cd g = std::conj(phases[a]) * phases[b] * inner_product(terms[a], terms[b]);
            acc += 2.0 * ca * (double)counts[b] * g.real();
        }
    }
    return prefactor * prefactor * std::max(acc, 0.0);
}

DenseVec SparseVector::dense() const {
    DenseVec v = DenseVec::Zero(Eigen::Index{1} << n);
    for (size_t a = 0; a < terms.size(); a++) {
        if (terms[a].is_null()) continue;
        v += (prefactor * (double)counts[a]) * phases[a] * expand(terms[a]);
    }
    return v;
}

SparseVector SparseVector::projected(uint64_t bits, int w) const {
    if (w < 0 || w > n) throw std::out_of_range("projection width out of range");
    SparseVector out = *this;
    for (auto &t : out.terms) {
        for (int i = 0; i < w && !t.is_null(); i++)
            t.project_inplace(PauliOp::single(n, i, 'Z'), ((bits >> i) & 1) ? -1 : +1);
    }
    return out;
}

SparseVector SparseVector::scaled(double s) const {
    SparseVector out = *this;
    out.prefactor *= s;
    return out;
}

SparseVector SparseVector::applied(const Circuit &c) const {
    check_circuit(c, n);
    SparseVector out = *this;
    for (auto &t : out.terms)
        if (!t.is_null()) t.apply_inplace(c);
    return out;
}

SparseVector sparsify(const SparseDecomposition &d, uint64_t k, std::mt19937_64 &rng) {
    if (d.terms.empty()) throw std::invalid_argument("empty sparse decomposition");
    if (k < 1) throw std::invalid_argument("sparsity k must be at least 1");
    std::vector<double> cdf(d.coeffs.size());
    double l1 = 0;
    for (size_t j = 0; j < d.coeffs.size(); j++) {
        l1 += std::abs(d.coeffs[j]);
        cdf[j] = l1;
    }
    std::vector<uint64_t> hits(d.coeffs.size(), 0);
    for (uint64_t a = 0; a < k; a++) hits[draw_index(cdf, rng)]++;
    SparseVector v;
    v.n = d.n;
    v.k = k;
    v.prefactor = l1 / (double)k;
    for (size_t j = 0; j < hits.size(); j++) {
        if (!hits[j]) continue;
        v.terms.push_back(d.terms[j]);
        v.phases.push_back(d.coeffs[j] / std::abs(d.coeffs[j]));
        v.counts.push_back(hits[j]);
        v.source.push_back(j);
    }
    return v;
}

EquatorialMatrix random_equatorial(int n, std::mt19937_64 &rng) {
    EquatorialMatrix A = EquatorialMatrix::zeros(n);
    for (int j = 0; j < n; j++) A.diag[j] = (uint8_t)(rng() >> 62);
    for (int i = 0; i < n; i++) {
        for (int j = i + 1; j < n; j++) {
            if (rng() >> 63) {
                A.adj[i] |= uint64_t{1} << j;
                A.adj[j] |= uint64_t{1} << i;
            }
        }
    }
    return A;
}

FastNormCounts fast_norm_counts(double epsilon, double p_fail) {
    if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("FastNorm epsilon must be in (0,1)");
    if (!(p_fail > 0 && p_fail < 1)) throw std::invalid_argument("FastNorm failure probability must be in (0,1)");
    FastNormCounts c;
    c.batches = ceil_safe(8.0 * std::log(2.0 / p_fail));
    c.batch_size = ceil_safe(4.0 / (epsilon * epsilon));
    return c;
}

double fast_norm(const SparseVector &v, const FastNormOptions &opts, std::mt19937_64 &rng) {
    FastNormCounts cnt = fast_norm_counts(opts.epsilon, opts.p_fail);
    if (opts.mode == NormMode::Exact) return v.norm2();
    bool live = false;
    for (const auto &t : v.terms) live |= !t.is_null();
    if (!live) return 0.0;
    NormMode mode = opts.mode;
    if (mode == NormMode::Auto) mode = v.n <= 3 ? NormMode::Enumerated : NormMode::Sampled;
    const double scale = std::ldexp(1.0, v.n);
    std::vector<double> means(cnt.batches);

    if (mode == NormMode::Enumerated) {
        // With at most 8 amplitudes the overlaps are cheapest as one small
        // matrix-vector product.
        DenseVec ov = equatorial_bras(v.n) * v.dense();
        std::vector<double> eta(ov.size());
        for (Eigen::Index a = 0; a < ov.size(); a++) eta[a] = scale * std::norm(ov(a));
        // Batch sums only depend on how often each distinct value is hit, so
        // draw those counts from the multinomial directly.
        std::sort(eta.begin(), eta.end());
        std::vector<std::pair<double, double>> cells;  // value, probability
        double tol = 1e-12 * std::max(1.0, eta.back());
        for (double e : eta) {
            if (!cells.empty() && e - cells.back().first <= tol)
                cells.back().second += 1.0;
            else
                cells.push_back({e, 1.0});
        }
        for (auto &c : cells) c.second /= (double)eta.size();
        for (uint64_t b = 0; b < cnt.batches; b++) {
            uint64_t left = cnt.batch_size;
            double mass = 1.0, sum = 0;
            for (size_t c = 0; c < cells.size() && left > 0; c++) {
                uint64_t x = left;
                if (c + 1 < cells.size()) {
                    double p = std::clamp(cells[c].second / mass, 0.0, 1.0);
                    x = std::binomial_distribution<uint64_t>(left, p)(rng);
                }
                sum += (double)x * cells[c].first;
                left -= x;
                mass -= cells[c].second;
            }
            means[b] = sum / (double)cnt.batch_size;
        }
    } else {
        for (uint64_t b = 0; b < cnt.batches; b++) {
            KahanSum s;
            for (uint64_t i = 0; i < cnt.batch_size; i++) {
                StabState phi = StabState::equatorial(random_equatorial(v.n, rng));
                s.add(scale * std::norm(v.overlap(phi)));
            }
            means[b] = s.sum / (double)cnt.batch_size;
        }
    }
    return median_of(means);
}

void MixedInput::validate() const {
    if (ensemble.empty()) throw std::invalid_argument("empty ensemble");
    if (probs.size() != ensemble.size()) throw std::invalid_argument("ensemble weights and members differ in count");
    double tot = 0;
    for (double p : probs) {
        if (!(p >= 0) || !std::isfinite(p)) throw std::invalid_argument("ensemble weights must be nonnegative");
        tot += p;
    }
    if (std::abs(tot - 1.0) > 1e-9) throw std::invalid_argument("ensemble weights must sum to 1");
    for (const auto &d : ensemble) {
        if (d.n != n) throw std::invalid_argument("ensemble member size mismatch");
        d.validate();
    }
}

double MixedInput::D() const {
    double D = 0;
    for (const auto &d : ensemble) D = std::max(D, d.D());
    return D;
}

DenseOp MixedInput::density() const {
    check_dense_size(n);
    Eigen::Index dim = Eigen::Index{1} << n;
    DenseOp rho = DenseOp::Zero(dim, dim);
    for (size_t j = 0; j < ensemble.size(); j++) {
        DenseVec psi = DenseVec::Zero(dim);
        for (size_t r = 0; r < ensemble[j].terms.size(); r++) psi += ensemble[j].coeffs[r] * expand(ensemble[j].terms[r]);
        rho += probs[j] * psi * psi.adjoint();
    }
    return rho;
}

MixedInput mixed_input_product(const std::vector<BlochState> &states) {
    if (states.empty()) throw std::invalid_argument("empty product state");
    std::vector<EquimagicalDecomp> parts;
    size_t total = 1;
    for (const auto &b : states) {
        b.validate();
        parts.push_back(equimagical_decompose_any(b));
        total *= parts.back().parts.size();
        if (total > 4096) throw std::out_of_range("ensemble too large");
    }
    MixedInput in;
    in.n = (int)states.size();
    for (size_t m = 0; m < total; m++) {
        size_t r = m;
        double p = 1;
        std::vector<BlochState> pure;
        for (size_t q = 0; q < states.size(); q++) {
            size_t i = r % parts[q].parts.size();
            r /= parts[q].parts.size();
            p *= parts[q].parts[i].first;
            pure.push_back(parts[q].parts[i].second);
        }
        if (p <= 0) continue;
        in.probs.push_back(p);
        in.ensemble.push_back(sparse_decompose_product(pure));
    }
    double tot = 0;
    for (double p : in.probs) tot += p;
    for (double &p : in.probs) p /= tot;
    in.Xi_tilde = 0;
    double lo = 1e300, hi = 0;
    for (size_t j = 0; j < in.probs.size(); j++) {
        double s = in.ensemble[j].l1 * in.ensemble[j].l1;
        in.Xi_tilde += in.probs[j] * s;
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    in.equimagical = hi - lo <= 1e-8;
    return in;
}

uint64_t sparsity_for(double l1_sq, double delta, double D, bool *sharpened) {
    if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
    bool sharp = delta < 24.0 * D;
    if (sharpened) *sharpened = sharp;
    if (!sharp) return ceil_safe(12.0 * l1_sq / delta);
    double dS = delta / 3.0;
    return ceil_safe(4.0 * l1_sq * (D / (dS * dS) + 1.0 / dS));
}

StringDraw sample_from_vector(const SparseVector &omega_raw, int w, const FastNormOptions &fn, std::mt19937_64 &rng) {
    if (w < 1 || w > omega_raw.n) throw std::invalid_argument("bit count must satisfy 1 <= w <= n");
    StringDraw out;
    double W = fast_norm(omega_raw, fn, rng);
    out.fastnorm_calls++;
    if (!(W > 0)) throw std::runtime_error("sparsified vector has zero estimated norm");
    SparseVector omega = omega_raw.scaled(1.0 / std::sqrt(W));
    double Px = 1.0;
    uint64_t x = 0;
    for (int b = 0; b < w; b++) {
        double P0 = Px > 0 ? fast_norm(omega.projected(x, b + 1), fn, rng) / Px : 0.0;
        out.fastnorm_calls++;
        double P1;
        if (P0 < 0.5) {
            P1 = 1.0 - P0;
        } else {
            P1 = Px > 0 ? fast_norm(omega.projected(x | (uint64_t{1} << b), b + 1), fn, rng) / Px : 0.0;
            out.fastnorm_calls++;
            P0 = 1.0 - P1;
        }
        P0 = std::clamp(P0, 0.0, 1.0);
        P1 = 1.0 - P0;
        int bit = uniform01(rng) < P0 ? 0 : 1;
        x |= (uint64_t)bit << b;
        Px *= bit ? P1 : P0;
    }
    out.bits = x;
    out.probability = Px;
    return out;
}

std::string bits_to_string(uint64_t bits, int w) {
    std::string s(w, '0');
    for (int i = 0; i < w; i++)
        if ((bits >> i) & 1) s[i] = '1';
    return s;
}

SampleResult sample_bitstrings(const MixedInput &input, const SampleOptions &opts) {
    input.validate();
    if (opts.w < 1 || opts.w > input.n) throw std::invalid_argument("bit count must satisfy 1 <= w <= n");
    if (!(opts.delta > 0 && opts.delta < 1)) throw std::invalid_argument("delta must be in (0,1)");
    if (!(opts.p_fail > 0 && opts.p_fail < 1)) throw std::invalid_argument("p_fail must be in (0,1)");
    if (opts.count < 1) throw std::invalid_argument("count must be at least 1");
    check_circuit(opts.prefix, input.n);
    auto t0 = std::chrono::steady_clock::now();

    SampleResult res;
    RuntimeReport &rep = res.report;
    rep.D = input.D();
    rep.Xi_tilde = input.Xi_tilde;
    rep.delta_S = opts.delta / 3.0;
    rep.epsilon = 2.0 * opts.delta / 3.0;
    rep.epsilon_FN = rep.epsilon / (3.0 * opts.w);
    rep.p_FN = opts.p_fail / (2.0 * opts.w);
    rep.workers = resolve_workers(opts.workers);
    bool sharp = false;
    sparsity_for(1.0, opts.delta, rep.D, &sharp);
    rep.regime = sharp ? "sharpened" : "standard";

    FastNormOptions fn{rep.epsilon_FN, rep.p_FN, opts.norm_mode};
    fast_norm_counts(fn.epsilon, fn.p_fail);
    std::vector<double> cdf(input.probs.size());
    double acc = 0;
    for (size_t j = 0; j < cdf.size(); j++) cdf[j] = acc += input.probs[j];

    res.strings.resize(opts.count);
    res.k_used.resize(opts.count);
    std::vector<uint64_t> calls(opts.count);
    const uint64_t per_chunk = 256;
    uint64_t chunks = (opts.count + per_chunk - 1) / per_chunk;
    parallel_chunks(chunks, rep.workers, [&](uint64_t c) {
        uint64_t end = std::min(opts.count, (c + 1) * per_chunk);
        for (uint64_t i = c * per_chunk; i < end; i++) {
            std::mt19937_64 rng = chunk_rng(opts.seed, kSparsifyStream, i);
            const SparseDecomposition &d = input.ensemble[draw_index(cdf, rng)];
            uint64_t k = sparsity_for(d.l1 * d.l1, opts.delta, rep.D);
            SparseVector omega = sparsify(d, k, rng);
            if (!opts.prefix.empty()) omega = omega.applied(opts.prefix);
            StringDraw s = sample_from_vector(omega, opts.w, fn, rng);
            res.strings[i] = bits_to_string(s.bits, opts.w);
            res.k_used[i] = k;
            calls[i] = s.fastnorm_calls;
        }
    });

    rep.k_min = *std::min_element(res.k_used.begin(), res.k_used.end());
    rep.k_max = *std::max_element(res.k_used.begin(), res.k_used.end());
    KahanSum ks;
    for (uint64_t k : res.k_used) ks.add((double)k);
    rep.k_mean = ks.sum / (double)opts.count;
    rep.k_constant = rep.k_min == rep.k_max;
    for (uint64_t c : calls) rep.fastnorm_calls += c;
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

double mean_norm2(double l1, uint64_t k) { return 1.0 + (l1 * l1 - 1.0) / (double)k; }

double variance_bound(double C, double l1, uint64_t k) {
    double K = (double)k;
    double K4 = K * K * K * K;
    double c4 = l1 * l1 * l1 * l1;
    return 4.0 * (K * K * K - 3 * K * K + 2 * K) / K4 * C + 2.0 * c4 / (K * K) * (1.0 - 1.0 / K) -
           (4 * K * K * K - 10 * K * K + 6 * K) / K4;
}

}  // namespace magicsim
