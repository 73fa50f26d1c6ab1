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

// Acceptance checks.  With no argument every criterion runs and prints one
// line; with a number only that criterion runs.  Exit status is nonzero if
// any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "fixtures.h"
#include "magicsim/constrained.h"
#include "magicsim/distill.h"
#include "magicsim/rank.h"
#include "random_programs.h"

using namespace magicsim;
using magicsim::testing::random_bloch_state;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string f(const char *fmt, ...) __attribute__((format(printf, 1, 2)));
std::string f(const char *fmt, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    return buf;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome stabilizer_core() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240101);
    double worst = 0;
    int gates = 0, projs = 0;
    for (int i = 0; i < 1000; i++) {
        auto r = testing::run_random_program(rng, 1 + i % 5, 60, 10);
        worst = std::max({worst, r.max_state_err, r.max_norm_err, r.max_inner_err});
        gates += r.gates;
        projs += r.projections;
    }
    double secs = elapsed(t0);
    return {worst <= 1e-10 && secs < 60,
            f("1000 programs, %d gates, %d projections, max deviation %.2e, %.1f s", gates, projs, worst, secs)};
}

Outcome dyadic_estimator() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(77);
    const int reps = 200;
    const double eps = 0.02, pf = 0.05;
    const double limit = pf + 3 * std::sqrt(pf * (1 - pf) / reps);
    int total_fail = 0, worst_fixture = 0;
    bool ok = true;
    for (int i = 0; i < 20; i++) {
        auto fx = testing::make_dyadic_fixture(rng, i);
        int fails = 0;
        for (int r = 0; r < reps; r++) {
            EstimateOptions o;
            o.epsilon = eps;
            o.p_fail = pf;
            o.seed = 1000003ULL * i + r;
            o.workers = resolve_workers(0);
            EstimateReport rep = estimate_born(fx.decomp, fx.circuit, fx.meas, o);
            if (std::abs(rep.mu_hat - fx.exact) > eps) fails++;
        }
        total_fail += fails;
        worst_fixture = std::max(worst_fixture, fails);
        ok = ok && (double)fails / reps <= limit;
    }
    return {ok, f("20 fixtures x %d runs, worst fixture %d/%d outside eps (limit %.3f), overall %.4f, %.0f s", reps,
                  worst_fixture, reps, limit, total_fail / (20.0 * reps), elapsed(t0))};
}

Outcome monotone_constants() {
    BlochState H = BlochState::named("H"), F = BlochState::named("F");
    double lam = product_monotone({H});
    double D = stab_norm_1q(H);
    double xiF = extent_pure_1q(F).xi;
    double e1 = std::abs(lam - (4 - 2 * std::sqrt(2.0)));
    double e2 = std::abs(std::log2(lam) - 0.228443);
    double e3 = std::abs(D - 1.2071);
    double e4 = std::abs(std::log2(D) - 0.271553);
    double e5 = std::abs(xiF - (3 - std::sqrt(3.0)));
    bool ok = e1 <= 1e-9 && e2 <= 5e-6 && e3 <= 1e-4 && e4 <= 5e-6 && e5 <= 1e-9;
    return {ok, f("Lambda(H)=%.12f log2=%.7f D(H)=%.6f log2=%.7f xi(F)=%.12f", lam, std::log2(lam), D, std::log2(D), xiF)};
}

Outcome sparsification() {
    std::vector<BlochState> h(3, BlochState::named("H"));
    SparseDecomposition d = sparse_decompose_product(h);
    const uint64_t k = 100;
    const int draws = 100000;
    std::mt19937_64 rng(4242);
    KahanSum s1, s2;
    for (int i = 0; i < draws; i++) {
        double v = sparsify(d, k, rng).norm2();
        s1.add(v);
        s2.add(v * v);
    }
    double mean = s1.sum / draws;
    double var = (s2.sum - draws * mean * mean) / (draws - 1);
    double want = mean_norm2(d.l1, k);
    double sigma = std::sqrt(var / draws);
    double bound = variance_bound(d.C, d.l1, k);
    bool ok = std::abs(mean - want) <= 4 * sigma && var <= bound;
    return {ok, f("mean %.6f vs %.6f (%.2f sigma), variance %.3e <= bound %.3e, C=%.6f", mean, want,
                  std::abs(mean - want) / sigma, var, bound, d.C)};
}

Outcome bitstring_sampler() {
    auto t0 = std::chrono::steady_clock::now();
    BlochState b = BlochState::noisy(BlochState::named("H"), 0.9);
    MixedInput in = mixed_input_product({b, b});
    SampleOptions o;
    o.w = 2;
    o.delta = 0.15;
    o.count = 100000;
    o.seed = 5;
    o.workers = resolve_workers(0);
    SampleResult r = sample_bitstrings(in, o);
    std::map<std::string, double> emp;
    for (const auto &s : r.strings) emp[s] += 1.0 / r.strings.size();
    double l1 = 0, sigma = 0;
    const double N = (double)r.strings.size();
    for (int x = 0; x < 4; x++) {
        double p = 1;
        for (int q = 0; q < 2; q++) p *= 0.5 * (1 + (((x >> q) & 1) ? -b.bz : b.bz));
        std::string key = bits_to_string(x, 2);
        l1 += std::abs(emp[key] - p);
        sigma += std::sqrt(p * (1 - p) / N);
    }
    bool k_same = r.report.k_constant && in.equimagical;
    bool ok = l1 <= o.delta + 3 * sigma && k_same;
    return {ok, f("l1 distance %.4f (limit %.4f), k per string %llu..%llu, equimagical %s, %.0f s", l1,
                  o.delta + 3 * sigma, (unsigned long long)r.report.k_min, (unsigned long long)r.report.k_max,
                  in.equimagical ? "yes" : "no", elapsed(t0))};
}

struct ConstrainedFixture {
    std::vector<BlochState> input;
    std::vector<SimulableChannel> circuit;
    Measurement meas;
    double exact = 0;
};

ConstrainedFixture constrained_fixture(std::mt19937_64 &rng, int which) {
    ConstrainedFixture fx;
    if (which == 0) {
        fx.input = {BlochState::named("H")};
        fx.circuit = {identity_channel(1)};
        fx.meas = Measurement::projector(StabProjector::basis(1, 0, 0));
    } else {
        fx.input = {which == 1 ? BlochState::noisy(BlochState::named("H"), 0.8) : random_bloch_state(rng),
                    which == 1 ? BlochState::named("T") : random_bloch_state(rng)};
        fx.circuit = {clifford_channel(2, testing::random_circuit(rng, 2, 12))};
        fx.meas = which == 1 ? Measurement::observable(PauliOp::parse("ZI"))
                             : Measurement::projector(StabProjector::basis(2, 1, 1));
    }
    std::vector<DenseOp> parts;
    for (const auto &b : fx.input) parts.push_back(b.density());
    DenseOp rho = product_density(parts);
    for (const auto &ch : fx.circuit) rho = apply_channel_dense(rho, ch);
    fx.exact = testing::dense_value(rho, fx.meas);
    return fx;
}

Outcome constrained_path() {
    std::mt19937_64 rng(606);
    const int runs = 200;
    const double c = 0.05, pf = 0.05;
    const double limit = 0.95 - 3 * std::sqrt(0.95 * 0.05 / runs);
    const uint64_t expect = (uint64_t)std::ceil(2.0 / (c * c) * std::log(2.0 / pf));
    bool ok = constrained_samples(c, pf) == expect;
    double worst = 1;
    std::string lambdas;
    for (int which = 0; which < 3; which++) {
        auto fx = constrained_fixture(rng, which);
        RobustnessPair pair = robustness_pair_product(fx.input);
        int hits = 0;
        for (int r = 0; r < runs; r++) {
            ConstrainedOptions o;
            o.c = c;
            o.p_fail = pf;
            o.seed = 7919ULL * which + r;
            ConstrainedReport rep = constrained_estimate(pair, fx.circuit, fx.meas, o);
            ok = ok && rep.samples == expect;
            if (fx.exact >= rep.E_min - 1e-12 && fx.exact <= rep.E_max + 1e-12) hits++;
        }
        worst = std::min(worst, (double)hits / runs);
        lambdas += f("%s%.4f", which ? "," : "", pair.lambda);
    }
    ok = ok && worst >= limit;
    return {ok, f("coverage >= %.3f on 3 fixtures (limit %.3f), lambda {%s}, samples %llu each", worst, limit,
                  lambdas.c_str(), (unsigned long long)expect)};
}

Outcome lp_robustness() {
    std::mt19937_64 rng(31337);
    double worst = 0, gap = 0;
    int done = 0;
    while (done < 50) {
        BlochState b = random_bloch_state(rng);
        double l1 = std::abs(b.bx) + std::abs(b.by) + std::abs(b.bz);
        if (l1 <= 1 + 1e-6) continue;
        RobustnessLPResult r = robustness_lp(b.density());
        worst = std::max(worst, std::abs(r.value - l1));
        gap = std::max(gap, std::abs(r.gap));
        done++;
    }
    DenseOp hh = product_density({BlochState::named("H").density(), BlochState::named("H").density()});
    RobustnessLPResult r2 = robustness_lp(hh);
    gap = std::max(gap, std::abs(r2.gap));
    double lo = std::pow(stab_norm_1q(BlochState::named("H")), 2), hi = 2.0;
    bool ok = worst <= 1e-7 && r2.value >= lo - 1e-9 && r2.value <= hi + 1e-9 && gap <= 1e-7;
    return {ok, f("1-qubit max |LP - l1| %.2e; R(H x H) = %.6f in [%.4f, %.1f]; max duality gap %.2e", worst, r2.value,
                  lo, hi, gap)};
}

Outcome ladder() {
    std::mt19937_64 rng(8080);
    double worst_g = INFINITY, worst_1 = INFINITY;
    for (int i = 0; i < 500; i++) {
        LadderReport r = monotone_ladder_check(random_bloch_state(rng));
        worst_g = std::min(worst_g, r.slack_general);
        worst_1 = std::min(worst_1, r.slack_1q);
    }
    return {worst_g >= -1e-9 && worst_1 >= -1e-9,
            f("500 states, min slack R-(2L+-1) = %.3e, R-((1+sqrt2)L+-sqrt2) = %.3e", worst_g, worst_1)};
}

Outcome distillation() {
    bool ok = true;
    int rows = 0;
    for (DistillTarget t : {DistillTarget::H, DistillTarget::T, DistillTarget::F}) {
        std::vector<double> eps;
        for (int e = -14; e <= -1; e++) eps.push_back(std::pow(10.0, e));
        auto se = sweep_epsilon(0.9, t, 4, 0.5, eps);
        for (size_t i = 1; i < se.size(); i++) ok = ok && se[i].bound.k <= se[i - 1].bound.k;
        std::vector<int> ms(48);
        std::iota(ms.begin(), ms.end(), 1);
        auto sm = sweep_m(0.9, t, ms, 1e-3, 0.5);
        for (size_t i = 1; i < sm.size(); i++) {
            ok = ok && sm[i].bound.k >= sm[i - 1].bound.k;
            ok = ok && sm[i].bound.k / sm[i].m >= sm[i - 1].bound.k / sm[i - 1].m - 1e-12;
        }
        rows += (int)(se.size() + sm.size());
    }
    struct Locked {
        std::vector<BlochState> rho;
        DistillTarget t;
        int m;
        double eps, p, k1, k2, k;
    };
    const Locked locked[] = {
        {{BlochState::noisy(BlochState::named("H"), 0.9)}, DistillTarget::H, 4, 1e-3, 0.5, -0.5675547701623265,
         2.9535976614130157, 2.9535976614130157},
        {{BlochState::noisy(BlochState::named("H"), 0.95)}, DistillTarget::F, 10, 1e-6, 0.9, 17.053724649909125,
         16.06116064166752, 17.053724649909125},
        {{BlochState::named("T")}, DistillTarget::T, 2, 0.01, 1.0, 1.9365297467815867, 1.9365297467815867,
         1.9365297467815867},
    };
    double drift = 0;
    for (const auto &L : locked) {
        DistillQuery q{L.rho, L.t, L.m, L.eps, L.p};
        CopiesBound b = copies_lower_bound(q);
        drift = std::max({drift, std::abs(b.k1 - L.k1), std::abs(b.k2 - L.k2), std::abs(b.k - L.k)});
    }
    ok = ok && drift <= 1e-9;
    return {ok, f("%d sweep rows monotone in epsilon and m (k/m rising with m); locked points drift %.1e", rows, drift)};
}

}  // namespace

int main(int argc, char **argv) {
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
        {"stabilizer core vs dense", stabilizer_core},
        {"dyadic estimator", dyadic_estimator},
        {"monotone constants", monotone_constants},
        {"sparsification statistics", sparsification},
        {"bit-string sampler", bitstring_sampler},
        {"constrained path", constrained_path},
        {"LP robustness", lp_robustness},
        {"inequality ladder", ladder},
        {"distillation bounds", distillation},
    };
    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    if (only < 0 || only > (int)criteria.size()) {
        std::fprintf(stderr, "usage: %s [1..%zu]\n", argv[0], criteria.size());
        return 2;
    }
    bool all = true;
    for (size_t i = 0; i < criteria.size(); i++) {
        if (only && (int)i + 1 != only) continue;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %zu (%s): %s - %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
