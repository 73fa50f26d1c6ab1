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

// magicsim command-line front end.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "magicsim/constrained.h"
#include "magicsim/distill.h"
#include "magicsim/dyadic.h"
#include "magicsim/monotones.h"
#include "magicsim/parallel.h"
#include "magicsim/rank.h"
#include "magicsim/spec_io.h"
#include "selftest.h"

using json = nlohmann::ordered_json;
using namespace magicsim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitIO = 3;

class IOError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string input, output, format;
    std::optional<uint64_t> seed;
    std::optional<double> epsilon, delta, pfail;
    std::optional<uint64_t> samples;
    std::optional<int> workers;
};

// Shortest text that round-trips; the same digits JSON output uses.
std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return json(v).dump();
}

json jnum(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// A flat table that can be written either way.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
};

std::string csv_cell(const json &v) {
    if (v.is_null()) return "";
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_float()) return fmt(v.get<double>());
    if (v.is_number()) return v.dump();
    std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string to_csv(const Table &t) {
    std::ostringstream o;
    for (size_t i = 0; i < t.columns.size(); i++) o << (i ? "," : "") << t.columns[i];
    o << "\n";
    for (const auto &r : t.rows) {
        for (size_t i = 0; i < r.size(); i++) o << (i ? "," : "") << csv_cell(r[i]);
        o << "\n";
    }
    return o.str();
}

json rows_json(const Table &t) {
    json arr = json::array();
    for (const auto &r : t.rows) {
        json o = json::object();
        for (size_t i = 0; i < r.size(); i++) o[t.columns[i]] = r[i];
        arr.push_back(o);
    }
    return arr;
}

Table object_table(const json &o) {
    Table t;
    std::vector<json> row;
    for (const auto &[k, v] : o.items()) {
        if (v.is_object() || v.is_array()) continue;
        t.columns.push_back(k);
        row.push_back(v);
    }
    t.rows.push_back(row);
    return t;
}

void emit(const Common &c, const std::string &text) {
    if (c.output.empty() || c.output == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(c.output, std::ios::binary);
    if (!out) throw IOError("cannot open output file '" + c.output + "'");
    out << text;
    if (!out) throw IOError("failed writing '" + c.output + "'");
}

void emit_json(const Common &c, const json &j) { emit(c, j.dump(2) + "\n"); }

void emit_object(const Common &c, const json &j, const std::string &default_format) {
    std::string f = c.format.empty() ? default_format : c.format;
    if (f == "csv")
        emit(c, to_csv(object_table(j)));
    else
        emit_json(c, j);
}

template <class T>
T pick(const std::optional<T> &flag, const nlohmann::json &params, const char *key, T dflt) {
    if (flag) return *flag;
    if (params.contains(key)) {
        const json &v = params[key];
        if constexpr (std::is_integral_v<T>) {
            if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<int64_t>() < 0))
                throw SpecError(std::string("/params/") + key, "expected a nonnegative integer");
            return (T)v.get<uint64_t>();
        } else {
            return v.get<T>();
        }
    }
    return dflt;
}

ProblemSpec need_input(const Common &c) {
    if (c.input.empty()) throw SpecError("--input", "--input is required for this subcommand");
    std::ifstream probe(c.input);
    if (!probe) throw IOError("cannot open input file '" + c.input + "'");
    return load_problem(c.input);
}

std::vector<BlochState> states_from_flags(const std::vector<std::string> &names, std::optional<double> alpha) {
    std::vector<BlochState> out;
    for (const auto &s : names) {
        BlochState b;
        if (s.find(',') != std::string::npos) {
            std::vector<double> v;
            std::stringstream ss(s);
            std::string item;
            while (std::getline(ss, item, ',')) {
                try {
                    size_t used = 0;
                    v.push_back(std::stod(item, &used));
                    if (used != item.size()) throw std::invalid_argument("x");
                } catch (const std::exception &) {
                    throw SpecError("--state", "bad Bloch coordinate '" + item + "'");
                }
            }
            if (v.size() != 3) throw SpecError("--state", "Bloch vectors need three comma-separated numbers");
            b = {v[0], v[1], v[2]};
        } else {
            try {
                b = BlochState::named(s);
            } catch (const std::invalid_argument &e) {
                throw SpecError("--state", e.what());
            }
        }
        if (alpha) {
            try {
                b = BlochState::noisy(b, *alpha);
            } catch (const std::invalid_argument &e) {
                throw SpecError("--alpha", e.what());
            }
        }
        try {
            b.validate();
        } catch (const std::invalid_argument &e) {
            throw SpecError("--state", e.what());
        }
        out.push_back(b);
    }
    return out;
}

// ---------------------------------------------------------------- estimate

int run_estimate(const Common &c) {
    ProblemSpec p = need_input(c);
    if (!p.measurement) throw SpecError("/measurement", "estimate needs a measurement");
    EstimateOptions o;
    o.epsilon = pick(c.epsilon, p.params, "epsilon", 0.02);
    o.p_fail = pick(c.pfail, p.params, "p_fail", 0.05);
    o.seed = pick<uint64_t>(c.seed, p.params, "seed", 0);
    o.min_samples = pick<uint64_t>(c.samples, p.params, "samples", 0);
    o.workers = resolve_workers(pick<int>(c.workers, p.params, "workers", 0));
    if (!(o.epsilon > 0 && o.epsilon < 1)) throw SpecError("--epsilon", "epsilon must lie in (0,1)");
    if (!(o.p_fail > 0 && o.p_fail < 1)) throw SpecError("--pfail", "p_fail must lie in (0,1)");
    EstimateReport r = estimate_born(problem_dyads(p), p.circuit, *p.measurement, o);
    json j = {{"subcommand", "estimate"},
              {"seed", r.seed},
              {"mu_hat", r.mu_hat},
              {"epsilon", r.epsilon},
              {"p_fail", r.p_fail},
              {"samples", r.M},
              {"l1", r.per_sample_bound},
              {"max_abs_sample", r.max_abs_sample},
              {"aborted", r.aborted},
              {"std_error", r.std_error},
              {"num_qubits", p.n},
              {"num_dyads", r.num_dyads},
              {"circuit_depth", r.circuit_depth},
              {"measurement", p.measurement->is_pauli ? "pauli" : "projector"}};
    emit_object(c, j, "json");
    return kExitOk;
}

// ------------------------------------------------------------------ sample

NormMode norm_mode_from(const std::string &s) {
    if (s == "auto") return NormMode::Auto;
    if (s == "sampled") return NormMode::Sampled;
    if (s == "enumerated") return NormMode::Enumerated;
    if (s == "exact") return NormMode::Exact;
    throw SpecError("/params/norm_mode", "norm_mode must be auto, sampled, enumerated or exact");
}

int run_sample(const Common &c, std::optional<int> bits, bool timing) {
    ProblemSpec p = need_input(c);
    MixedInput in = problem_mixed_input(p);
    SampleOptions o;
    o.delta = pick(c.delta, p.params, "delta", 0.1);
    o.p_fail = pick(c.pfail, p.params, "p_fail", 0.05);
    o.seed = pick<uint64_t>(c.seed, p.params, "seed", 0);
    o.count = pick<uint64_t>(c.samples, p.params, "samples", 1000);
    o.workers = resolve_workers(pick<int>(c.workers, p.params, "workers", 0));
    o.w = pick<int>(bits, p.params, "w", p.n);
    o.norm_mode = norm_mode_from(p.params.value("norm_mode", std::string("auto")));
    o.prefix = p.prefix;
    if (o.w < 1 || o.w > p.n) throw SpecError("--bits", "bit count must satisfy 1 <= w <= n");
    if (!(o.delta > 0 && o.delta < 1)) throw SpecError("--delta", "delta must lie in (0,1)");
    if (!(o.p_fail > 0 && o.p_fail < 1)) throw SpecError("--pfail", "p_fail must lie in (0,1)");
    if (o.count < 1 || o.count > 100000000) throw SpecError("--samples", "sample count must be in 1..1e8");
    SampleResult r = sample_bitstrings(in, o);
    const RuntimeReport &rep = r.report;
    std::string f = c.format.empty() ? "json" : c.format;
    if (f == "csv") {
        Table t;
        t.columns = {"index", "bits", "k"};
        for (size_t i = 0; i < r.strings.size(); i++) t.rows.push_back({i, r.strings[i], r.k_used[i]});
        emit(c, to_csv(t));
        return kExitOk;
    }
    json report = {{"regime", rep.regime},
                   {"delta_S", rep.delta_S},
                   {"epsilon", rep.epsilon},
                   {"epsilon_FN", rep.epsilon_FN},
                   {"p_FN", rep.p_FN},
                   {"D", rep.D},
                   {"Xi_tilde", rep.Xi_tilde},
                   {"equimagical", in.equimagical},
                   {"fastnorm_calls", rep.fastnorm_calls},
                   {"k_min", rep.k_min},
                   {"k_max", rep.k_max},
                   {"k_mean", rep.k_mean},
                   {"k_constant", rep.k_constant}};
    if (timing) report["wall_seconds"] = rep.wall_seconds;
    json j = {{"subcommand", "sample"}, {"seed", o.seed},       {"w", o.w},           {"count", o.count},
              {"delta", o.delta},       {"p_fail", o.p_fail},   {"num_qubits", p.n}, {"strings", r.strings},
              {"report", report}};
    emit_json(c, j);
    return kExitOk;
}

// ------------------------------------------------------------- constrained

int run_constrained(const Common &c, std::optional<double> cval) {
    ProblemSpec p = need_input(c);
    if (!p.measurement) throw SpecError("/measurement", "constrained needs a measurement");
    RobustnessPair pair = problem_robustness_pair(p);
    ConstrainedOptions o;
    o.c = pick(cval, p.params, "c", 0.05);
    o.p_fail = pick(c.pfail, p.params, "p_fail", 0.05);
    o.seed = pick<uint64_t>(c.seed, p.params, "seed", 0);
    o.workers = resolve_workers(pick<int>(c.workers, p.params, "workers", 0));
    if (!(o.c > 0 && o.c < 1)) throw SpecError("--c", "c must lie in (0,1)");
    if (!(o.p_fail > 0 && o.p_fail < 1)) throw SpecError("--pfail", "p_fail must lie in (0,1)");
    ConstrainedReport r = constrained_estimate(pair, p.circuit, *p.measurement, o);
    json j = {{"subcommand", "constrained"},
              {"seed", r.seed},
              {"E_hat", r.E_hat},
              {"Delta", r.Delta},
              {"case", constrained_case_name(r.which)},
              {"E_sigma", r.E_sigma},
              {"E_max", r.E_max},
              {"E_min", r.E_min},
              {"lambda", r.lambda},
              {"c", r.c},
              {"epsilon", r.epsilon},
              {"p_fail", r.p_fail},
              {"samples", r.samples},
              {"num_qubits", p.n}};
    emit_object(c, j, "json");
    return kExitOk;
}

// ---------------------------------------------------------------- monotone

int run_monotone(const Common &c, const std::vector<std::string> &names, std::optional<double> alpha, int copies,
                 bool lp, bool scaling) {
    std::vector<BlochState> base;
    std::string label;
    if (!c.input.empty()) {
        if (!names.empty()) throw SpecError("--state", "give either --input or --state, not both");
        ProblemSpec p = need_input(c);
        if (p.kind != StateKind::Product) throw SpecError("/state", "monotones need a 'product' state");
        base = p.product;
        label = "input";
    } else {
        if (names.empty()) throw SpecError("--state", "--state or --input is required");
        base = states_from_flags(names, alpha);
        for (size_t i = 0; i < names.size(); i++) label += (i ? "+" : "") + names[i];
    }
    if (copies < 1 || copies > 4096) throw SpecError("--copies", "copies must be in 1..4096");
    const int per_copy = (int)base.size();
    if (lp && per_copy > 3) throw SpecError("--lp", "the robustness LP supports at most 3 qubits");
    // log-domain per-copy values, so 4096 copies never overflow
    double l_lam = std::log2(product_monotone(base)), l_D = 0, l_R = 0;
    for (const auto &b : base) {
        l_D += std::log2(stab_norm_1q(b));
        l_R += std::log2(robustness_1q(b));
    }
    auto row = [&](int k, Table &t) {
        std::vector<BlochState> all;
        for (int i = 0; i < k; i++) all.insert(all.end(), base.begin(), base.end());
        double lam = std::exp2(k * l_lam);
        double R = NAN;
        std::string kind = "none";
        bool ladder = true;
        if (all.size() == 1) {
            LadderReport lr = monotone_ladder_check(all[0]);
            R = lr.robustness;
            ladder = lr.ok;
            kind = "exact";
        } else if (lp && all.size() <= 3) {
            LadderReport lr = monotone_ladder_check(all, true);
            R = lr.robustness;
            ladder = lr.ok;
            kind = "lp";
        }
        double lower = std::max(std::exp2(k * l_D), 2 * lam - 1);
        std::vector<json> r = {label, per_copy, k, jnum(lam), jnum(k * l_lam), jnum(std::exp2(k * l_D)), jnum(k * l_D),
                               jnum(R), kind, jnum(lower), jnum(std::exp2(k * l_R)), ladder};
        if (per_copy == 1) r.insert(r.begin() + 1, {base[0].bx, base[0].by, base[0].bz});
        t.rows.push_back(r);
    };
    Table t;
    t.columns = {"state", "qubits_per_copy", "copies", "lambda_plus", "log2_lambda_plus", "stab_norm", "log2_stab_norm",
                 "robustness", "robustness_kind", "robustness_lower", "robustness_upper", "ladder_ok"};
    if (per_copy == 1) t.columns.insert(t.columns.begin() + 1, {"bx", "by", "bz"});
    if (scaling)
        for (int k = 1; k <= copies; k++) row(k, t);
    else
        row(copies, t);
    std::string f = c.format.empty() ? "csv" : c.format;
    if (f == "csv")
        emit(c, to_csv(t));
    else
        emit_json(c, {{"subcommand", "monotone"}, {"rows", rows_json(t)}});
    return kExitOk;
}

// ----------------------------------------------------------------- distill

std::vector<double> parse_grid(const std::string &g) {
    std::vector<double> out;
    auto bad = [&] { return SpecError("--grid", "grid is a comma list, lo:hi:count, or log:lo:hi:count"); };
    auto to_d = [&](const std::string &s) {
        try {
            size_t used = 0;
            double v = std::stod(s, &used);
            if (used != s.size()) throw bad();
            return v;
        } catch (const SpecError &) {
            throw;
        } catch (const std::exception &) {
            throw bad();
        }
    };
    std::vector<std::string> parts;
    bool colon = g.find(':') != std::string::npos;
    std::stringstream ss(g);
    std::string item;
    while (std::getline(ss, item, colon ? ':' : ',')) parts.push_back(item);
    if (!colon) {
        for (const auto &s : parts) out.push_back(to_d(s));
    } else {
        bool lg = !parts.empty() && parts[0] == "log";
        if (parts.size() != (lg ? 4u : 3u)) throw bad();
        double lo = to_d(parts[lg]), hi = to_d(parts[lg + 1]);
        double cnt = to_d(parts[lg + 2]);
        if (cnt < 1 || cnt > 100000 || cnt != std::floor(cnt)) throw bad();
        int n = (int)cnt;
        if (lg && !(lo > 0 && hi > 0)) throw SpecError("--grid", "log grids need positive end points");
        for (int i = 0; i < n; i++) {
            double t = n == 1 ? 0.0 : (double)i / (n - 1);
            out.push_back(lg ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo));
        }
    }
    if (out.empty()) throw bad();
    return out;
}

int run_distill(const Common &c, const std::vector<std::string> &names, std::optional<double> alpha,
                const std::string &target_name, int m, double p_success, const std::string &sweep,
                const std::string &grid) {
    DistillTarget target;
    try {
        target = distill_target_from_name(target_name);
    } catch (const std::invalid_argument &e) {
        throw SpecError("--target", e.what());
    }
    double eps = c.epsilon.value_or(0.0);
    std::vector<SweepRow> rows;
    auto guard = [](const char *where, auto &&f) {
        try {
            return f();
        } catch (const SpecError &) {
            throw;
        } catch (const std::invalid_argument &e) {
            throw SpecError(where, e.what());
        }
    };
    std::vector<BlochState> rho;
    if (sweep != "alpha") {
        if (!c.input.empty()) {
            ProblemSpec p = need_input(c);
            if (p.kind != StateKind::Product) throw SpecError("/state", "distill needs a 'product' state");
            rho = p.product;
        } else {
            rho = states_from_flags(names.empty() ? std::vector<std::string>{"H"} : names, alpha);
        }
    }
    auto one = [&](double a, double e, int mm) {
        DistillQuery q;
        q.rho = rho;
        q.target = target;
        q.m = mm;
        q.epsilon = e;
        q.p = p_success;
        SweepRow r{a, e, p_success, mm, true, {}};
        r.bound = guard("--epsilon", [&] { return copies_lower_bound(q); });
        return r;
    };
    double a_label = alpha.value_or(NAN);
    if (sweep == "none") {
        rows.push_back(one(a_label, eps, m));
    } else if (sweep == "epsilon") {
        for (double e : parse_grid(grid.empty() ? "log:1e-20:0.1:20" : grid)) rows.push_back(one(a_label, e, m));
    } else if (sweep == "m") {
        for (double v : parse_grid(grid.empty() ? "1:48:48" : grid)) {
            if (v < 1 || v != std::floor(v)) throw SpecError("--grid", "m values must be positive integers");
            rows.push_back(one(a_label, eps, (int)v));
        }
    } else if (sweep == "alpha") {
        if (!names.empty() || !c.input.empty()) throw SpecError("--sweep", "the alpha sweep always uses noisy |H> input");
        rows = guard("--grid", [&] { return sweep_alpha(parse_grid(grid.empty() ? "0.6:0.98:39" : grid), target, m, eps, p_success); });
    } else {
        throw SpecError("--sweep", "sweep must be none, epsilon, alpha or m");
    }
    Table t;
    t.columns = {"target", "alpha", "epsilon", "p", "m", "lambda_plus", "k1", "k2", "k", "defined"};
    for (const auto &r : rows)
        t.rows.push_back({target_name, jnum(r.alpha), r.epsilon, r.p, r.m, r.bound.lambda_plus, jnum(r.bound.k1),
                          jnum(r.bound.k2), jnum(r.bound.k), r.defined});
    std::string f = c.format.empty() ? "csv" : c.format;
    if (f == "csv") {
        emit(c, to_csv(t));
    } else {
        json j = {{"subcommand", "distill"}, {"rows", rows_json(t)}};
        if (!rho.empty()) j["asymptotic_rate_bound"] = asymptotic_rate_bound(rho, target);
        emit_json(c, j);
    }
    return kExitOk;
}

// ------------------------------------------------------------------- bench

template <class F>
double seconds(F &&f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_bench(const Common &c) {
    uint64_t seed = c.seed.value_or(0);
    uint64_t samples = c.samples.value_or(100000);
    int workers = resolve_workers(c.workers.value_or(0));
    json res = json::object();

    std::vector<BlochState> st = {BlochState::named("H"), BlochState::named("H"), BlochState::named("0")};
    DyadicDecomposition d = dyadic_decompose_product(st);
    std::vector<SimulableChannel> circ = {t_gadget_channel(3, 2, 0), t_gadget_channel(3, 2, 1),
                                          clifford_channel(3, {Gate{GateKind::H, 2}})};
    EstimateOptions eo;
    eo.seed = seed;
    eo.workers = workers;
    eo.fixed_samples = samples;
    EstimateReport er;
    double t = seconds([&] { er = estimate_born(d, circ, Measurement::projector(StabProjector::basis(3, 2, 0)), eo); });
    res["dyadic"] = {{"samples", samples}, {"seconds", t}, {"ns_per_sample", 1e9 * t / samples}, {"mu_hat", er.mu_hat}};

    MixedInput in = mixed_input_product({BlochState::noisy(BlochState::named("H"), 0.9), BlochState::noisy(BlochState::named("H"), 0.9)});
    SampleOptions so;
    so.w = 2;
    so.delta = 0.15;
    so.count = std::max<uint64_t>(1, samples / 100);
    so.seed = seed;
    so.workers = workers;
    SampleResult sr;
    t = seconds([&] { sr = sample_bitstrings(in, so); });
    res["rank"] = {{"strings", so.count}, {"seconds", t}, {"us_per_string", 1e6 * t / so.count},
                   {"fastnorm_calls", sr.report.fastnorm_calls}};

    RobustnessLPResult lpr;
    t = seconds([&] { lpr = robustness_lp(product_density({BlochState::named("H").density(), BlochState::named("H").density()})); });
    res["robustness_lp_2q"] = {{"seconds", t}, {"value", lpr.value}, {"iterations", lpr.iterations}};

    emit_json(c, {{"subcommand", "bench"}, {"seed", seed}, {"workers", workers}, {"results", res}});
    return kExitOk;
}

// ---------------------------------------------------------------- selftest

int run_selftest(const Common &c) {
    SelftestSummary s = run_selftest_suite(c.seed.value_or(0));
    json checks = json::array();
    for (const auto &ch : s.checks)
        checks.push_back({{"name", ch.name}, {"passed", ch.passed}, {"cases", ch.cases}, {"max_error", ch.max_error},
                          {"tolerance", ch.tolerance}});
    emit_json(c, {{"subcommand", "selftest"}, {"seed", c.seed.value_or(0)}, {"passed", s.passed}, {"checks", checks}});
    return s.passed ? kExitOk : kExitFailed;
}

void diagnostic(const std::string &kind, const std::string &message, const std::string &path = "") {
    json j = {{"error", {{"kind", kind}, {"message", message}}}};
    if (!path.empty()) j["error"]["path"] = path;
    std::cerr << j.dump() << "\n";
}

void add_common(CLI::App *s, Common &c, bool with_input = true) {
    if (with_input) s->add_option("--input", c.input, "JSON problem file");
    s->add_option("--output", c.output, "write results here instead of stdout");
    s->add_option("--seed", c.seed, "64-bit seed");
    s->add_option("--workers", c.workers, "worker threads (default: MAGICSIM_WORKERS, else 1)");
    s->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"magicsim: stabilizer simulation with magic-state inputs"};
    app.require_subcommand(1);
    Common c;

    auto *est = app.add_subcommand("estimate", "Born-rule or Pauli expectation estimate (dyadic frame)");
    add_common(est, c);
    est->add_option("--epsilon", c.epsilon, "additive error");
    est->add_option("--pfail", c.pfail, "failure probability");
    est->add_option("--samples", c.samples, "minimum number of samples");

    std::optional<int> bits;
    bool timing = false;
    auto *smp = app.add_subcommand("sample", "bit-string sampling from a mixed magic input");
    add_common(smp, c);
    smp->add_option("--delta", c.delta, "l1 error budget");
    smp->add_option("--pfail", c.pfail, "failure probability");
    smp->add_option("--samples", c.samples, "number of strings");
    smp->add_option("--bits", bits, "number of measured qubits w");
    smp->add_flag("--timing", timing, "include wall time in the report");

    std::optional<double> cval;
    auto *con = app.add_subcommand("constrained", "constant-time biased estimate with a rigorous interval");
    add_common(con, c);
    con->add_option("--c", cval, "relative precision c (epsilon = c * lambda)");
    con->add_option("--pfail", c.pfail, "failure probability");

    std::vector<std::string> names;
    std::optional<double> alpha;
    int copies = 1;
    bool lp = false, scaling = false;
    auto *mon = app.add_subcommand("monotone", "magic monotones of a product state");
    add_common(mon, c);
    mon->add_option("--state", names, "named state (H, T, F, 0, +, ...) or x,y,z; repeat for products");
    mon->add_option("--alpha", alpha, "mix every state with I/2: alpha rho + (1-alpha) I/2");
    mon->add_option("--copies", copies, "tensor copies");
    mon->add_flag("--lp", lp, "solve the robustness LP when the total is at most 3 qubits");
    mon->add_flag("--scaling", scaling, "one row per copy count 1..copies");

    std::string target = "H", sweep = "none", grid;
    int m = 1;
    double psucc = 1.0;
    auto *dis = app.add_subcommand("distill", "lower bounds on input copies for distillation");
    add_common(dis, c);
    dis->add_option("--state", names, "input state per copy (default H)");
    dis->add_option("--alpha", alpha, "noise mixing for the input state");
    dis->add_option("--target", target, "H, T or F");
    dis->add_option("--m", m, "target copies");
    dis->add_option("--epsilon", c.epsilon, "output infidelity");
    dis->add_option("--p", psucc, "success probability");
    dis->add_option("--sweep", sweep, "none, epsilon, alpha or m");
    dis->add_option("--grid", grid, "values: a,b,c or lo:hi:count or log:lo:hi:count");

    auto *ben = app.add_subcommand("bench", "timing of the three simulators");
    add_common(ben, c, false);
    ben->add_option("--samples", c.samples, "dyadic samples (rank strings use 1%)");

    auto *st = app.add_subcommand("selftest", "oracle-equivalence checks");
    add_common(st, c, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        diagnostic("usage", e.what());
        return kExitInvalid;
    }

    try {
        if (*est) return run_estimate(c);
        if (*smp) return run_sample(c, bits, timing);
        if (*con) return run_constrained(c, cval);
        if (*mon) return run_monotone(c, names, alpha, copies, lp, scaling);
        if (*dis) return run_distill(c, names, alpha, target, m, psucc, sweep, grid);
        if (*ben) return run_bench(c);
        if (*st) return run_selftest(c);
    } catch (const SpecError &e) {
        diagnostic("validation", e.what(), e.path());
        return kExitInvalid;
    } catch (const IOError &e) {
        diagnostic("io", e.what());
        return kExitIO;
    } catch (const std::runtime_error &e) {
        std::string msg = e.what();
        bool io = msg.rfind("cannot open", 0) == 0;
        diagnostic(io ? "io" : "runtime", msg);
        return io ? kExitIO : kExitFailed;
    } catch (const std::invalid_argument &e) {
        diagnostic("validation", e.what());
        return kExitInvalid;
    } catch (const std::out_of_range &e) {
        diagnostic("validation", e.what());
        return kExitInvalid;
    } catch (const nlohmann::json::exception &e) {
        diagnostic("validation", e.what());
        return kExitInvalid;
    } catch (const std::exception &e) {
        diagnostic("internal", e.what());
        return kExitFailed;
    }
    return kExitFailed;
}
