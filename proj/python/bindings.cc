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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"
#include "magicsim/constrained.h"
#include "magicsim/distill.h"
#include "magicsim/dyadic.h"
#include "magicsim/monotones.h"
#include "magicsim/parallel.h"
#include "magicsim/rank.h"
#include "magicsim/spec_io.h"

namespace py = pybind11;
using namespace magicsim;

namespace {

ProblemSpec problem_from_text(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw SpecError("", std::string("malformed JSON: ") + e.what());
    }
    return parse_problem(j);
}

std::vector<BlochState> bloch_list(const std::vector<std::array<double, 3>> &v) {
    std::vector<BlochState> out;
    for (const auto &a : v) {
        BlochState b{a[0], a[1], a[2]};
        b.validate();
        out.push_back(b);
    }
    return out;
}

py::dict estimate(const ProblemSpec &p, double epsilon, double p_fail, uint64_t seed, uint64_t samples, int workers) {
    if (!p.measurement) throw SpecError("/measurement", "estimate needs a measurement");
    EstimateOptions o;
    o.epsilon = epsilon;
    o.p_fail = p_fail;
    o.seed = seed;
    o.min_samples = samples;
    o.workers = resolve_workers(workers);
    EstimateReport r;
    {
        py::gil_scoped_release release;
        r = estimate_born(problem_dyads(p), p.circuit, *p.measurement, o);
    }
    py::dict d;
    d["mu_hat"] = r.mu_hat;
    d["epsilon"] = r.epsilon;
    d["p_fail"] = r.p_fail;
    d["samples"] = r.M;
    d["seed"] = r.seed;
    d["l1"] = r.per_sample_bound;
    d["aborted"] = r.aborted;
    d["std_error"] = r.std_error;
    d["num_dyads"] = r.num_dyads;
    d["circuit_depth"] = r.circuit_depth;
    return d;
}

py::dict sample(const ProblemSpec &p, double delta, double p_fail, uint64_t count, uint64_t seed, int w, int workers) {
    SampleOptions o;
    o.delta = delta;
    o.p_fail = p_fail;
    o.count = count;
    o.seed = seed;
    o.w = w > 0 ? w : p.n;
    o.workers = resolve_workers(workers);
    o.prefix = p.prefix;
    MixedInput in = problem_mixed_input(p);
    SampleResult r;
    {
        py::gil_scoped_release release;
        r = sample_bitstrings(in, o);
    }
    py::dict d;
    d["strings"] = r.strings;
    d["k_used"] = r.k_used;
    d["regime"] = r.report.regime;
    d["k_constant"] = r.report.k_constant;
    d["equimagical"] = in.equimagical;
    d["fastnorm_calls"] = r.report.fastnorm_calls;
    return d;
}

py::dict constrained(const ProblemSpec &p, double c, double p_fail, uint64_t seed) {
    if (!p.measurement) throw SpecError("/measurement", "constrained needs a measurement");
    ConstrainedOptions o;
    o.c = c;
    o.p_fail = p_fail;
    o.seed = seed;
    ConstrainedReport r = constrained_estimate(problem_robustness_pair(p), p.circuit, *p.measurement, o);
    py::dict d;
    d["E_hat"] = r.E_hat;
    d["Delta"] = r.Delta;
    d["case"] = constrained_case_name(r.which);
    d["E_min"] = r.E_min;
    d["E_max"] = r.E_max;
    d["lambda"] = r.lambda;
    d["samples"] = r.samples;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "magicsim native core";

    py::register_exception<SpecError>(m, "ValidationError", PyExc_ValueError);

    py::class_<ProblemSpec>(m, "Problem")
        .def_readonly("num_qubits", &ProblemSpec::n)
        .def_property_readonly("has_measurement", [](const ProblemSpec &p) { return p.measurement.has_value(); });
    m.def("parse_problem", &problem_from_text, py::arg("text"));
    m.def("load_problem", &load_problem, py::arg("path"));

    m.def("estimate", &estimate, py::arg("problem"), py::arg("epsilon") = 0.02, py::arg("p_fail") = 0.05,
          py::arg("seed") = 0, py::arg("samples") = 0, py::arg("workers") = 0);
    m.def("sample", &sample, py::arg("problem"), py::arg("delta") = 0.1, py::arg("p_fail") = 0.05,
          py::arg("count") = 1000, py::arg("seed") = 0, py::arg("w") = 0, py::arg("workers") = 0);
    m.def("constrained", &constrained, py::arg("problem"), py::arg("c") = 0.05, py::arg("p_fail") = 0.05,
          py::arg("seed") = 0);

    m.def("named_state", [](const std::string &name) { return BlochState::named(name).vec(); }, py::arg("name"));
    m.def("noisy_state", [](const std::array<double, 3> &v, double alpha) {
        return BlochState::noisy(BlochState{v[0], v[1], v[2]}, alpha).vec();
    }, py::arg("bloch"), py::arg("alpha"));
    m.def("lambda_plus", [](const std::vector<std::array<double, 3>> &s) { return product_monotone(bloch_list(s)); },
          py::arg("states"));
    m.def("stab_norm", [](const std::array<double, 3> &v) { return stab_norm_1q(bloch_list({v})[0]); }, py::arg("bloch"));
    m.def("robustness_1q", [](const std::array<double, 3> &v) { return robustness_1q(bloch_list({v})[0]); },
          py::arg("bloch"));
    m.def("extent", [](const std::array<double, 3> &v) { return extent_pure_1q(bloch_list({v})[0]).xi; },
          py::arg("bloch"));
    m.def("robustness_lp", [](const std::vector<std::array<double, 3>> &s) {
        std::vector<DenseOp> parts;
        for (const auto &b : bloch_list(s)) parts.push_back(b.density());
        RobustnessLPResult r = robustness_lp(product_density(parts));
        return py::make_tuple(r.value, r.gap);
    }, py::arg("states"));
    m.def("copies_lower_bound", [](const std::vector<std::array<double, 3>> &s, const std::string &target, int mm,
                                   double epsilon, double p) {
        DistillQuery q{bloch_list(s), distill_target_from_name(target), mm, epsilon, p};
        CopiesBound b = copies_lower_bound(q);
        py::dict d;
        d["lambda_plus"] = b.lambda_plus;
        d["k1"] = b.k1;
        d["k2"] = b.k2;
        d["k"] = b.k;
        return d;
    }, py::arg("states"), py::arg("target"), py::arg("m") = 1, py::arg("epsilon") = 0.0, py::arg("p") = 1.0);
}
