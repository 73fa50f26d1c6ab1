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

#include "magicsim/distill.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace magicsim {

DistillTarget distill_target_from_name(const std::string &name) {
    if (name == "H") return DistillTarget::H;
    if (name == "T") return DistillTarget::T;
    if (name == "F") return DistillTarget::F;
    throw std::invalid_argument("unsupported distillation target '" + name + "' (expected H, T or F)");
}

std::string distill_target_name(DistillTarget t) {
    switch (t) {
        case DistillTarget::H: return "H";
        case DistillTarget::T: return "T";
        case DistillTarget::F: return "F";
    }
    return "?";
}

double inverse_stabilizer_fidelity(DistillTarget t) {
    // |T> is Clifford-equivalent to |H>.
    return t == DistillTarget::F ? 3.0 - std::sqrt(3.0) : 4.0 - 2.0 * std::sqrt(2.0);
}

void DistillQuery::validate() const {
    if (rho.empty()) throw std::invalid_argument("distillation input is empty");
    for (const auto &b : rho) b.validate();
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    if (!(epsilon >= 0 && epsilon < 1)) throw std::invalid_argument("epsilon must lie in [0,1)");
    if (!(p > 0 && p <= 1)) throw std::invalid_argument("p must lie in (0,1]");
}

namespace {

double log_lambda_plus(const std::vector<BlochState> &rho, double *value) {
    double v = product_monotone(rho);
    if (value) *value = v;
    double l = std::log(v);
    if (!(l > 1e-12)) throw std::invalid_argument("input is a stabilizer mixture; no distillation bound exists");
    return l;
}

}  // namespace

CopiesBound copies_lower_bound(const DistillQuery &q) {
    q.validate();
    CopiesBound b;
    double ll = log_lambda_plus(q.rho, &b.lambda_plus);
    double lf = q.m * std::log(inverse_stabilizer_fidelity(q.target));
    double le = std::log1p(-q.epsilon);
    b.k1 = (std::log(q.p) + le + lf) / ll;
    b.k2 = q.p * (le + lf) / ll;
    b.k = std::max(b.k1, b.k2);
    return b;
}

double asymptotic_rate_bound(const std::vector<BlochState> &rho, DistillTarget target) {
    if (rho.empty()) throw std::invalid_argument("distillation input is empty");
    return log_lambda_plus(rho, nullptr) / std::log(inverse_stabilizer_fidelity(target));
}

namespace {

SweepRow row(double alpha, DistillTarget t, int m, double eps, double p) {
    DistillQuery q;
    q.rho = {BlochState::noisy(BlochState::named("H"), alpha)};
    q.target = t;
    q.m = m;
    q.epsilon = eps;
    q.p = p;
    SweepRow r{alpha, eps, p, m, true, {}};
    r.bound.lambda_plus = product_monotone(q.rho);
    if (std::log(r.bound.lambda_plus) > 1e-12) {
        r.bound = copies_lower_bound(q);
    } else {
        q.validate();
        r.defined = false;
        r.bound.k1 = r.bound.k2 = r.bound.k = std::numeric_limits<double>::infinity();
    }
    return r;
}

}  // namespace

std::vector<SweepRow> sweep_epsilon(double alpha, DistillTarget t, int m, double p, const std::vector<double> &eps) {
    std::vector<SweepRow> out;
    for (double e : eps) out.push_back(row(alpha, t, m, e, p));
    return out;
}

std::vector<SweepRow> sweep_alpha(const std::vector<double> &alphas, DistillTarget t, int m, double eps, double p) {
    std::vector<SweepRow> out;
    for (double a : alphas) out.push_back(row(a, t, m, eps, p));
    return out;
}

std::vector<SweepRow> sweep_m(double alpha, DistillTarget t, const std::vector<int> &ms, double eps, double p) {
    std::vector<SweepRow> out;
    for (int m : ms) out.push_back(row(alpha, t, m, eps, p));
    return out;
}

}  // namespace magicsim
