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

#include "magicsim/constrained.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace magicsim {

void RobustnessPair::validate() const {
    if (!(lambda >= 1.0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be at least 1");
    sigma.validate();
    double tot = 0;
    for (const auto &t : sigma.terms) {
        if (std::abs(t.alpha.imag()) > 1e-12 || t.alpha.real() < -1e-12)
            throw std::invalid_argument("sigma weights must be real and nonnegative");
        tot += t.alpha.real();
    }
    if (std::abs(tot - 1.0) > 1e-9) throw std::invalid_argument("sigma weights must sum to 1");
}

RobustnessPair robustness_pair_product(const std::vector<BlochState> &states) {
    if (states.empty()) throw std::invalid_argument("empty product state");
    RobustnessPair pair;
    std::vector<BlochState> sigmas;
    for (const auto &b : states) {
        RobustnessPair1Q p = generalized_robustness_pair_1q(b);
        pair.lambda *= p.lambda;
        sigmas.push_back(p.sigma);
    }
    pair.sigma = dyadic_decompose_product(sigmas);
    // Stabilizer parts give |c|^2 p weights; drop the rounding residue.
    for (auto &t : pair.sigma.terms) t.alpha = std::max(t.alpha.real(), 0.0);
    return pair;
}

std::string constrained_case_name(ConstrainedCase c) {
    switch (c) {
        case ConstrainedCase::Failure: return "failure";
        case ConstrainedCase::ConstantError: return "constant_error";
        case ConstrainedCase::ShrunkError: return "shrunk_error";
    }
    return "?";
}

uint64_t constrained_samples(double c, double p_fail) {
    if (!(c > 0 && c < 1)) throw std::invalid_argument("c must lie in (0,1)");
    return hoeffding_samples(1.0, c, p_fail);
}

ConstrainedReport constrained_interval(double lambda, double c, double E_sigma, double lower, double upper) {
    if (!(lambda >= 1.0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be at least 1");
    ConstrainedReport r;
    r.lambda = lambda;
    r.c = c;
    r.epsilon = c * lambda;
    r.E_sigma = E_sigma;
    double hi = E_sigma + r.epsilon + lambda - 1.0;
    double lo = E_sigma - r.epsilon - lambda + 1.0;
    bool clip_hi = hi >= upper;
    bool clip_lo = lo <= lower;
    r.E_max = std::min(upper, hi);
    r.E_min = std::max(lower, lo);
    if (clip_hi && clip_lo)
        r.which = ConstrainedCase::Failure;
    else if (!clip_hi && !clip_lo)
        r.which = ConstrainedCase::ConstantError;
    else
        r.which = ConstrainedCase::ShrunkError;
    r.E_hat = 0.5 * (r.E_max + r.E_min);
    r.Delta = 0.5 * (r.E_max - r.E_min);
    return r;
}

ConstrainedReport constrained_estimate(const RobustnessPair &pair, const std::vector<SimulableChannel> &circuit,
                                       const Measurement &meas, const ConstrainedOptions &opts) {
    pair.validate();
    meas.validate();
    if (!(opts.p_fail > 0 && opts.p_fail < 1)) throw std::invalid_argument("p_fail must lie in (0,1)");
    EstimateOptions eo;
    eo.epsilon = opts.c;
    eo.p_fail = opts.p_fail;
    eo.seed = opts.seed;
    eo.workers = opts.workers;
    eo.fixed_samples = constrained_samples(opts.c, opts.p_fail);
    EstimateReport er = estimate_born(pair.sigma, circuit, meas, eo);
    ConstrainedReport r = constrained_interval(pair.lambda, opts.c, pair.lambda * er.mu_hat, meas.lower(), meas.upper());
    r.p_fail = opts.p_fail;
    r.samples = er.M;
    r.seed = opts.seed;
    return r;
}

}  // namespace magicsim
