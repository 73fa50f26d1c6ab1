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

#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "magicsim/channels.h"
#include "magicsim/dense.h"
#include "magicsim/dyadic.h"
#include "magicsim/monotones.h"
#include "magicsim/parallel.h"
#include "random_programs.h"

namespace magicsim::testing {

struct DyadicFixture {
    std::string label;
    std::vector<BlochState> input;
    DyadicDecomposition decomp;
    std::vector<SimulableChannel> circuit;
    Measurement meas;
    double exact = 0;
};

inline BlochState random_bloch_state(std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    double x = g(rng), y = g(rng), z = g(rng);
    double r = std::sqrt(x * x + y * y + z * z);
    double len = std::cbrt(std::uniform_real_distribution<double>(0, 1)(rng));
    return {len * x / r, len * y / r, len * z / r};
}

inline double dense_value(const DenseOp &rho, const Measurement &m) {
    return m.is_pauli ? expectation_dense(rho, m.pauli) : born_probability_dense(rho, m.proj);
}

// Small random instance drawn from the built-in channel library.
inline DyadicFixture make_dyadic_fixture(std::mt19937_64 &rng, int index) {
    DyadicFixture f;
    int n = 1 + index % 3;
    static const char *named[] = {"H", "T", "F", "0", "+"};
    for (int q = 0; q < n; q++) {
        int kind = (int)(rng() % 3);
        if (kind == 0) f.input.push_back(BlochState::named(named[rng() % 5]));
        else if (kind == 1) f.input.push_back(BlochState::noisy(BlochState::named("H"), 0.6 + 0.4 * uniform01(rng)));
        else f.input.push_back(random_bloch_state(rng));
    }
    if (n >= 2) f.input[n - 1] = BlochState::named("H");
    f.decomp = dyadic_decompose_product(f.input);
    int depth = 1 + (int)(rng() % 4);
    for (int t = 0; t < depth; t++) {
        int kind = (int)(rng() % 4);
        if (kind == 1 && n < 2) kind = 0;
        switch (kind) {
            case 0: {
                std::vector<std::pair<double, Circuit>> mix;
                double p = 0.3 + 0.7 * uniform01(rng);
                mix.push_back({p, random_circuit(rng, n, 6)});
                mix.push_back({1 - p, random_circuit(rng, n, 6)});
                f.circuit.push_back(clifford_mix_channel(n, mix));
                f.label += "C";
                break;
            }
            case 1: {
                int a = n - 1, d = (int)(rng() % (n - 1));
                f.circuit.push_back(t_gadget_channel(n, d, a, false));
                f.label += "T";
                break;
            }
            case 2:
                f.circuit.push_back(depolarizing_channel(n, (int)(rng() % n), uniform01(rng)));
                f.label += "D";
                break;
            default: {
                Circuit fix = random_circuit(rng, n, 2);
                f.circuit.push_back(pauli_measure_channel(n, random_pauli(rng, n), fix));
                f.label += "M";
                break;
            }
        }
    }
    if (rng() % 2) {
        f.meas = Measurement::observable(random_pauli(rng, n));
    } else {
        StabProjector p;
        p.n = n;
        PauliOp g = random_pauli(rng, n);
        p.generators.push_back({g, (rng() & 1) ? 1 : -1});
        f.meas = Measurement::projector(p);
    }
    std::vector<DenseOp> parts;
    for (const auto &b : f.input) parts.push_back(b.density());
    DenseOp rho = product_density(parts);
    for (const auto &ch : f.circuit) rho = apply_channel_dense(rho, ch);
    f.exact = dense_value(rho, f.meas);
    return f;
}

}  // namespace magicsim::testing
