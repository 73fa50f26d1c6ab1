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

#include "magicsim/scalar.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace magicsim {

Scalar Scalar::operator/(const Scalar &o) const {
    if (o.zero) throw std::domain_error("scalar division by zero");
    if (zero) return Scalar{};
    return make(p - o.p, e - o.e);
}

double Scalar::abs2() const {
    if (zero) return 0.0;
    return std::ldexp(1.0, p);
}

std::complex<double> Scalar::value() const {
    if (zero) return {0.0, 0.0};
    double mag = std::pow(2.0, 0.5 * p);
    double ang = std::numbers::pi * 0.25 * e;
    return std::polar(mag, ang);
}

Scalar scalar_snap(std::complex<double> z) {
    double m2 = std::norm(z);
    if (m2 < 1e-18) return Scalar{};
    int p = (int)std::lround(std::log2(m2));
    double ang = std::arg(z) / (0.25 * std::numbers::pi);
    int e = (int)std::lround(ang);
    Scalar s = Scalar::make(p, e);
    std::complex<double> back = s.value();
    if (std::abs(back - z) > 1e-7 * std::sqrt(m2) + 1e-12) {
        throw std::logic_error("amplitude left the exact lattice");
    }
    return s;
}

Scalar scalar_sum(const Scalar *terms, int count) {
    const Scalar *ref = nullptr;
    for (int i = 0; i < count; i++) {
        if (!terms[i].zero) {
            ref = &terms[i];
            break;
        }
    }
    if (ref == nullptr) return Scalar{};
    std::complex<double> acc = 0;
    for (int i = 0; i < count; i++) {
        if (!terms[i].zero) acc += (terms[i] / *ref).value();
    }
    Scalar rel = scalar_snap(acc);
    return rel * *ref;
}

}  // namespace magicsim
