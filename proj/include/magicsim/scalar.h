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

#include <complex>
#include <cstdint>

namespace magicsim {

// Exact amplitude of the form 2^(p/2) * exp(i*pi*e/4), or zero.
// Every amplitude of a stabilizer state reached from |0..0> by Clifford gates
// and Pauli projections has this form, so gate updates never lose precision.
struct Scalar {
    bool zero = true;
    int p = 0;
    int e = 0;

    static Scalar one() { return Scalar{false, 0, 0}; }
    static Scalar make(int p, int e) { return Scalar{false, p, ((e % 8) + 8) % 8}; }

    Scalar operator*(const Scalar &o) const {
        if (zero || o.zero) return Scalar{};
        return make(p + o.p, e + o.e);
    }
    Scalar operator/(const Scalar &o) const;
    Scalar conj() const {
        if (zero) return *this;
        return make(p, -e);
    }
    // multiply by i^k
    Scalar times_i(int k) const {
        if (zero) return *this;
        return make(p, e + 2 * k);
    }
    Scalar times_sqrt2(int j) const {
        if (zero) return *this;
        return make(p + j, e);
    }
    bool operator==(const Scalar &o) const {
        if (zero || o.zero) return zero == o.zero;
        return p == o.p && e == o.e;
    }
    double abs2() const;
    std::complex<double> value() const;
};

// Sum of scalars whose result is known to be a scalar of the exact form above.
// Terms are rescaled relative to the first nonzero one so the floating point
// sum is O(1) and then snapped back onto the lattice.
Scalar scalar_sum(const Scalar *terms, int count);

// Snap an O(1) complex number onto the nearest 2^(p/2) omega^e value.
Scalar scalar_snap(std::complex<double> z);

}  // namespace magicsim
