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

#include <cstdint>
#include <functional>
#include <random>

namespace magicsim {

// Independent generator for (seed, stream, chunk); the same triple always
// yields the same sequence, whichever thread draws it.
std::mt19937_64 chunk_rng(uint64_t seed, uint64_t stream, uint64_t chunk);

// Runs fn(chunk) for chunk in [0, count) on up to `workers` threads.  Each
// chunk runs on exactly one thread; the first exception is rethrown.
void parallel_chunks(uint64_t count, int workers, const std::function<void(uint64_t)> &fn);

// Worker count from an explicit request, else MAGICSIM_WORKERS, else 1.
int resolve_workers(int requested);

double uniform01(std::mt19937_64 &rng);

struct KahanSum {
    double sum = 0, c = 0;
    void add(double v) {
        double y = v - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

}  // namespace magicsim
