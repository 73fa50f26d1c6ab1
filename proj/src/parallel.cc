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

#include "magicsim/parallel.h"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace magicsim {

std::mt19937_64 chunk_rng(uint64_t seed, uint64_t stream, uint64_t chunk) {
    std::seed_seq seq{(uint32_t)seed, (uint32_t)(seed >> 32), (uint32_t)stream, (uint32_t)(stream >> 32),
                      (uint32_t)chunk, (uint32_t)(chunk >> 32)};
    return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64 &rng) {
    // 53 random bits, independent of the standard library's distribution code
    return (double)(rng() >> 11) * 0x1.0p-53;
}

void parallel_chunks(uint64_t count, int workers, const std::function<void(uint64_t)> &fn) {
    if (workers < 1) workers = 1;
    if (workers == 1 || count <= 1) {
        for (uint64_t i = 0; i < count; i++) fn(i);
        return;
    }
    std::atomic<uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr err;
    std::mutex mu;
    auto body = [&] {
        for (;;) {
            if (failed.load()) return;
            uint64_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!err) err = std::current_exception();
                failed = true;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int nt = (int)std::min<uint64_t>((uint64_t)workers, count);
    for (int t = 0; t < nt; t++) pool.emplace_back(body);
    for (auto &t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char *env = std::getenv("MAGICSIM_WORKERS")) {
        try {
            size_t pos = 0;
            int v = std::stoi(env, &pos);
            if (pos == std::string(env).size() && v > 0) return v;
        } catch (...) {
        }
        throw std::invalid_argument("MAGICSIM_WORKERS must be a positive integer");
    }
    return 1;
}

}  // namespace magicsim
