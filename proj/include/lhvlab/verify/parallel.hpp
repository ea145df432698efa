// Copyright 2026 The lhvlab Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lhvlab {

/// Worker count: LHVLAB_THREADS when set, otherwise the hardware count.
inline int default_threads() {
    if (const char *env = std::getenv("LHVLAB_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) {
            return cap;
        }
    }
    return std::max(static_cast<int>(std::thread::hardware_concurrency()), 1);
}

/// Runs fn(c) for c = 0..chunks-1 on up to `threads` workers (0: default)
/// and returns the per-chunk results in chunk order, so any reduction the
/// caller performs afterwards is independent of the thread count.
template <class Fn>
auto map_chunks(std::int64_t chunks, int threads, Fn fn) {
    using R = decltype(fn(std::int64_t{0}));
    std::vector<R> out(static_cast<std::size_t>(chunks));
    const int workers = static_cast<int>(
        std::max<std::int64_t>(1, std::min<std::int64_t>(threads > 0 ? threads : default_threads(),
                                                          chunks)));
    std::exception_ptr failure;
    std::mutex mu;
    auto work = [&](int w) {
        try {
            for (std::int64_t c = w; c < chunks; c += workers) {
                out[static_cast<std::size_t>(c)] = fn(c);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            failure = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back(work, w);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return out;
}

} // namespace lhvlab
