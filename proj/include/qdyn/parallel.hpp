/* Copyright (C) 2026 the qdyn authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */
#ifndef QDYN_PARALLEL_HPP
#define QDYN_PARALLEL_HPP

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace qdyn {

/// Run fn(0..n-1) across up to `threads` workers (0 = hardware count).
/// Output written by index stays deterministic regardless of schedule.
inline void parallel_for(int n, int threads,
                         const std::function<void(int)>& fn) {
    if (n <= 0) return;
    unsigned hw = std::thread::hardware_concurrency();
    int t = threads > 0 ? threads : (hw ? static_cast<int>(hw) : 1);
    if (t > n) t = n;
    if (t <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (int w = 0; w < t; ++w)
        pool.emplace_back([&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    for (auto& th : pool) th.join();
}

} // namespace qdyn

#endif
