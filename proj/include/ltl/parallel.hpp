/*
Copyright 2026 The LTL Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

   http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#pragma once

#include "ltl/common.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace ltl
{

/** @brief Worker count: LTL_THREADS if set and positive, else hardware concurrency */
inline unsigned worker_count()
{
    unsigned n = 0;
    if (const char* env = std::getenv("LTL_THREADS")) {
        try {
            n = static_cast<unsigned>(std::max(0L, std::stol(env)));
        } catch (const std::exception&) {
            n = 0;
        }
    }
    if (n == 0) {
        n = std::max(1u, std::thread::hardware_concurrency());
    }
    return n;
}

/**
 * @brief Call fn(i) for i in [0, count) over contiguous chunks
 *
 * fn must only write state owned by index i. The first exception thrown by
 * any worker is rethrown on the calling thread.
 */
template <class Fn>
void parallel_for(Index count, Fn&& fn, unsigned workers = worker_count())
{
    if (count <= 0) {
        return;
    }
    workers = static_cast<unsigned>(std::min<Index>(workers, count));
    if (workers <= 1 || count < 256) {
        for (Index i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    const Index chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const Index begin = static_cast<Index>(w) * chunk;
        const Index end = std::min(count, begin + chunk);
        pool.emplace_back([&, begin, end] {
            try {
                for (Index i = begin; i < end; ++i) {
                    fn(i);
                }
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace ltl
