#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace nhlab {

// NHLAB_THREADS if set and positive, else the hardware concurrency
inline unsigned thread_budget() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* s = std::getenv("NHLAB_THREADS")) {
        try {
            int n = std::stoi(s);
            if (n > 0) return static_cast<unsigned>(n);
        } catch (...) {
        }
    }
    return hw;
}

// out[i] = f(i) for i < n; results keep index order, the first exception is rethrown
template <class T, class F>
std::vector<T> parallel_map(size_t n, F f, unsigned threads = thread_budget()) {
    std::vector<T> out(n);
    threads = static_cast<unsigned>(std::min<size_t>(std::max(1u, threads), std::max<size_t>(n, 1)));
    if (threads <= 1) {
        for (size_t i = 0; i < n; ++i) out[i] = f(i);
        return out;
    }
    std::atomic<size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (size_t i = next++; i < n; i = next++) {
                try {
                    out[i] = f(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

} // namespace nhlab
