#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <thread>
#include <vector>

namespace npi {

/// Worker count: NPI_THREADS environment variable if set, else hardware
/// concurrency. Always at least 1.
std::size_t default_thread_count();

/// Run fn(i) for i in [0, count) across threads. Work items are claimed
/// from a shared atomic counter; fn must write its result into a slot
/// keyed by i so that downstream reductions can run in index order.
/// The output is therefore identical for every thread count.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn, std::size_t threads = default_thread_count()) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const std::size_t n = threads < count ? threads : count;
    pool.reserve(n);
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

} // namespace npi
