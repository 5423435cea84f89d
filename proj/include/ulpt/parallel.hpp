#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace ulpt {

inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Splits [0, count) into contiguous chunks, runs `body(begin, end, acc)`
/// per chunk, then folds the chunk accumulators in chunk order with
/// `merge(total, acc)`. Because per-index work depends only on the index
/// and merging is sequential, the result is identical for any thread count.
template <class Acc, class Body, class Merge>
Acc parallel_chunked(long long count, unsigned threads, Acc init, Body body, Merge merge) {
    threads = resolve_threads(threads);
    if (count <= 0) return init;
    unsigned workers = static_cast<unsigned>(std::min<long long>(threads, count));
    if (workers <= 1) {
        Acc acc = init;
        body(0, count, acc);
        return acc;
    }
    std::vector<Acc> partial(workers, init);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    long long chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        long long begin = static_cast<long long>(w) * chunk;
        long long end = std::min(count, begin + chunk);
        pool.emplace_back([&, w, begin, end] {
            try {
                if (begin < end) body(begin, end, partial[w]);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    Acc total = init;
    for (auto& acc : partial) merge(total, acc);
    return total;
}

}  // namespace ulpt
