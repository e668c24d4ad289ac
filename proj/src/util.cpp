#include "dal/util.hpp"

#include <atomic>
#include <exception>
#include <mutex>

namespace dal {

void run_blocks(uint64_t begin, uint64_t end, uint64_t block_size, unsigned threads,
                const std::function<void(size_t, uint64_t, uint64_t)>& fn) {
    if (end <= begin) return;
    const size_t nblocks = block_count(begin, end, block_size);
    if (threads <= 1 || nblocks <= 1) {
        for (size_t i = 0; i < nblocks; ++i) {
            uint64_t lo = begin + i * block_size;
            uint64_t hi = std::min(end, lo + block_size);
            fn(i, lo, hi);
        }
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= nblocks) return;
            uint64_t lo = begin + i * block_size;
            uint64_t hi = std::min(end, lo + block_size);
            try {
                fn(i, lo, hi);
            } catch (...) {
                std::lock_guard<std::mutex> g(err_mu);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    unsigned nthreads = std::min<unsigned>(threads, static_cast<unsigned>(nblocks));
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace dal
