#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace dal {

// Malformed input or violated precondition. CLI maps this to exit code 3.
struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An enumeration or refinement loop exceeded its budget. CLI exit code 4.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A certified comparison could not be decided at any allowed precision.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

inline unsigned default_thread_count() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

// Runs fn(block_index, begin, end) over [begin, end) split into contiguous
// blocks. Workers pull blocks from a shared counter; results must be merged
// by block index afterwards so the outcome is independent of scheduling.
void run_blocks(uint64_t begin, uint64_t end, uint64_t block_size, unsigned threads,
                const std::function<void(size_t, uint64_t, uint64_t)>& fn);

inline size_t block_count(uint64_t begin, uint64_t end, uint64_t block_size) {
    if (end <= begin) return 0;
    return static_cast<size_t>((end - begin + block_size - 1) / block_size);
}

}  // namespace dal
