#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace addcomp {

// Number of worker threads used by operations that can split their work.
// Results never depend on this value.
struct Parallelism {
    unsigned threads = 1;

    static Parallelism hardware() {
        unsigned n = std::thread::hardware_concurrency();
        return {n == 0 ? 1u : n};
    }

    // ADDCOMP_THREADS overrides the hardware default when set to a positive integer.
    static Parallelism from_env() {
        if (const char* v = std::getenv("ADDCOMP_THREADS")) {
            try {
                int n = std::stoi(v);
                if (n > 0) return {static_cast<unsigned>(n)};
            } catch (...) {
            }
        }
        return hardware();
    }
};

// Runs body(chunk, begin, end) over `count` items split into at most
// `threads` contiguous chunks. Chunk c always covers the same items for a
// given (count, chunks) pair; the first exception thrown is rethrown.
template <class Body>
void parallel_chunks(std::size_t count, Parallelism par, Body&& body) {
    std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(par.threads, count));
    if (chunks <= 1) {
        body(std::size_t{0}, std::size_t{0}, count);
        return;
    }
    std::vector<std::exception_ptr> errors(chunks);
    std::vector<std::thread> workers;
    workers.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        std::size_t begin = count * c / chunks;
        std::size_t end = count * (c + 1) / chunks;
        workers.emplace_back([&, c, begin, end] {
            try {
                body(c, begin, end);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

inline std::size_t chunk_count(std::size_t count, Parallelism par) {
    return std::max<std::size_t>(1, std::min<std::size_t>(par.threads, count));
}

} // namespace addcomp
