#ifndef RANDPOLY_PARALLEL_HPP
#define RANDPOLY_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace randpoly {

inline unsigned default_workers()
{
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(shard) for shard = 0..shards-1 on up to `workers` threads; worker
/// w takes shards w, w + workers, ... . Callers keep one result slot per shard
/// and merge afterwards, so the outcome never depends on the worker count.
/// The first exception thrown by any shard is rethrown.
template <class Fn>
void run_shards(unsigned workers, std::size_t shards, Fn&& fn)
{
    workers = static_cast<unsigned>(std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(shards, 1)));
    if (workers == 1) {
        for (std::size_t s = 0; s < shards; ++s)
            fn(s);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t s = w; s < shards; s += workers)
                        fn(s);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            });
        }
    }
    if (failure)
        std::rethrow_exception(failure);
}

/// splitmix64 finalizer; used to derive per-block seeds from a master seed.
constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of trial block `block` under `master`.
constexpr std::uint64_t block_seed(std::uint64_t master, std::uint64_t block)
{
    return splitmix64(master ^ splitmix64(block + 1));
}

} // namespace randpoly

#endif
