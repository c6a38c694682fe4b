#include "levy/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

namespace levy {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t seed, StreamTag tag, std::uint64_t index)
    : key_(mix64(mix64(seed + kGamma) ^ mix64(static_cast<std::uint64_t>(tag) * kGamma + index))) {}

std::uint64_t RngStream::next_u64() { return mix64(key_ + (++counter_) * kGamma); }

double RngStream::uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(th);
    has_spare_ = true;
    return r * std::cos(th);
}

double RngStream::exponential() { return -std::log(uniform()); }

std::uint64_t RngStream::poisson(double mean) {
    if (!(mean > 0.0)) return 0;
    std::uint64_t total = 0;
    while (mean > 0.0) {
        const double chunk = std::min(mean, 50.0);
        mean -= chunk;
        const double limit = std::exp(-chunk);
        double prod = uniform();
        while (prod > limit) {
            ++total;
            prod *= uniform();
        }
    }
    return total;
}

double Moments::mean() const { return count ? sum / static_cast<double>(count) : 0.0; }

double Moments::variance() const {
    if (count < 2) return 0.0;
    const double n = static_cast<double>(count);
    const double m = sum / n;
    return std::max(0.0, (sumsq - n * m * m) / (n - 1.0));
}

double Moments::std_error() const {
    return count ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
}

unsigned worker_count() {
    if (const char* env = std::getenv("LEVY_MINORANT_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 256));
        } catch (...) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for_blocks(std::size_t n_blocks, const std::function<void(std::size_t)>& body) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n_blocks));
    if (workers <= 1) {
        for (std::size_t b = 0; b < n_blocks; ++b) body(b);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t b; (b = next.fetch_add(1)) < n_blocks;) {
                try {
                    body(b);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

Moments parallel_moments(std::uint64_t n, std::uint64_t seed, StreamTag tag,
                         const std::function<double(std::uint64_t, RngStream&)>& sample,
                         std::uint64_t block_size) {
    const std::size_t n_blocks = static_cast<std::size_t>((n + block_size - 1) / block_size);
    std::vector<Moments> parts(n_blocks);
    parallel_for_blocks(n_blocks, [&](std::size_t b) {
        const std::uint64_t lo = b * block_size;
        const std::uint64_t hi = std::min(n, lo + block_size);
        Moments m;
        for (std::uint64_t i = lo; i < hi; ++i) {
            RngStream rng(seed, tag, i);
            m.add(sample(i, rng));
        }
        parts[b] = m;
    });
    Moments total;
    for (const Moments& m : parts) total.merge(m);
    return total;
}

} // namespace levy
