#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace levy {

enum class StreamTag : std::uint64_t {
    PathSample = 1,
    StickBreaking = 2,
    Diagnostics = 3,
    Test = 4,
};

std::uint64_t mix64(std::uint64_t x);

/// Counter-based stream keyed by (seed, tag, index). Draw i is a pure
/// function of the key and i, so streams never overlap and workers can be
/// scheduled in any order.
class RngStream {
public:
    RngStream(std::uint64_t seed, StreamTag tag, std::uint64_t index);

    std::uint64_t next_u64();
    /// Uniform on the open interval (0,1), 53-bit resolution.
    double uniform();
    double normal();
    double exponential();
    std::uint64_t poisson(double mean);

    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Running (sum, sum of squares, count).
struct Moments {
    double sum = 0.0;
    double sumsq = 0.0;
    std::uint64_t count = 0;

    void add(double x) {
        sum += x;
        sumsq += x * x;
        ++count;
    }
    void merge(const Moments& o) {
        sum += o.sum;
        sumsq += o.sumsq;
        count += o.count;
    }
    double mean() const;
    double variance() const;  // unbiased
    double std_error() const;
};

/// Worker count: LEVY_MINORANT_THREADS if set, else hardware concurrency.
unsigned worker_count();

/// Runs body(block) for block in [0, n_blocks) on the worker pool. Bodies
/// write only to their own block's slot; callers merge in block order.
void parallel_for_blocks(std::size_t n_blocks, const std::function<void(std::size_t)>& body);

/// Moments of sample(i, rng) over i in [0, n), with draw i using stream
/// (seed, tag, i). Blocks are merged in index order, so the result does not
/// depend on the worker count.
Moments parallel_moments(std::uint64_t n, std::uint64_t seed, StreamTag tag,
                         const std::function<double(std::uint64_t, RngStream&)>& sample,
                         std::uint64_t block_size = 4096);

} // namespace levy
