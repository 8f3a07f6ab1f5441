#pragma once

#include <cstdint>
#include <random>

namespace bettimc {

/**
 * Seeded pseudo-random source with deterministic substreams.
 *
 * Draws are produced from `std::mt19937_64` and mapped to integers and reals
 * without the implementation-defined standard distributions, so a seed gives
 * the same sequence on every platform. `substream(i)` yields an independent
 * generator keyed by (seed, stream path, i); parallel workers each take their
 * own substream and never share one.
 */
class RandomStream {
public:
    static constexpr std::uint64_t default_seed = 0x5EEDB377u;

    explicit RandomStream(std::uint64_t seed = default_seed, std::uint64_t stream = 0);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_; }

    RandomStream substream(std::uint64_t index) const;

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform in [0, bound); bound must be positive.
    std::uint64_t uniform_index(std::uint64_t bound);
    /// Uniform in [0, 1) with 53 random bits.
    double uniform01();
    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

} // namespace bettimc
