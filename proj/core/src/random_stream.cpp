#include "bettimc/random_stream.hpp"

#include "bettimc/errors.hpp"

namespace bettimc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

} // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(make_engine(seed, stream)) {}

RandomStream RandomStream::substream(std::uint64_t index) const {
    return RandomStream(seed_, splitmix64(stream_ ^ splitmix64(index + 1)));
}

std::uint64_t RandomStream::uniform_index(std::uint64_t bound) {
    if (bound == 0) {
        throw ContractViolation("uniform_index: bound must be positive");
    }
    // reject the short tail so every residue is equally likely
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        std::uint64_t x = engine_();
        if (x >= threshold) {
            return x % bound;
        }
    }
}

double RandomStream::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

} // namespace bettimc
