#pragma once

#include <cstdint>
#include <stdexcept>

namespace gtp {

// SplitMix64 (Steele, Lea, Flood 2014). State advances by the golden-ratio
// increment; each output is the three-step avalanche mix of the new state.
// The generator, the stream derivation below, and the bounded draw are all
// pinned here so that a given seed reproduces byte-identical results on any
// platform. std::uniform_int_distribution is deliberately not used: its
// algorithm is implementation-defined.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~std::uint64_t{0}; }

    std::uint64_t operator()() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Unbiased integer in [0, bound) via Lemire's multiply-shift with
    // rejection of the biased low fraction. Requires bound >= 1.
    std::uint64_t uniform_below(std::uint64_t bound) {
        if (bound == 0) {
            throw std::invalid_argument("uniform_below: bound must be positive");
        }
        std::uint64_t x = (*this)();
        __uint128_t m = static_cast<__uint128_t>(x) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                x = (*this)();
                m = static_cast<__uint128_t>(x) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Uniform integer in [lo, hi], inclusive.
    long uniform_in(long lo, long hi) {
        if (lo > hi) {
            throw std::invalid_argument("uniform_in: empty range");
        }
        auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(uniform_below(span));
    }

private:
    std::uint64_t state_;
};

// Finalizer-only mix (the output function of SplitMix64), used to scatter
// stream seeds across the state space.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Initial state of stream `index` for a run seeded with `seed`:
// mix64(seed + GOLDEN * (index + 1)). Streams are decorrelated by the
// avalanche mix; trial i always sees the same stream no matter which thread
// runs it, which is what makes parallel runs bit-identical to serial ones.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed + 0x9E3779B97F4A7C15ULL * (index + 1));
}

} // namespace gtp
