#pragma once

#include <cmath>
#include <cstdint>

namespace rsf {

namespace detail {

// Finalizer from splitmix64 (Steele, Lea, Flood 2014; Vigna's public-domain
// implementation). Bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

} // namespace detail

// Splittable counter-style random stream. A stream is identified by
// (seed, stream id); identical pairs produce identical draw sequences,
// regardless of what other streams exist. Used so that forest sample k,
// noise realization r, etc. each own an independent, replayable stream.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : seed_(seed), stream_(stream) {
        state_ = detail::mix64(detail::mix64(seed + detail::kGolden) ^
                               (stream * 0xD2B74407B1CE6E93ULL + detail::kGolden));
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    // Child stream with the same seed and a stream id derived from up to
    // three tag words. Distinct tags give (with overwhelming probability)
    // non-overlapping sequences.
    RngStream derive(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) const {
        std::uint64_t s = detail::mix64(stream_ + detail::kGolden * (a + 1));
        s = detail::mix64(s ^ (detail::kGolden * (b + 1)));
        s = detail::mix64(s ^ (detail::kGolden * (c + 1)));
        return RngStream(seed_, s);
    }

    std::uint64_t next_u64() {
        state_ += detail::kGolden;
        return detail::mix64(state_);
    }

    // Uniform double in [0, 1), 53 random bits.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Unbiased integer in [0, bound) by rejection.
    std::uint64_t uniform_below(std::uint64_t bound) {
        // Lemire's multiply-shift with rejection on the low word.
        std::uint64_t x = next_u64();
        __uint128_t m = static_cast<__uint128_t>(x) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (lo < threshold) {
                x = next_u64();
                m = static_cast<__uint128_t>(x) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Standard normal via Box-Muller. Consumes exactly two words per call,
    // keeping the draw count (and thus replay) independent of call pattern.
    double normal() {
        const double u1 = 1.0 - uniform(); // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return r * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t state_;
};

} // namespace rsf
