#pragma once

#include <cstdint>

namespace cosetforge {

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
} // namespace detail

/// splitmix64 generator. The algorithm is fixed here (not delegated to
/// <random> distributions) so that a (seed, stream) pair produces the same
/// trial sequence on every platform, which the report determinism contract
/// requires.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    /// Stream k of a master seed; used to give each trial its own generator
    /// so batch runners may reorder or parallelize trials freely.
    static Rng stream(std::uint64_t seed, std::uint64_t k) {
        return Rng(detail::mix64(seed + 0x9E3779B97F4A7C15ULL) ^
                   detail::mix64(k + 0x632BE59BD9B4E019ULL));
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return detail::mix64(state_);
    }

    /// Uniform in [0,1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    /// Uniform in [0, bound) without modulo bias.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

  private:
    std::uint64_t state_;
};

} // namespace cosetforge
