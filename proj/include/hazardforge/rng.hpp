#pragma once

#include <cstdint>
#include <random>

namespace hazardforge {

/// Seeded 64-bit Mersenne Twister with a portable bounded-integer draw.
/// std::uniform_int_distribution is implementation-defined, so it is not used.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n) by rejection sampling.
    int uniform_int(int n) {
        const auto bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
        std::uint64_t x = engine_();
        while (x > limit) {
            x = engine_();
        }
        return static_cast<int>(x % bound);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace hazardforge
