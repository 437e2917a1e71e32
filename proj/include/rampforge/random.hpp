#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace rampforge {

/// mt19937_64 with distribution helpers that are bit-identical across
/// standard libraries (std:: distributions are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n)
    {
        // Rejection sampling removes modulo bias.
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t x = engine_();
        while (x >= limit) x = engine_();
        return x % n;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace rampforge
