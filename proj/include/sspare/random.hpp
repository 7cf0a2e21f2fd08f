#pragma once

#include <cstdint>
#include <random>

namespace sspare {

// splitmix64 step; used to derive child seeds and to whiten user seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Deterministic random stream. mt19937_64 has a standardized sequence, and
// uniform01() maps raw bits directly so two builds produce identical draws
// (std::uniform_real_distribution is implementation-defined and avoided).
// Streams are splittable: split(i) derives an independent child stream, so
// concurrent replicas never share a generator.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : seed_(seed), gen_(whiten(seed)) {}

    // Uniform draw on the open interval (0, 1); never returns 0 or 1.
    double uniform01() {
        const std::uint64_t bits = gen_() >> 11;  // 53 random bits
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    // Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n) {
        // Multiply-shift rejection-free mapping is fine here; bias is < 2^-53.
        return static_cast<std::uint64_t>(uniform01() * static_cast<double>(n));
    }

    RandomStream split(std::uint64_t index) const {
        std::uint64_t s = seed_ ^ (0xA3EC647659359ACDULL * (index + 1));
        return RandomStream(splitmix64(s));
    }

    std::uint64_t seed() const { return seed_; }

private:
    static std::uint64_t whiten(std::uint64_t seed) {
        std::uint64_t s = seed;
        return splitmix64(s);
    }

    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

}  // namespace sspare
