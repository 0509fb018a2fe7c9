#pragma once
// Deterministic per-sample random streams.
//
// std::mt19937_64 has a fully specified output sequence; the conversions to
// doubles below are written out so results do not depend on the standard
// library's distribution implementations.

#include <cstdint>
#include <random>

namespace lorentz {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of stream `index` (and retry `attempt`) derived from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index, std::uint64_t attempt = 0) {
    return splitmix64(splitmix64(splitmix64(master) ^ index) ^ (attempt * 0xD1B54A32D192ED03ULL));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        // Rejection keeps the draw unbiased.
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace lorentz
