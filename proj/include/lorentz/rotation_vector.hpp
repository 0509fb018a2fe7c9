#pragma once
// Rotation vectors (s, e): escape speed in the Cayley graph and escape
// direction, the latter stored as a reduced-word prefix.

#include <cstddef>
#include <vector>

#include "lorentz/symbolic.hpp"

namespace lorentz {

inline constexpr std::size_t kDefaultPrefixDepth = 8;

struct RotationVector {
    double speed{0.0};
    ReducedWord direction;  ///< empty at the cone vertex
};

/// Rotation vector of a periodic orbit with crossing word W per period:
/// speed |cyclic reduction of W| / period, direction the prefix of W^k.
inline RotationVector periodic_rotation(std::span<const Letter> period_word, double period,
                                        std::size_t depth = kDefaultPrefixDepth) {
    RotationVector out;
    const ReducedWord w = reduce(period_word);
    const ReducedWord core = cyclic_reduction(w);
    if (core.empty() || !(period > 0.0)) return out;
    out.speed = static_cast<double>(core.size()) / period;
    ReducedWord power = w;
    // Each extra copy adds |core| letters to the reduced power.
    while (power.size() < depth) power = concat_reduce(power, w);
    out.direction = power.prefix(depth);
    return out;
}

}  // namespace lorentz
