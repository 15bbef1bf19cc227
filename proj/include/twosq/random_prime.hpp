#pragma once

#include <cstdint>
#include <random>

#include "twosq/core_arith.hpp"
#include "twosq/error.hpp"

namespace twosq {

/// Uniform-ish prime p = 1 (mod 4) with exactly `bits` bits, by rejection.
/// Uses raw mt19937_64 output only, so a seed gives the same sequence on
/// every standard library.
inline u64 random_prime_1mod4(std::mt19937_64& rng, unsigned bits) {
    if (bits < 3 || bits > 64) throw invalid_input("random_prime_1mod4: bits must be in [3, 64]");
    const u64 top = u64{1} << (bits - 1);
    const u64 low_mask = top - 1;
    for (;;) {
        const u64 candidate = (((rng() & low_mask) | top) & ~u64{3}) | 1;
        if (is_prime(candidate)) return candidate;
    }
}

}  // namespace twosq
