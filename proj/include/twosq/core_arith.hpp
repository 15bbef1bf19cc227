#pragma once

/**
 * @file core_arith.hpp
 * @brief 64-bit integer and modular arithmetic kernels.
 *
 * Every routine works on machine words. Products are formed in 128-bit
 * intermediates, so mod_mul and mod_pow are exact for any modulus below
 * 2^64. Primality is deterministic: trial division by the primes below 64,
 * then Miller-Rabin with the first twelve prime bases, which has no
 * counterexample below 3.3 * 10^24.
 */

#include <array>
#include <bit>
#include <cstdint>
#include <string>

#include "twosq/error.hpp"

namespace twosq {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

/// <n>_m: the representative of n modulo m in [0, m). Handles negative n.
constexpr u64 least_residue(i64 n, u64 m) {
    if (m == 0) throw invalid_modulus();
    i128 r = static_cast<i128>(n) % static_cast<i128>(m);
    if (r < 0) r += m;
    return static_cast<u64>(r);
}

/// floor(sqrt(n)), exact over the full 64-bit range.
constexpr u64 floor_sqrt(u64 n) {
    if (n < 2) return n;
    // Start at a power of two >= sqrt(n); Newton's iterates then decrease
    // monotonically until they reach the floor.
    const int half_bits = (std::bit_width(n) + 1) / 2;
    u64 x = u64{1} << half_bits;
    for (;;) {
        const u64 next = (x + n / x) / 2;
        if (next >= x) break;
        x = next;
    }
    while (static_cast<u128>(x) * x > n) --x;
    while (static_cast<u128>(x + 1) * (x + 1) <= n) ++x;
    return x;
}

constexpr bool is_perfect_square(u64 n) {
    const u64 r = floor_sqrt(n);
    return r * r == n;
}

/// (a * b) mod m through a 128-bit product. Inputs need not be reduced.
constexpr u64 mod_mul(u64 a, u64 b, u64 m) {
    if (m == 0) throw invalid_modulus();
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

/// (a + b) mod m for reduced a, b < m, without overflow.
constexpr u64 mod_add(u64 a, u64 b, u64 m) {
    return a >= m - b ? a - (m - b) : a + b;
}

constexpr u64 mod_pow(u64 base, u64 exp, u64 m) {
    if (m == 0) throw invalid_modulus();
    u64 result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mod_mul(result, base, m);
        base = mod_mul(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Inverse of a modulo m by the extended Euclidean algorithm.
inline u64 mod_inverse(u64 a, u64 m) {
    if (m == 0) throw invalid_modulus();
    i128 old_r = a % m, r = m;
    i128 old_s = 1, s = 0;
    while (r != 0) {
        const i128 q = old_r / r;
        i128 t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) throw invalid_input("mod_inverse: argument is not a unit");
    old_s %= static_cast<i128>(m);
    if (old_s < 0) old_s += m;
    return static_cast<u64>(old_s);
}

namespace detail {

inline constexpr std::array<u64, 18> small_primes = {
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61};

constexpr bool miller_rabin_round(u64 n, u64 d, int s, u64 base) {
    u64 x = mod_pow(base, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mod_mul(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace detail

/// Deterministic primality for every 64-bit n.
constexpr bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : detail::small_primes) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    if (n < 67 * 67) return true;

    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 base : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (!detail::miller_rabin_round(n, d, s, base)) return false;
    }
    return true;
}

/// A prime p with p = 1 (mod 4), together with R = floor(sqrt(p)).
/// Only make_prime_1mod4 can construct one.
class PrimeOneMod4 {
public:
    constexpr u64 p() const noexcept { return p_; }
    constexpr u64 r() const noexcept { return r_; }

    friend constexpr bool operator==(const PrimeOneMod4&, const PrimeOneMod4&) = default;

private:
    constexpr PrimeOneMod4(u64 p, u64 r) : p_(p), r_(r) {}
    friend PrimeOneMod4 make_prime_1mod4(u64 n);

    u64 p_;
    u64 r_;
};

inline PrimeOneMod4 make_prime_1mod4(u64 n) {
    const std::string s = std::to_string(n);
    if (n == 2) {
        throw validation_error(validation_failure::even_prime, n,
                               "2 = 1^2 + 1^2 has equal legs; only primes p = 1 (mod 4) are accepted");
    }
    if (n < 2) throw validation_error(validation_failure::not_prime, n, s + " is not prime");
    if (!is_prime(n)) throw validation_error(validation_failure::composite, n, s + " is composite");
    if (n % 4 == 3) {
        throw validation_error(validation_failure::three_mod_four, n,
                               s + " ≡ 3 (mod 4): no representation exists");
    }
    const u64 r = floor_sqrt(n);
    detail::check(r * r < n && static_cast<u128>(r + 1) * (r + 1) > n, "PrimeOneMod4: bad floor_sqrt");
    return PrimeOneMod4(n, r);
}

}  // namespace twosq
