#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "oracle_support.hpp"
#include "twosq/core_arith.hpp"

using namespace twosq;

TEST(LeastResidue, Examples) {
    EXPECT_EQ(least_residue(15, 13), 2u);
    EXPECT_EQ(least_residue(-9, 10), 1u);
    EXPECT_EQ(least_residue(0, 7), 0u);
    EXPECT_EQ(least_residue(std::numeric_limits<i64>::min(), 3), 1u);  // 2^63 = 2 (mod 3)
    EXPECT_EQ(least_residue(-1, std::numeric_limits<u64>::max()), std::numeric_limits<u64>::max() - 1);
}

TEST(LeastResidue, ZeroModulusRejected) {
    EXPECT_THROW(least_residue(5, 0), invalid_modulus);
}

TEST(LeastResidue, RangeAndCongruence) {
    for (i64 m = 1; m <= 10'000; m += 37) {
        for (i64 n = -10'000; n <= 10'000; n += 13) {
            const u64 r = least_residue(n, static_cast<u64>(m));
            ASSERT_LT(r, static_cast<u64>(m));
            ASSERT_EQ((n - static_cast<i64>(r)) % m, 0) << n << " mod " << m;
        }
    }
}

TEST(FloorSqrt, Examples) {
    EXPECT_EQ(floor_sqrt(13), 3u);
    EXPECT_EQ(floor_sqrt(16), 4u);
    EXPECT_EQ(floor_sqrt(u64{1} << 62), u64{1} << 31);
    EXPECT_EQ(floor_sqrt(0), 0u);
    EXPECT_EQ(floor_sqrt(1), 1u);
    EXPECT_EQ(floor_sqrt(std::numeric_limits<u64>::max()), 4294967295u);
}

TEST(FloorSqrt, AllSmall) {
    for (u64 n = 0; n <= 1'000'000; ++n) {
        const u64 r = floor_sqrt(n);
        ASSERT_LE(r * r, n);
        ASSERT_GT((r + 1) * (r + 1), n);
    }
}

TEST(FloorSqrt, NearDoublePrecisionBoundary) {
    // (2^26 + k)^2 brackets 2^52 .. 2^53 where double sqrt starts to misround.
    for (u64 s = (u64{1} << 26) - 50; s < (u64{1} << 27) + 50; s += 997) {
        EXPECT_EQ(floor_sqrt(s * s), s);
        EXPECT_EQ(floor_sqrt(s * s - 1), s - 1);
        EXPECT_EQ(floor_sqrt(s * s + 1), s);
    }
}

TEST(ModMul, Examples) {
    EXPECT_EQ(mod_mul(5, 5, 13), 12u);
    const u64 m = (u64{1} << 61) - 1;
    EXPECT_EQ(mod_mul(m - 1, m - 1, m), 1u);
    EXPECT_EQ(mod_mul(0, 12345, m), 0u);
    EXPECT_THROW(mod_mul(1, 1, 0), invalid_modulus);
}

TEST(ModPow, Examples) {
    EXPECT_EQ(mod_pow(2, 6, 13), 12u);
    EXPECT_EQ(mod_pow(5, 2, 13), 12u);
    for (u64 m = 2; m < 50; ++m) EXPECT_EQ(mod_pow(m + 3, 0, m), 1u);
    EXPECT_THROW(mod_pow(2, 2, 0), invalid_modulus);
}

TEST(ModArith, MatchesBigIntegerOracle) {
    std::mt19937_64 rng(20261014);
    for (int i = 0; i < 2000; ++i) {
        const u64 m = std::numeric_limits<u64>::max() - (rng() >> 20);
        const u64 a = rng() % m, b = rng() % m, e = rng();
        ASSERT_EQ(mod_mul(a, b, m), oracle::big_mulmod(a, b, m));
        ASSERT_EQ(mod_pow(a, e, m), oracle::big_powmod(a, e, m));
    }
}

TEST(ModInverse, Basic) {
    EXPECT_EQ(mod_inverse(2, 13), 7u);
    EXPECT_EQ(mod_inverse(3, 13), 9u);
    EXPECT_THROW(mod_inverse(4, 10), invalid_input);
}

TEST(IsPrime, Examples) {
    EXPECT_TRUE(is_prime(13));
    EXPECT_FALSE(is_prime(561));
    EXPECT_FALSE(is_prime(1));
    EXPECT_FALSE(is_prime(0));
    EXPECT_TRUE(is_prime(2));
    EXPECT_TRUE(is_prime(18446744073709551557ull));  // largest 64-bit prime
    EXPECT_FALSE(is_prime(3215031751ull));           // strong pseudoprime to bases 2, 3, 5, 7
    EXPECT_FALSE(is_prime(3825123056546413051ull));  // strong pseudoprime to bases 2 .. 23
    EXPECT_TRUE(is_prime((u64{1} << 61) - 1));
}

TEST(IsPrime, MatchesSieveBelowOneMillion) {
    const auto sieve = oracle::sieve(1'000'001);
    for (u64 n = 0; n <= 1'000'000; ++n) ASSERT_EQ(is_prime(n), sieve[n]) << n;
}

TEST(IsPrime, MatchesTrialDivisionOnRandomLarge) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 300; ++i) {
        const u64 n = (rng() >> 24) | 1;  // below 2^40 so trial division stays cheap
        ASSERT_EQ(is_prime(n), oracle::trial_division_prime(n)) << n;
    }
}

TEST(MakePrime1Mod4, AcceptsAndCarriesRoot) {
    const PrimeOneMod4 p = make_prime_1mod4(13);
    EXPECT_EQ(p.p(), 13u);
    EXPECT_EQ(p.r(), 3u);
    const PrimeOneMod4 big = make_prime_1mod4(4611686018427388073ull);  // first prime = 1 (mod 4) above 2^62
    EXPECT_EQ(big.r(), floor_sqrt(big.p()));
}

TEST(MakePrime1Mod4, DistinctFailures) {
    const auto kind_of = [](u64 n) {
        try {
            make_prime_1mod4(n);
        } catch (const validation_error& e) {
            return e.kind();
        }
        ADD_FAILURE() << n << " accepted";
        return validation_failure::not_prime;
    };
    EXPECT_EQ(kind_of(7), validation_failure::three_mod_four);
    EXPECT_EQ(kind_of(15), validation_failure::composite);
    EXPECT_EQ(kind_of(2), validation_failure::even_prime);
    EXPECT_EQ(kind_of(1), validation_failure::not_prime);
    EXPECT_EQ(kind_of(0), validation_failure::not_prime);
    EXPECT_EQ(kind_of(25), validation_failure::composite);
}
