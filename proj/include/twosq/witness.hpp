#pragma once

/**
 * @file witness.hpp
 * @brief Square roots of -1 modulo a prime p = 1 (mod 4).
 *
 * Two independent routes produce the root:
 *  - the inverse pairing of {2, ..., p-2}: the pairs {v, v^-1} number
 *    (p-3)/2, which is odd, so they cannot be regrouped into pairs
 *    {p-v, v^-1} with product -1; hence some pair is {u, p-u} and
 *    u^2 = -1. Theta(p), so it is limited to small p.
 *  - Euler's criterion: for a nonresidue n, n^((p-1)/4) squares to -1.
 *
 * Both return the canonical root u < p/2.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "twosq/core_arith.hpp"
#include "twosq/error.hpp"

namespace twosq {

inline constexpr u64 default_pairing_bound = 1'000'000;

/// Selects which of the two roots {u, p-u} a computation uses.
enum class Root {
    lower,  // u < p/2
    upper,  // p - u
};

/// u with u^2 = -1 (mod p), canonicalized to 1 < u < p/2.
class SqrtM1Witness {
public:
    /// Validates and canonicalizes an arbitrary root of -1.
    static SqrtM1Witness from_root(const PrimeOneMod4& p, u64 root) {
        const u64 n = p.p();
        if (root == 0 || root >= n || mod_mul(root, root, n) != n - 1) {
            throw invalid_input(std::to_string(root) + " is not a square root of -1 mod " + std::to_string(n));
        }
        return SqrtM1Witness(p, std::min(root, n - root));
    }

    const PrimeOneMod4& prime() const noexcept { return p_; }
    u64 u() const noexcept { return u_; }

    u64 root(Root which) const noexcept { return which == Root::lower ? u_ : p_.p() - u_; }

    friend bool operator==(const SqrtM1Witness&, const SqrtM1Witness&) = default;

private:
    SqrtM1Witness(const PrimeOneMod4& p, u64 u) : p_(p), u_(u) {}

    PrimeOneMod4 p_;
    u64 u_;
};

struct InversePair {
    u64 u;  // smaller element
    u64 v;
    friend bool operator==(const InversePair&, const InversePair&) = default;
};

/// The partition of {2, ..., p-2} into pairs {u, v} with uv = 1 (mod p),
/// ordered by smaller element.
class InversePairing {
public:
    const PrimeOneMod4& prime() const noexcept { return p_; }
    const std::vector<InversePair>& pairs() const noexcept { return pairs_; }
    std::size_t fixed_pair_index() const noexcept { return fixed_; }
    const InversePair& fixed_pair() const noexcept { return pairs_[fixed_]; }

private:
    InversePairing(const PrimeOneMod4& p, std::vector<InversePair> pairs, std::size_t fixed)
        : p_(p), pairs_(std::move(pairs)), fixed_(fixed) {}
    friend InversePairing inverse_pairing(const PrimeOneMod4&, u64);

    PrimeOneMod4 p_;
    std::vector<InversePair> pairs_;
    std::size_t fixed_;
};

inline InversePairing inverse_pairing(const PrimeOneMod4& prime, u64 bound = default_pairing_bound) {
    const u64 p = prime.p();
    if (p > bound) {
        throw bound_exceeded("inverse pairing is limited to p <= " + std::to_string(bound) +
                                 "; use the Euler path",
                             bound);
    }
    std::vector<bool> seen(p, false);
    std::vector<InversePair> pairs;
    pairs.reserve((p - 3) / 2);
    std::size_t fixed = 0;
    std::size_t fixed_count = 0;
    for (u64 v = 2; v <= p - 2; ++v) {
        if (seen[v]) continue;
        const u64 w = mod_inverse(v, p);
        // v = v^-1 only for v = +-1, which are excluded.
        detail::check(w != v && w >= 2 && w <= p - 2 && !seen[w], "inverse_pairing: bad inverse");
        seen[v] = seen[w] = true;
        if (v + w == p) {
            fixed = pairs.size();
            ++fixed_count;
        }
        pairs.push_back({v, w});
    }
    detail::check(pairs.size() == (p - 3) / 2 && pairs.size() % 2 == 1,
                  "inverse_pairing: pair count is not (p-3)/2 or not odd");
    detail::check(fixed_count == 1, "inverse_pairing: expected exactly one pair {u, p-u}");
    return InversePairing(prime, std::move(pairs), fixed);
}

inline SqrtM1Witness find_witness_pairing(const PrimeOneMod4& p, u64 bound = default_pairing_bound) {
    const InversePairing pairing = inverse_pairing(p, bound);
    return SqrtM1Witness::from_root(p, pairing.fixed_pair().u);
}

/// Smallest n in 2, 3, 4, ... with n^((p-1)/2) = -1 (mod p). The least
/// nonresidue is always prime, so the scan only visits 2 and odd n.
inline u64 find_nonresidue(const PrimeOneMod4& prime) {
    const u64 p = prime.p();
    const u64 half = (p - 1) / 2;
    for (u64 n = 2; n < p; n += (n == 2 ? 1 : 2)) {
        if (mod_pow(n, half, p) == p - 1) return n;
    }
    throw invariant_violation("find_nonresidue: no quadratic nonresidue found");
}

inline SqrtM1Witness find_witness_euler(const PrimeOneMod4& prime) {
    const u64 p = prime.p();
    const u64 root = mod_pow(find_nonresidue(prime), (p - 1) / 4, p);
    detail::check(mod_mul(root, root, p) == p - 1, "find_witness_euler: root does not square to -1");
    return SqrtM1Witness::from_root(prime, root);
}

}  // namespace twosq
