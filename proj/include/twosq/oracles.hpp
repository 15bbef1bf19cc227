#pragma once

// Independent decomposition routes used to cross-check two_squares.

#include <optional>
#include <string>
#include <vector>

#include "twosq/core_arith.hpp"
#include "twosq/error.hpp"
#include "twosq/squares.hpp"
#include "twosq/witness.hpp"

namespace twosq {

inline constexpr u64 brute_force_bound = 1'000'000'000'000;

struct Representation {
    u64 a;
    u64 b;
    friend bool operator==(const Representation&, const Representation&) = default;
};

/// Every (a, b) with 0 < a <= b and a^2 + b^2 = n, increasing in a.
struct RepresentationSet {
    u64 n;
    std::vector<Representation> reps;
};

inline RepresentationSet brute_force_two_squares(u64 n) {
    if (n > brute_force_bound) {
        throw bound_exceeded("brute force is limited to n <= 10^12", brute_force_bound);
    }
    RepresentationSet out{n, {}};
    const u64 top = floor_sqrt(n / 2);
    for (u64 a = 1; a <= top; ++a) {
        const u64 rest = n - a * a;
        const u64 b = floor_sqrt(rest);
        if (b * b == rest && b >= a) out.reps.push_back({a, b});
    }
    return out;
}

/// Cornacchia's descent: Euclid on (p, p - u) stops at the first remainder
/// <= R, which is one leg; the other is recovered as floor_sqrt(p - a^2).
inline Decomposition cornacchia(const SqrtM1Witness& w) {
    const u64 p = w.prime().p();
    const u64 r = w.prime().r();
    u64 prev = p;
    u64 cur = w.root(Root::upper);
    while (cur > r) {
        const u64 next = prev % cur;
        prev = cur;
        cur = next;
    }
    const u64 a = cur;
    const u64 b = floor_sqrt(p - a * a);
    return detail::checked_decomposition(p, a, b, "cornacchia");
}

inline Decomposition cornacchia(const PrimeOneMod4& p) { return cornacchia(find_witness_euler(p)); }

struct CrossValidation {
    u64 p;
    u64 u;
    std::optional<Decomposition> sorted_residue;  // two_squares
    std::optional<Decomposition> cornacchia;
    std::optional<RepresentationSet> brute_force;  // absent above brute_force_bound
    bool agree = false;
    bool unique = false;
    std::string failure;  // empty when ok

    bool ok() const noexcept { return failure.empty(); }
};

/// Runs all routes and reports agreement. Defects are recorded in
/// `failure` rather than thrown, so a scan can keep going.
inline CrossValidation cross_validate(const PrimeOneMod4& prime) {
    CrossValidation rep{prime.p(), 0, {}, {}, {}, false, false, {}};
    const auto fail = [&](const std::string& what) {
        if (rep.failure.empty()) rep.failure = "p = " + std::to_string(prime.p()) + ": " + what;
    };
    try {
        const SqrtM1Witness w = find_witness_euler(prime);
        rep.u = w.u();
        rep.sorted_residue = two_squares(w);
        rep.cornacchia = cornacchia(w);
        rep.agree = *rep.sorted_residue == *rep.cornacchia;
        rep.unique = true;
        if (prime.p() <= brute_force_bound) {
            rep.brute_force = brute_force_two_squares(prime.p());
            const auto& reps = rep.brute_force->reps;
            rep.unique = reps.size() == 1;
            rep.agree = rep.agree && !reps.empty() && reps.front().a == rep.sorted_residue->a && reps.front().b == rep.sorted_residue->b;
            if (!rep.unique) fail("brute force found " + std::to_string(reps.size()) + " representations");
        }
        if (!rep.agree) {
            fail("routes disagree: two_squares (" + std::to_string(rep.sorted_residue->a) + ", " + std::to_string(rep.sorted_residue->b) +
                 "), cornacchia (" + std::to_string(rep.cornacchia->a) + ", " + std::to_string(rep.cornacchia->b) +
                 "), u = " + std::to_string(rep.u));
        }
    } catch (const std::exception& e) {
        fail(e.what());
    }
    return rep;
}

}  // namespace twosq
