// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Bounds, sample counts and time limits below are the pinned thresholds.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "oracle_support.hpp"
#include "twosq/commands.hpp"
#include "twosq/twosq.hpp"

using namespace twosq;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& what) {
        if (pass) detail = what;
        pass = false;
    }
};

int failures = 0;

void criterion(const char* name, double time_limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (out.pass && secs > time_limit_s) {
        out.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(time_limit_s) + " s");
    }
    if (!out.pass) ++failures;
    std::printf("[%s] %s: %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", name, out.detail.c_str(), secs);
    std::fflush(stdout);
}

bool exact_sum(const Decomposition& d) {
    return oracle::big(d.a) * d.a + oracle::big(d.b) * d.b == oracle::big(d.p) && d.a > 0 && d.a < d.b;
}

Outcome existence_uniqueness_sweep() {
    Outcome out;
    const auto primes = oracle::primes_1mod4_below(1'000'000);
    for (u64 n : primes) {
        const PrimeOneMod4 p = make_prime_1mod4(n);
        const SqrtM1Witness w = find_witness_euler(p);
        const Decomposition sorted = two_squares(w);
        const Decomposition corn = cornacchia(w);
        const RepresentationSet brute = brute_force_two_squares(n);
        if (brute.reps.size() != 1) {
            out.fail("p = " + std::to_string(n) + ": brute force found " + std::to_string(brute.reps.size()));
        } else if (!(sorted == corn) || sorted.a != brute.reps[0].a || sorted.b != brute.reps[0].b || !exact_sum(sorted)) {
            out.fail("p = " + std::to_string(n) + ": routes disagree");
        }
    }
    if (primes.size() != 39'175) out.fail("expected 39175 primes, sieve gave " + std::to_string(primes.size()));
    if (out.pass) out.detail = std::to_string(primes.size()) + " primes below 10^6, three routes agree, all unique";
    return out;
}

Outcome sorted_arrangement() {
    Outcome out;
    const auto primes = oracle::primes_1mod4_below(100'000);
    for (u64 n : primes) {
        const ResidueTable t = build_table(find_witness_euler(make_prime_1mod4(n)));
        const UniquenessCertificate c = verify_uniqueness(t);
        if (!(c.y1 <= c.r && c.r < c.y2)) out.fail("p = " + std::to_string(n));
    }
    if (out.pass) out.detail = "y_1 <= R < y_2 for all " + std::to_string(primes.size()) + " primes below 10^5";
    return out;
}

Outcome gap_descent_audit() {
    Outcome out;
    const auto primes = oracle::primes_1mod4_below(100'000);
    std::size_t validated = 0;
    std::array<std::size_t, 4> cases{};
    for (u64 n : primes) {
        const ResidueTable t = build_table(find_witness_euler(make_prime_1mod4(n)));
        for (const GapWitness& g : all_gap_witnesses(t)) {  // throws on a case-assertion failure
            ++validated;
            ++cases[static_cast<std::size_t>(g.gap_case)];
        }
    }
    const unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    const cli::ScanStats stats = cli::run_scan(1, 99'999, jobs);
    if (!stats.failures.empty()) out.fail("scan failure: " + stats.failures.front());
    if (stats.primes != primes.size()) out.fail("scan visited " + std::to_string(stats.primes) + " primes");
    if (out.pass) {
        out.detail = std::to_string(validated) + " gaps validated (Base " + std::to_string(cases[0]) + ", TailWrap " +
                     std::to_string(cases[1]) + ", Ascending " + std::to_string(cases[2]) + ", Descending " +
                     std::to_string(cases[3]) + "); primes with minimal gap = R: " +
                     std::to_string(stats.min_gap_equals_r) +
                     (stats.min_gap_equals_r == 0 ? " (a gap < R always exists)" : "");
    }
    return out;
}

Outcome thue_inequality() {
    Outcome out;
    std::size_t pairs = 0;
    for (u64 m = 2; m <= 5000; ++m) {
        for (u64 a = 1; a < m; ++a) {
            if (std::gcd(a, m) != 1) continue;
            const ThueWitness w = thue_min(a, m);
            ++pairs;
            const u64 ax = least_residue(static_cast<i64>(a) * w.x, m);
            if (w.value * w.value >= m || ax != w.value) {
                out.fail("a = " + std::to_string(a) + ", m = " + std::to_string(m));
            }
        }
    }
    if (out.pass) out.detail = std::to_string(pairs) + " coprime pairs (a, m), m in [2, 5000], value^2 < m";
    return out;
}

Outcome pairing_argument() {
    Outcome out;
    const auto primes = oracle::primes_1mod4_below(10'000);
    for (u64 n : primes) {
        const PrimeOneMod4 p = make_prime_1mod4(n);
        const InversePairing pr = inverse_pairing(p);
        std::size_t fixed = 0;
        for (const InversePair& q : pr.pairs()) fixed += q.u + q.v == n;
        if (pr.pairs().size() != (n - 3) / 2 || pr.pairs().size() % 2 != 1 || fixed != 1) {
            out.fail("p = " + std::to_string(n) + ": bad partition");
        }
        if (!(find_witness_pairing(p) == find_witness_euler(p))) out.fail("p = " + std::to_string(n) + ": u differs");
    }
    if (out.pass) out.detail = std::to_string(primes.size()) + " primes below 10^4: odd pair count, one fixed pair, witnesses equal";
    return out;
}

Outcome parity_identity_check() {
    Outcome out;
    const auto small = oracle::primes_1mod4_below(1000);
    std::mt19937_64 rng(1801);
    std::size_t done = 0;
    while (done < 1000) {
        u64 n = small[rng() % small.size()] * small[rng() % small.size()];
        if (rng() % 3 == 0) n *= small[rng() % 20];
        const auto reps = brute_force_two_squares(n).reps;
        if (reps.size() < 2) continue;
        const std::size_t i = rng() % reps.size();
        std::size_t j = rng() % (reps.size() - 1);
        if (j >= i) ++j;
        const auto [lo, hi] = std::minmax(i, j);
        const ParityIdentity id =
            parity_identity(n, {reps[lo].b, reps[lo].a}, {reps[hi].b, reps[hi].a});
        if (id.lhs != id.rhs || id.lhs % 2 != 0) out.fail("n = " + std::to_string(n));
        ++done;
    }
    if (out.pass) out.detail = "1000 composites with >= 2 representations, lhs = rhs (even)";
    return out;
}

Outcome large_prime_agreement() {
    Outcome out;
    std::mt19937_64 rng(20250301);
    std::size_t table_checked = 0;
    for (int i = 0; i < 1000; ++i) {
        const unsigned bits = 30 + static_cast<unsigned>(rng() % 33);  // 30 .. 62
        const u64 n = random_prime_1mod4(rng, bits);
        const SqrtM1Witness w = find_witness_euler(make_prime_1mod4(n));
        const Decomposition corn = cornacchia(w);
        if (!exact_sum(corn)) out.fail("cornacchia, p = " + std::to_string(n));
        if (n < (u64{1} << 40)) {
            ++table_checked;
            if (!(two_squares(w) == corn)) out.fail("two_squares disagrees, p = " + std::to_string(n));
        }
    }
    if (out.pass) {
        out.detail = "1000 primes of 30..62 bits exact; two_squares agrees on the " + std::to_string(table_checked) +
                     " below 2^40";
    }
    return out;
}

Outcome kernel_correctness() {
    Outcome out;
    std::mt19937_64 rng(64);
    for (int i = 0; i < 10'000; ++i) {
        const u64 m = std::numeric_limits<u64>::max() - (rng() >> 20);
        const u64 a = rng() % m, b = rng() % m, e = rng();
        if (mod_mul(a, b, m) != oracle::big_mulmod(a, b, m)) out.fail("mod_mul");
        if (mod_pow(a, e, m) != oracle::big_powmod(a, e, m)) out.fail("mod_pow");
    }
    std::size_t sqrt_checked = 0;
    const auto exact = [&](u64 n) {
        const u64 r = floor_sqrt(n);
        ++sqrt_checked;
        const oracle::big R(r), N(n);
        if (!(R * R <= N && (R + 1) * (R + 1) > N)) out.fail("floor_sqrt(" + std::to_string(n) + ")");
    };
    for (int i = 0; i < 250'000; ++i) {
        const u64 s = i < 8 ? std::numeric_limits<std::uint32_t>::max() - i : (rng() >> 32);
        const u64 sq = s * s;
        exact(sq);
        exact(sq == 0 ? 1 : sq - 1);
        exact(sq + 1);
        const u64 any = i < 8 ? std::numeric_limits<u64>::max() - i : rng();
        exact(any);
    }
    if (out.pass) {
        out.detail = "10000 near-2^64 triples match big-integer oracle; floor_sqrt exact on " +
                     std::to_string(sqrt_checked) + " values";
    }
    return out;
}

}  // namespace

int main() {
    criterion("existence+uniqueness sweep", 120, existence_uniqueness_sweep);
    criterion("sorted-arrangement theorem", 30, sorted_arrangement);
    criterion("gap-descent audit", 600, gap_descent_audit);
    criterion("thue inequality", 60, thue_inequality);
    criterion("pairing argument", 600, pairing_argument);
    criterion("parity identity", 600, parity_identity_check);
    criterion("large-prime oracle agreement", 120, large_prime_agreement);
    criterion("kernel correctness", 600, kernel_correctness);
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
