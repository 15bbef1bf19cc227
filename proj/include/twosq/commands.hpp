#pragma once

/**
 * @file commands.hpp
 * @brief Implementation of the `twosq` command-line subcommands.
 *
 * Each cmd_* function writes results to `out`, diagnostics to `err`, and
 * returns the process exit code:
 *   0 success, 1 invariant failure, 2 invalid input, 3 resource-bound refusal.
 * tools/twosq.cpp only parses arguments and dispatches here.
 */

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "json.hpp"

#include "twosq/core_arith.hpp"
#include "twosq/error.hpp"
#include "twosq/oracles.hpp"
#include "twosq/random_prime.hpp"
#include "twosq/squares.hpp"
#include "twosq/witness.hpp"

namespace twosq::cli {

using json = nlohmann::ordered_json;

enum exit_code : int {
    exit_ok = 0,
    exit_invariant = 1,
    exit_invalid = 2,
    exit_bound = 3,
};

inline constexpr u64 scan_pairing_bound = 10'000;
inline constexpr std::size_t trace_row_cap = 10;
inline constexpr unsigned paper_bench_max_bits = 40;

inline u64 parse_natural(std::string_view text) {
    u64 value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last) {
        throw invalid_input("'" + std::string(text) + "' is not a decimal integer in [0, 2^64)");
    }
    return value;
}

/// Table-path bound, overridable through TWOSQ_TABLE_BOUND.
inline u64 table_bound_from_env() {
    const char* env = std::getenv("TWOSQ_TABLE_BOUND");
    if (env == nullptr || *env == '\0') return default_table_bound;
    return parse_natural(env);
}

/// Runs `body`, mapping library exceptions onto exit codes.
inline int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const invalid_input& e) {
        err << e.what() << '\n';
        return exit_invalid;
    } catch (const bound_exceeded& e) {
        err << e.what() << '\n';
        return exit_bound;
    } catch (const invariant_violation& e) {
        err << "invariant failure: " << e.what() << '\n';
        return exit_invariant;
    }
}

// ---------------------------------------------------------------------------
// decompose

inline int cmd_decompose(std::string_view arg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const PrimeOneMod4 p = make_prime_1mod4(parse_natural(arg));
        const Decomposition d = two_squares(p);
        out << d.p << " = " << d.a << "^2 + " << d.b << "^2\n";
        return exit_ok;
    });
}

// ---------------------------------------------------------------------------
// trace

struct PairingSummary {
    std::size_t pair_count;
    InversePair fixed_pair;
};

/// Everything the construction produces for one prime.
struct TraceRecord {
    u64 p = 0;
    u64 u = 0;
    u64 r = 0;
    std::vector<ResidueRow> rows;  // possibly elided to head and tail
    std::size_t rows_total = 0;
    u64 y1 = 0;
    u64 y2 = 0;
    Decomposition decomposition{};
    std::vector<GapWitness> gaps;
    UniquenessCertificate certificate{};
    std::optional<PairingSummary> pairing;
};

inline TraceRecord make_trace(const PrimeOneMod4& p, bool full_table, u64 table_bound = default_table_bound,
                              u64 pairing_bound = default_pairing_bound) {
    const SqrtM1Witness w = find_witness_euler(p);
    const ResidueTable t = build_table(w, Root::lower, table_bound);
    TraceRecord rec;
    rec.p = p.p();
    rec.u = w.u();
    rec.r = p.r();
    rec.rows_total = t.rows().size();
    if (full_table || t.rows().size() <= 2 * trace_row_cap) {
        rec.rows = t.rows();
    } else {
        rec.rows.assign(t.rows().begin(), t.rows().begin() + trace_row_cap);
        rec.rows.insert(rec.rows.end(), t.rows().end() - trace_row_cap, t.rows().end());
    }
    rec.certificate = verify_uniqueness(t);
    rec.y1 = rec.certificate.y1;
    rec.y2 = rec.certificate.y2;
    rec.decomposition = two_squares(w);
    rec.gaps = all_gap_witnesses(t);
    if (p.p() <= pairing_bound) {
        const InversePairing pairing = inverse_pairing(p, pairing_bound);
        rec.pairing = PairingSummary{pairing.pairs().size(), pairing.fixed_pair()};
    }
    return rec;
}

/// Re-checks every field against its defining relation.
inline void validate(const TraceRecord& rec) {
    using detail::check;
    const u64 p = rec.p;
    check(is_prime(p) && p % 4 == 1, "trace: p is not a prime = 1 (mod 4)");
    check(rec.r == floor_sqrt(p), "trace: r != floor(sqrt(p))");
    check(mod_mul(rec.u, rec.u, p) == p - 1 && 2 * rec.u < p, "trace: u^2 != -1 or u not canonical");
    check(rec.rows_total == rec.r, "trace: row count != R");
    for (std::size_t i = 0; i < rec.rows.size(); ++i) {
        const ResidueRow& row = rec.rows[i];
        check(row.x >= 1 && row.x <= rec.r && mod_mul(rec.u, row.x, p) == row.y, "trace: row with y != <u x>_p");
        if (i > 0) check(rec.rows[i - 1].y < row.y, "trace: rows not sorted by y");
    }
    check(!rec.rows.empty() && rec.rows.front().y == rec.y1, "trace: y1 is not the first row");
    check(rec.rows.size() < 2 || rec.rows[1].y == rec.y2, "trace: y2 is not the second row");
    check(rec.y1 <= rec.r && rec.r < rec.y2, "trace: y_1 <= R < y_2 fails");
    const Decomposition& d = rec.decomposition;
    check(d.p == p && d.a < d.b && static_cast<u128>(d.a) * d.a + static_cast<u128>(d.b) * d.b == p,
          "trace: a^2 + b^2 != p");
    check(!rec.gaps.empty(), "trace: no gap <= R");
    for (const GapWitness& g : rec.gaps) {
        check(g.gap_value <= rec.r && g.implied_small >= rec.y1 && g.implied_small <= rec.r,
              "trace: gap witness out of range");
    }
    if (rec.pairing) {
        const PairingSummary& s = *rec.pairing;
        check(s.pair_count == (p - 3) / 2 && s.pair_count % 2 == 1, "trace: pair count");
        check(s.fixed_pair.u + s.fixed_pair.v == p && mod_mul(s.fixed_pair.u, s.fixed_pair.v, p) == 1,
              "trace: fixed pair");
    }
}

inline json to_json(const GapWitness& g) {
    return json{{"index", g.gap_index},
                {"value", g.gap_value},
                {"case", std::string(to_string(g.gap_case))},
                {"implied_small", g.implied_small}};
}

inline json to_json(const TraceRecord& rec) {
    validate(rec);
    json rows = json::array();
    for (const ResidueRow& row : rec.rows) rows.push_back({row.x, row.y});
    json gaps = json::array();
    for (const GapWitness& g : rec.gaps) gaps.push_back(to_json(g));
    json pairing = nullptr;
    if (rec.pairing) {
        pairing = json{{"pair_count", rec.pairing->pair_count},
                       {"fixed_pair", {rec.pairing->fixed_pair.u, rec.pairing->fixed_pair.v}}};
    }
    return json{{"p", rec.p},
                {"u", rec.u},
                {"r", rec.r},
                {"rows", rows},
                {"rows_total", rec.rows_total},
                {"rows_elided", rec.rows_total - rec.rows.size()},
                {"y1", rec.y1},
                {"y2", rec.y2},
                {"a", rec.decomposition.a},
                {"b", rec.decomposition.b},
                {"gaps", gaps},
                {"uniqueness", {{"y1", rec.certificate.y1}, {"y2", rec.certificate.y2}, {"r", rec.certificate.r}}},
                {"pairing", pairing}};
}

inline void write_text(const TraceRecord& rec, std::ostream& out) {
    validate(rec);
    out << "p = " << rec.p << ", R = " << rec.r << ", u = " << rec.u << "  (u^2 ≡ -1 mod p)\n";
    out << "rows (x, y) sorted by y, " << rec.rows_total << " total";
    if (rec.rows.size() < rec.rows_total) out << ", " << rec.rows_total - rec.rows.size() << " elided";
    out << ":\n";
    for (std::size_t i = 0; i < rec.rows.size(); ++i) {
        if (rec.rows.size() < rec.rows_total && i == trace_row_cap) out << "  ...\n";
        out << "  (" << rec.rows[i].x << ", " << rec.rows[i].y << ")\n";
    }
    out << "y_1 = " << rec.y1 << " <= R = " << rec.r << " < y_2 = " << rec.y2 << '\n';
    out << rec.p << " = " << rec.decomposition.a << "^2 + " << rec.decomposition.b << "^2\n";
    out << "gaps <= R:\n";
    for (const GapWitness& g : rec.gaps) {
        out << "  index " << g.gap_index << ": gap " << g.gap_value << ", " << to_string(g.gap_case)
            << ", implied " << g.implied_small << '\n';
    }
    if (rec.pairing) {
        out << "pairing: " << rec.pairing->pair_count << " pairs, fixed pair {" << rec.pairing->fixed_pair.u << ", "
            << rec.pairing->fixed_pair.v << "}\n";
    }
}

enum class TraceFormat { json, text };

struct TraceOptions {
    TraceFormat format = TraceFormat::json;
    bool full_table = false;
    u64 table_bound = default_table_bound;
};

inline int cmd_trace(std::string_view arg, const TraceOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const PrimeOneMod4 p = make_prime_1mod4(parse_natural(arg));
        if (p.p() > opts.table_bound) {
            err << p.p() << " exceeds the table bound " << opts.table_bound
                << "; use `decompose` for a decomposition without a trace\n";
            return int{exit_bound};
        }
        const TraceRecord rec = make_trace(p, opts.full_table, opts.table_bound);
        if (opts.format == TraceFormat::json) {
            out << to_json(rec).dump(2) << '\n';
        } else {
            write_text(rec, out);
        }
        return int{exit_ok};
    });
}

// ---------------------------------------------------------------------------
// scan

inline constexpr std::size_t case_count = 4;

struct PrimeScanResult {
    u64 p = 0;
    u64 r = 0;
    std::string failure;
    GapCase smallest_case = GapCase::base;
    std::array<std::size_t, case_count> all_cases{};
    double y1_ratio = 0.0;
    u64 min_gap = 0;
    bool pairing_checked = false;
};

inline PrimeScanResult scan_one(u64 n, u64 table_bound) {
    PrimeScanResult res;
    res.p = n;
    try {
        const PrimeOneMod4 p = make_prime_1mod4(n);
        res.r = p.r();
        const CrossValidation cv = cross_validate(p);
        if (!cv.ok()) {
            res.failure = cv.failure;
            return res;
        }
        const SqrtM1Witness w = find_witness_euler(p);
        const ResidueTable t = build_table(w, Root::lower, table_bound);
        const UniquenessCertificate cert = verify_uniqueness(t);
        const std::vector<GapWitness> gaps = all_gap_witnesses(t);
        res.smallest_case = gap_witness(t).gap_case;
        for (const GapWitness& g : gaps) ++res.all_cases[static_cast<std::size_t>(g.gap_case)];
        const std::vector<u64> diffs = telescoping_gaps(t);
        res.min_gap = *std::min_element(diffs.begin(), diffs.end());
        res.y1_ratio = static_cast<double>(cert.y1) / std::sqrt(static_cast<double>(n));
        if (n <= scan_pairing_bound) {
            res.pairing_checked = true;
            detail::check(find_witness_pairing(p) == w, "pairing and Euler witnesses differ");
        }
    } catch (const std::exception& e) {
        res.failure = "p = " + std::to_string(n) + ": " + e.what();
    }
    return res;
}

struct ScanStats {
    u64 lo = 0;
    u64 hi = 0;
    std::size_t primes = 0;
    std::array<std::size_t, case_count> cases{};      // smallest qualifying gap, one per prime
    std::array<std::size_t, case_count> all_cases{};  // every qualifying gap
    std::optional<double> ratio_min, ratio_max, ratio_mean;
    std::vector<double> ratio_deciles;
    std::size_t min_gap_equals_r = 0;
    std::vector<u64> min_gap_equals_r_primes;  // first 100
    std::size_t pairing_checked = 0;
    std::vector<std::string> failures;
};

/// Primes p = 1 (mod 4) in [lo, hi], ascending.
inline std::vector<u64> primes_1mod4_in(u64 lo, u64 hi) {
    std::vector<u64> out;
    u64 n = lo <= 5 ? 5 : lo + ((5 - lo % 4) % 4);
    for (; n <= hi; n += 4) {
        if (is_prime(n)) out.push_back(n);
        if (n > hi - 4) break;
    }
    return out;
}

inline ScanStats run_scan(u64 lo, u64 hi, unsigned jobs, u64 table_bound = default_table_bound) {
    if (lo > hi) throw invalid_input("scan: lo > hi");
    if (hi > table_bound) {
        throw bound_exceeded("scan: hi = " + std::to_string(hi) + " exceeds the table bound " +
                                 std::to_string(table_bound),
                             table_bound);
    }
    const std::vector<u64> primes = primes_1mod4_in(lo, hi);
    std::vector<PrimeScanResult> results(primes.size());

    jobs = std::max(1u, jobs);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < primes.size(); i = next++) results[i] = scan_one(primes[i], table_bound);
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }

    // Merge strictly in ascending p so the output does not depend on jobs.
    ScanStats s;
    s.lo = lo;
    s.hi = hi;
    s.primes = results.size();
    std::vector<double> ratios;
    double sum = 0.0;
    for (const PrimeScanResult& res : results) {
        if (!res.failure.empty()) {
            s.failures.push_back(res.failure);
            continue;
        }
        ++s.cases[static_cast<std::size_t>(res.smallest_case)];
        for (std::size_t c = 0; c < case_count; ++c) s.all_cases[c] += res.all_cases[c];
        ratios.push_back(res.y1_ratio);
        sum += res.y1_ratio;
        if (res.min_gap == res.r) {
            ++s.min_gap_equals_r;
            if (s.min_gap_equals_r_primes.size() < 100) s.min_gap_equals_r_primes.push_back(res.p);
        }
        if (res.pairing_checked) ++s.pairing_checked;
    }
    if (!ratios.empty()) {
        s.ratio_mean = sum / static_cast<double>(ratios.size());
        std::sort(ratios.begin(), ratios.end());
        s.ratio_min = ratios.front();
        s.ratio_max = ratios.back();
        const std::size_t n = ratios.size();
        for (std::size_t k = 1; k <= 9; ++k) s.ratio_deciles.push_back(ratios[(k * n + 9) / 10 - 1]);
    }
    return s;
}

inline json to_json(const ScanStats& s) {
    const auto hist = [](const std::array<std::size_t, case_count>& h) {
        json j = json::object();
        for (std::size_t c = 0; c < case_count; ++c) j[std::string(to_string(static_cast<GapCase>(c)))] = h[c];
        return j;
    };
    const auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    return json{{"range", {s.lo, s.hi}},
                {"primes", s.primes},
                {"cases", hist(s.cases)},
                {"all_gap_cases", hist(s.all_cases)},
                {"y1_over_sqrt_p",
                 {{"min", opt(s.ratio_min)},
                  {"max", opt(s.ratio_max)},
                  {"mean", opt(s.ratio_mean)},
                  {"deciles", s.ratio_deciles}}},
                {"min_gap_equals_r", s.min_gap_equals_r},
                {"min_gap_equals_r_primes", s.min_gap_equals_r_primes},
                {"pairing_checked", s.pairing_checked},
                {"failures", s.failures.size()},
                {"failure_details", s.failures}};
}

struct ScanOptions {
    unsigned jobs = 1;
    std::optional<std::string> stats_out;
    u64 table_bound = default_table_bound;
};

inline int cmd_scan(std::string_view lo_arg, std::string_view hi_arg, const ScanOptions& opts, std::ostream& out,
                    std::ostream& err) {
    return guarded(err, [&] {
        const ScanStats stats = run_scan(parse_natural(lo_arg), parse_natural(hi_arg), opts.jobs, opts.table_bound);
        const std::string text = to_json(stats).dump(2) + "\n";
        out << text;
        if (opts.stats_out) {
            std::ofstream file(*opts.stats_out, std::ios::binary);
            if (!file) throw invalid_input("cannot write " + *opts.stats_out);
            file << text;
        }
        for (const std::string& f : stats.failures) err << "failure: " << f << '\n';
        return stats.failures.empty() ? int{exit_ok} : int{exit_invariant};
    });
}

// ---------------------------------------------------------------------------
// thue

inline int cmd_thue(std::string_view a_arg, std::string_view m_arg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const u64 a = parse_natural(a_arg);
        const u64 m = parse_natural(m_arg);
        const ThueWitness w = thue_min(a, m);
        char bound[64];
        std::snprintf(bound, sizeof bound, "%.6f", std::sqrt(static_cast<double>(m)));
        out << "min <" << a << "x>_" << m << " = " << w.value << " at x = " << w.x << ", bound sqrt(" << m
            << ") ≈ " << bound << '\n';
        return int{exit_ok};
    });
}

// ---------------------------------------------------------------------------
// sqrtm1

inline int cmd_sqrtm1(std::string_view arg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const PrimeOneMod4 p = make_prime_1mod4(parse_natural(arg));
        const u64 n = find_nonresidue(p);
        const SqrtM1Witness euler = find_witness_euler(p);
        out << "euler:   u = " << euler.u() << " (nonresidue " << n << ", " << n << "^((p-1)/4) = "
            << mod_pow(n, (p.p() - 1) / 4, p.p()) << ")\n";
        if (p.p() > default_pairing_bound) {
            out << "pairing: skipped (p > " << default_pairing_bound << ")\n";
            return int{exit_ok};
        }
        const InversePairing pairing = inverse_pairing(p);
        const SqrtM1Witness paired = SqrtM1Witness::from_root(p, pairing.fixed_pair().u);
        out << "pairing: u = " << paired.u() << " (" << pairing.pairs().size() << " pairs, fixed pair {"
            << pairing.fixed_pair().u << ", " << pairing.fixed_pair().v << "})\n";
        detail::check(paired == euler, "sqrtm1: witness paths disagree");
        return int{exit_ok};
    });
}

// ---------------------------------------------------------------------------
// bench

enum class BenchMethod { paper, cornacchia, both };

struct BenchOptions {
    BenchMethod method = BenchMethod::both;
    unsigned bits = 30;
    unsigned count = 100;
    u64 seed = 1;
};

struct BenchColumn {
    std::string method;
    std::size_t count = 0;
    double mean_us = 0.0;
    double median_us = 0.0;
    double throughput = 0.0;  // decompositions per second
    std::size_t failures = 0;
};

inline BenchColumn summarize(std::string method, std::vector<double> micros, std::size_t failures) {
    BenchColumn c{std::move(method), micros.size(), 0.0, 0.0, 0.0, failures};
    if (micros.empty()) return c;
    double total = 0.0;
    for (double t : micros) total += t;
    std::sort(micros.begin(), micros.end());
    const std::size_t n = micros.size();
    c.mean_us = total / static_cast<double>(n);
    c.median_us = n % 2 ? micros[n / 2] : 0.5 * (micros[n / 2 - 1] + micros[n / 2]);
    c.throughput = total > 0.0 ? 1e6 * static_cast<double>(n) / total : 0.0;
    return c;
}

inline std::vector<BenchColumn> run_bench(const BenchOptions& opts) {
    const bool paper = opts.method != BenchMethod::cornacchia;
    const bool corn = opts.method != BenchMethod::paper;
    if (paper && opts.bits > paper_bench_max_bits) {
        throw invalid_input("paper method bounded at " + std::to_string(paper_bench_max_bits) + " bits");
    }
    if (opts.bits < 3 || opts.bits > 63) throw invalid_input("bits must be in [3, 63]");
    if (opts.count == 0) throw invalid_input("count must be positive");

    std::mt19937_64 rng(opts.seed);
    std::vector<u64> primes(opts.count);
    for (u64& p : primes) p = random_prime_1mod4(rng, opts.bits);

    using clock = std::chrono::steady_clock;
    const auto time_us = [](auto&& fn) {
        const auto t0 = clock::now();
        auto result = fn();
        const auto t1 = clock::now();
        return std::pair{result, std::chrono::duration<double, std::micro>(t1 - t0).count()};
    };
    const auto valid = [](const PrimeOneMod4& p, const Decomposition& d) {
        return d.p == p.p() && d.a < d.b && static_cast<u128>(d.a) * d.a + static_cast<u128>(d.b) * d.b == p.p();
    };

    std::vector<double> paper_us, corn_us;
    std::size_t paper_fail = 0, corn_fail = 0;
    for (u64 n : primes) {
        const PrimeOneMod4 p = make_prime_1mod4(n);
        std::optional<Decomposition> dp, dc;
        if (paper) {
            try {
                auto [d, us] = time_us([&] { return two_squares(p); });
                dp = d;
                if (valid(p, d)) paper_us.push_back(us); else ++paper_fail;
            } catch (const invariant_violation&) {
                ++paper_fail;
            }
        }
        if (corn) {
            try {
                auto [d, us] = time_us([&] { return cornacchia(p); });
                dc = d;
                if (valid(p, d)) corn_us.push_back(us); else ++corn_fail;
            } catch (const invariant_violation&) {
                ++corn_fail;
            }
        }
        if (dp && dc && !(*dp == *dc)) ++paper_fail, ++corn_fail;
    }
    std::vector<BenchColumn> cols;
    if (paper) cols.push_back(summarize("paper", std::move(paper_us), paper_fail));
    if (corn) cols.push_back(summarize("cornacchia", std::move(corn_us), corn_fail));
    return cols;
}

inline int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const std::vector<BenchColumn> cols = run_bench(opts);
        char line[160];
        std::snprintf(line, sizeof line, "bits=%u count=%u seed=%llu\n", opts.bits, opts.count,
                      static_cast<unsigned long long>(opts.seed));
        out << line;
        std::snprintf(line, sizeof line, "%-12s %8s %12s %12s %14s %9s\n", "method", "count", "mean_us",
                      "median_us", "per_second", "failures");
        out << line;
        std::size_t failures = 0;
        for (const BenchColumn& c : cols) {
            std::snprintf(line, sizeof line, "%-12s %8zu %12.3f %12.3f %14.1f %9zu\n", c.method.c_str(), c.count,
                          c.mean_us, c.median_us, c.throughput, c.failures);
            out << line;
            failures += c.failures;
        }
        if (failures != 0) err << failures << " decompositions failed verification\n";
        return failures == 0 ? int{exit_ok} : int{exit_invariant};
    });
}

}  // namespace twosq::cli
