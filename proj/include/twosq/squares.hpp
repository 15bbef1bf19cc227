#pragma once

/**
 * @file squares.hpp
 * @brief Two-squares decomposition by sorting the residues u*x mod p.
 *
 * Fix u with u^2 = -1 (mod p) and R = floor(sqrt(p)). For x = 1..R let
 * y(x) = <u x>_p. Every pair (x, y(x)) satisfies x^2 + y^2 = 0 (mod p), so
 * any row with y <= R is a decomposition. Sorting the rows by y gives
 * y_1 < ... < y_R, and the decomposition exists and is unique exactly when
 * y_1 <= R < y_2.
 *
 * Existence comes from the telescoping gaps y_1, y_2 - y_1, ..., p - y_R,
 * which sum to p < (R+1)^2, so one is <= R; each possible position of that
 * gap is turned back into a table row with y <= R (see gap_witness_at).
 * Uniqueness comes from parity: two decompositions would produce a third
 * whose value 2p - 2(x1 x2 + y1 y2) is even.
 */

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twosq/core_arith.hpp"
#include "twosq/error.hpp"
#include "twosq/witness.hpp"

namespace twosq {

inline constexpr u64 default_table_bound = u64{1} << 40;

/// y(x) = <u x>_p for 1 <= x <= R.
inline u64 residue_map(const SqrtM1Witness& w, u64 x, Root which = Root::lower) {
    const PrimeOneMod4& p = w.prime();
    if (x < 1 || x > p.r()) {
        throw invalid_input("residue_map: x = " + std::to_string(x) + " outside [1, " + std::to_string(p.r()) + "]");
    }
    return mod_mul(w.root(which), x, p.p());
}

struct ResidueRow {
    u64 x;
    u64 y;
    friend bool operator==(const ResidueRow&, const ResidueRow&) = default;
};

/// The R rows (x_i, y_i) sorted strictly increasing in y.
class ResidueTable {
public:
    const PrimeOneMod4& prime() const noexcept { return witness_.prime(); }
    const SqrtM1Witness& witness() const noexcept { return witness_; }
    Root root_choice() const noexcept { return which_; }
    /// The multiplier actually used, u or p - u.
    u64 multiplier() const noexcept { return witness_.root(which_); }
    u64 r() const noexcept { return prime().r(); }

    const std::vector<ResidueRow>& rows() const noexcept { return rows_; }
    /// 1-based, matching the x_i / y_i indexing.
    const ResidueRow& row(std::size_t i) const { return rows_.at(i - 1); }

    /// y(x) looked up by x, for 1 <= x <= R.
    u64 y_of(u64 x) const { return y_by_x_.at(x); }

    /// True when (x, y) is one of the rows.
    bool contains(u64 x, u64 y) const noexcept {
        return x >= 1 && x <= r() && y_by_x_[x] == y;
    }

private:
    ResidueTable(const SqrtM1Witness& w, Root which, std::vector<ResidueRow> rows, std::vector<u64> y_by_x)
        : witness_(w), which_(which), rows_(std::move(rows)), y_by_x_(std::move(y_by_x)) {}
    friend ResidueTable build_table(const SqrtM1Witness&, Root, u64);

    SqrtM1Witness witness_;
    Root which_;
    std::vector<ResidueRow> rows_;
    std::vector<u64> y_by_x_;
};

inline ResidueTable build_table(const SqrtM1Witness& w, Root which = Root::lower,
                                u64 bound = default_table_bound) {
    const u64 p = w.prime().p();
    const u64 r = w.prime().r();
    if (p > bound) {
        throw bound_exceeded("residue table is limited to p <= " + std::to_string(bound) +
                                 "; use the streaming min_residue path",
                             bound);
    }
    const u64 u = w.root(which);
    std::vector<ResidueRow> rows;
    rows.reserve(r);
    std::vector<u64> y_by_x(r + 1, 0);
    u64 y = 0;
    for (u64 x = 1; x <= r; ++x) {
        y = mod_add(y, u, p);
        rows.push_back({x, y});
        y_by_x[x] = y;
    }
    std::sort(rows.begin(), rows.end(), [](const ResidueRow& a, const ResidueRow& b) { return a.y < b.y; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        detail::check(rows[i - 1].y < rows[i].y, "build_table: repeated residue");
    }
    detail::check(!rows.empty() && rows.front().y > 0, "build_table: zero residue");
    return ResidueTable(w, which, std::move(rows), std::move(y_by_x));
}

/// (x_1, y_1) computed in one constant-memory pass over x = 1..R.
inline ResidueRow min_residue(const SqrtM1Witness& w, Root which = Root::lower) {
    const u64 p = w.prime().p();
    const u64 r = w.prime().r();
    const u64 u = w.root(which);
    ResidueRow best{0, p};
    u64 y = 0;
    for (u64 x = 1; x <= r; ++x) {
        y = mod_add(y, u, p);
        if (y < best.y) best = {x, y};
    }
    return best;
}

/// p = a^2 + b^2 with 0 < a < b.
struct Decomposition {
    u64 p;
    u64 a;
    u64 b;
    friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

namespace detail {

inline Decomposition checked_decomposition(u64 p, u64 leg1, u64 leg2, const char* who) {
    const u64 a = std::min(leg1, leg2);
    const u64 b = std::max(leg1, leg2);
    check(a > 0 && a < b && static_cast<u128>(a) * a + static_cast<u128>(b) * b == p,
          std::string(who) + ": a^2 + b^2 != p for p = " + std::to_string(p));
    return {p, a, b};
}

}  // namespace detail

/// Decomposition from the smallest residue y_1 of a given witness.
inline Decomposition two_squares(const SqrtM1Witness& w, Root which = Root::lower) {
    const ResidueRow first = min_residue(w, which);
    detail::check(first.y <= w.prime().r(), "two_squares: y_1 > R");
    return detail::checked_decomposition(w.prime().p(), first.x, first.y, "two_squares");
}

inline Decomposition two_squares(const PrimeOneMod4& p) {
    return two_squares(find_witness_euler(p));
}

struct UniquenessCertificate {
    u64 y1;
    u64 y2;
    u64 r;
    friend bool operator==(const UniquenessCertificate&, const UniquenessCertificate&) = default;
};

/// Certifies y_1 <= R < y_2: row 1 is a decomposition and no other row is.
inline UniquenessCertificate verify_uniqueness(const ResidueTable& t) {
    detail::check(t.r() >= 2, "verify_uniqueness: R < 2");
    const UniquenessCertificate c{t.row(1).y, t.row(2).y, t.r()};
    detail::check(c.y1 <= c.r, "verify_uniqueness: y_1 > R for p = " + std::to_string(t.prime().p()));
    detail::check(c.r < c.y2, "verify_uniqueness: y_2 <= R for p = " + std::to_string(t.prime().p()));
    return c;
}

struct ParityIdentity {
    u64 lhs;
    u64 rhs;
};

/// Given n = x1^2 + y1^2 = x2^2 + y2^2 with x2 < x1 and y1 < y2, returns
/// (y2-y1)^2 + (x1-x2)^2 and 2n - 2(x1 x2 + y1 y2), which are equal.
inline ParityIdentity parity_identity(u64 n, ResidueRow d1, ResidueRow d2) {
    const auto norm = [](ResidueRow d) { return static_cast<u128>(d.x) * d.x + static_cast<u128>(d.y) * d.y; };
    if (norm(d1) != n || norm(d2) != n) throw invalid_input("parity_identity: representations do not sum to n");
    if (!(d2.x < d1.x)) throw invalid_input("parity_identity: requires x2 < x1");
    if (!(d1.y < d2.y)) throw invalid_input("parity_identity: requires y1 < y2");

    const u128 dy = d2.y - d1.y;
    const u128 dx = d1.x - d2.x;
    const u128 lhs = dy * dy + dx * dx;
    const u128 cross = static_cast<u128>(d1.x) * d2.x + static_cast<u128>(d1.y) * d2.y;
    const u128 rhs = 2 * static_cast<u128>(n) - 2 * cross;
    detail::check(lhs == rhs, "parity_identity: identity failed");
    return {static_cast<u64>(lhs), static_cast<u64>(rhs)};
}

enum class GapCase { base, tail_wrap, ascending, descending };

constexpr std::string_view to_string(GapCase c) {
    switch (c) {
        case GapCase::base: return "Base";
        case GapCase::tail_wrap: return "TailWrap";
        case GapCase::ascending: return "Ascending";
        case GapCase::descending: return "Descending";
    }
    return "?";
}

struct GapWitness {
    u64 p;
    u64 u;  // multiplier of the table
    u64 r;
    std::size_t gap_index;  // 0..R
    u64 gap_value;
    GapCase gap_case;
    u64 implied_small;
    friend bool operator==(const GapWitness&, const GapWitness&) = default;
};

/// The R+1 differences y_1 - 0, y_2 - y_1, ..., p - y_R (sum p).
inline std::vector<u64> telescoping_gaps(const ResidueTable& t) {
    const auto& rows = t.rows();
    std::vector<u64> gaps;
    gaps.reserve(rows.size() + 1);
    u64 prev = 0;
    for (const ResidueRow& row : rows) {
        gaps.push_back(row.y - prev);
        prev = row.y;
    }
    gaps.push_back(t.prime().p() - prev);
    return gaps;
}

/// Applies the case argument to the gap at `index`, which must be <= R.
/// Throws invariant_violation if the row the case predicts is missing.
inline GapWitness gap_witness_at(const ResidueTable& t, std::size_t index) {
    const u64 p = t.prime().p();
    const u64 r = t.r();
    if (index > r) throw invalid_input("gap_witness_at: index outside [0, R]");

    const std::size_t n = static_cast<std::size_t>(r);
    const u64 gap = index == 0 ? t.row(1).y : index == n ? p - t.row(n).y : t.row(index + 1).y - t.row(index).y;
    if (gap > r) {
        throw invalid_input("gap_witness_at: gap " + std::to_string(gap) + " at index " + std::to_string(index) +
                            " exceeds R = " + std::to_string(r));
    }

    GapWitness w{p, t.multiplier(), r, index, gap, GapCase::base, 0};
    const std::string where = " (p = " + std::to_string(p) + ", index " + std::to_string(index) + ")";
    if (index == 0) {
        w.gap_case = GapCase::base;
        w.implied_small = gap;
    } else if (index == n) {
        // p - y_R reads as some x_j; then x_R is its y_j, because
        // u (p - y_R) = -u y_R = -u^2 x_R = x_R.
        const u64 x_r = t.row(n).x;
        w.gap_case = GapCase::tail_wrap;
        w.implied_small = x_r;
        detail::check(mod_mul(t.multiplier(), gap, p) == x_r, "gap_witness: tail wrap residue mismatch" + where);
        detail::check(t.contains(gap, x_r), "gap_witness: tail wrap row missing" + where);
    } else {
        const ResidueRow lo = t.row(index);
        const ResidueRow hi = t.row(index + 1);
        if (hi.x > lo.x) {
            w.gap_case = GapCase::ascending;
            w.implied_small = gap;
            detail::check(t.contains(hi.x - lo.x, gap), "gap_witness: ascending row missing" + where);
        } else {
            w.gap_case = GapCase::descending;
            w.implied_small = lo.x - hi.x;
            detail::check(t.contains(gap, lo.x - hi.x), "gap_witness: descending row missing" + where);
        }
    }
    detail::check(t.row(1).y <= w.implied_small && w.implied_small <= r,
                  "gap_witness: implied residue outside [y_1, R]" + where);
    return w;
}

/// Every gap <= R, each validated against its case.
inline std::vector<GapWitness> all_gap_witnesses(const ResidueTable& t) {
    const std::vector<u64> gaps = telescoping_gaps(t);
    std::vector<GapWitness> out;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        if (gaps[i] <= t.r()) out.push_back(gap_witness_at(t, i));
    }
    return out;
}

/// The smallest-index gap <= R. One always exists since p < (R+1)^2.
inline GapWitness gap_witness(const ResidueTable& t) {
    const std::vector<u64> gaps = telescoping_gaps(t);
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        if (gaps[i] <= t.r()) return gap_witness_at(t, i);
    }
    throw invariant_violation("gap_witness: all R+1 gaps exceed R for p = " + std::to_string(t.prime().p()));
}

struct ThueWitness {
    u64 m;
    u64 a;
    i64 x;
    u64 value;
    friend bool operator==(const ThueWitness&, const ThueWitness&) = default;
};

enum class ThueRange {
    symmetric,      // 1 <= |x| <= floor(sqrt(m))
    positive_only,  // 1 <= x <= floor(sqrt(m))
};

/// Minimizes <a x>_m over the admissible x. Ties go to the smallest |x|,
/// positive before negative.
inline ThueWitness thue_min(u64 a, u64 m, ThueRange range = ThueRange::symmetric) {
    if (m < 2) throw invalid_input("thue_min: modulus must be >= 2");
    if (std::gcd(a, m) != 1) {
        throw invalid_input("thue_min: gcd(" + std::to_string(a) + ", " + std::to_string(m) + ") != 1");
    }
    const u64 s = floor_sqrt(m);
    const u64 ar = a % m;
    ThueWitness best{m, a, 0, m};
    for (u64 x = 1; x <= s; ++x) {
        const u64 pos = mod_mul(ar, x, m);
        if (pos < best.value) best.x = static_cast<i64>(x), best.value = pos;
        if (range == ThueRange::symmetric) {
            const u64 neg = pos == 0 ? 0 : m - pos;
            if (neg < best.value) best.x = -static_cast<i64>(x), best.value = neg;
        }
    }
    if (range == ThueRange::symmetric) {
        detail::check(static_cast<u128>(best.value) * best.value < m,
                      "thue_min: no residue below sqrt(m) for a = " + std::to_string(a) + ", m = " + std::to_string(m));
    }
    return best;
}

}  // namespace twosq
