#pragma once

// Exact evaluation of every counting formula: per-(l,k) terms, the finite
// sums over their validity regions, the closed-form polynomials in (2^n, n),
// the inclusion-exclusion combination, and the distance/ratio/monotonicity
// quantities. Everything runs in arbitrary-precision rational arithmetic;
// floating point appears only in derivative_value and when rendering ratios.
//
// Coefficients live in one table per polynomial so they can be audited in a
// single place. Each evaluation must reduce to an integer; a non-integer
// result means a transcription bug and throws.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "quartets/events.hpp"

namespace quartets {

using Rational = boost::multiprecision::cpp_rational; // always reduced, den > 0

enum class EventCase { case1, case2, case3, total };

inline std::string_view to_string(EventCase c) {
    switch (c) {
        case EventCase::case1: return "case1";
        case EventCase::case2: return "case2";
        case EventCase::case3: return "case3";
        case EventCase::total: return "total";
    }
    throw std::logic_error("bad EventCase");
}

struct EventCaseId {
    CanonicalEvent event;
    EventCase kase;
};

namespace detail {

inline BigInt pow2(long e) { return BigInt(1) << e; }

inline void require_min_n(int n, const char* what) {
    if (n < 2)
        throw std::invalid_argument(std::string(what) + " needs n >= 2, got " +
                                    std::to_string(n));
}

[[noreturn]] inline void bad_region(EventCaseId id, int n, int l, int k) {
    throw std::invalid_argument("(l,k)=(" + std::to_string(l) + "," + std::to_string(k) +
                                ") outside " + std::string(to_string(id.event)) + "/" +
                                std::string(to_string(id.kase)) + " region at n=" +
                                std::to_string(n));
}

} // namespace detail

// ---------------------------------------------------------------------------
// per-(l,k) possibility counts for tuples with x0 = 0^n
// ---------------------------------------------------------------------------

// Validity regions, always with l,k >= 1:
//   case1: l+k+2 <= n   (prefix, buffer bit, suffix, buffer bit all disjoint)
//   case2: l+k+1 == n   (single shared buffer bit)
//   case3: l+k >= n     (p01_s23 only; prefix and suffix may overlap)
// For the events keyed on (x0,x1) the regions case1+case2 are exhaustive:
// l+k >= n would force x1 = x0.
inline bool in_case_region(EventCaseId id, int n, int l, int k) {
    if (l < 1 || k < 1) return false;
    switch (id.kase) {
        case EventCase::case1: return l + k + 2 <= n;
        case EventCase::case2: return l + k + 1 == n;
        case EventCase::case3:
            return id.event == CanonicalEvent::p01_s23 && l + k >= n && l <= n - 1 && k <= n - 1;
        case EventCase::total: return false;
    }
    return false;
}

inline BigInt term_count(EventCaseId id, int n, int l, int k) {
    detail::require_min_n(n, "term_count");
    if (id.kase == EventCase::total || !in_case_region(id, n, l, k))
        detail::bad_region(id, n, l, k);
    using detail::pow2;
    const BigInt pl1 = pow2(l + 1), pk1 = pow2(k + 1);
    const BigInt pl = pow2(l), pk = pow2(k);

    if (id.kase == EventCase::case1) {
        const BigInt free_bits = pow2(3 * (n - l - k - 2));
        switch (id.event) {
            case CanonicalEvent::p01_s23:
            case CanonicalEvent::p01_s01:
                return free_bits * (pl1 - 2) * (pl1 - 3) * (pk1 - 2) * (pk1 - 3);
            case CanonicalEvent::p01_p23_s01:
                return free_bits * (pl1 - 2) * (pk1 - 2) * (pk1 - 3);
            case CanonicalEvent::all4:
                return free_bits * (pl1 - 2) * (pk1 - 2);
        }
    }
    if (id.kase == EventCase::case2) {
        switch (id.event) {
            case CanonicalEvent::p01_s23:
                return 2 * (pk - 1) * (pk - 1) * (pl - 1) * (pl - 1);
            case CanonicalEvent::p01_s01:
                return (pl1 - 2) * (pl1 - 3) * (pk - 1) * (pk - 2) +
                       (pl - 1) * (pl - 1) * (pk1 - 2);
            case CanonicalEvent::p01_p23_s01:
                return (pl1 - 2) * (pk - 1) * (pk - 1);
            case CanonicalEvent::all4:
                return (pl1 - 2) * (pk - 1);
        }
    }
    // case3, p01_s23: split on whether the l-prefix/k-suffix overlap of x2,x3
    // is all zero or not
    const BigInt a = 2 * pow2(n - l - 1) * (pow2(n - l) - 2) * (pow2(n - k - 1) - 1) *
                     pow2(n - k - 1);
    const BigInt b = 2 * (pow2(k + l - n) - 1) * pow2(n - l - 1) * pow2(n - l) *
                     pow2(n - k - 1) * pow2(n - k - 1);
    return a + b;
}

/// Sum of term_count over the case region (empty region -> 0), or over all
/// cases for EventCase::total.
inline BigInt sum_form(EventCaseId id, int n) {
    detail::require_min_n(n, "sum_form");
    if (id.kase == EventCase::total) {
        BigInt t = sum_form({id.event, EventCase::case1}, n) +
                   sum_form({id.event, EventCase::case2}, n);
        if (id.event == CanonicalEvent::p01_s23)
            t += sum_form({id.event, EventCase::case3}, n);
        return t;
    }
    if (id.kase == EventCase::case3 && id.event != CanonicalEvent::p01_s23)
        throw std::invalid_argument("case3 exists only for P01S23");
    BigInt total = 0;
    for (int l = 1; l <= n - 1; ++l)
        for (int k = 1; k <= n - 1; ++k)
            if (in_case_region(id, n, l, k)) total += term_count(id, n, l, k);
    return total;
}

// ---------------------------------------------------------------------------
// closed-form polynomials in (2^n, n)
// ---------------------------------------------------------------------------

struct PolyTerm {
    long num, den; // rational coefficient num/den
    int pow2n;     // power of 2^n
    int npow;      // power of n (0 or 1)
};

using Polynomial = std::vector<PolyTerm>;

// The coefficient tables. One block per displayed polynomial; transcribed
// verbatim, single point of audit.
struct FormulaTable {
    // [event][case1, case2, case3, total]; case3 rows empty except p01_s23
    Polynomial event_case[4][4];
    Polynomial a_restricted; // |A| with x0 = 0^n
    Polynomial a_full;       // |A| unrestricted = 2^n * restricted
    Polynomial abc;          // |A u B u C| unrestricted = 3 * a_full
    Polynomial ratio_num;    // 24 * distance, the unreduced ratio numerator
    Polynomial ratio_den;    // 24 * C(2^n,4), the unreduced ratio denominator
};

inline const FormulaTable& reference_formulas() {
    static const FormulaTable table = [] {
        FormulaTable t;
        auto& ec = t.event_case;
        const int S23 = static_cast<int>(CanonicalEvent::p01_s23);
        const int S01 = static_cast<int>(CanonicalEvent::p01_s01);
        const int TRI = static_cast<int>(CanonicalEvent::p01_p23_s01);
        const int ALL = static_cast<int>(CanonicalEvent::all4);
        const int C1 = 0, C2 = 1, C3 = 2, TOT = 3;

        ec[S23][C1] = {{16, 441, 3, 0}, {-1, 1, 2, 1}, {5, 1, 2, 0},   {-25, 3, 1, 1},
                       {95, 9, 1, 0},   {-36, 7, 0, 1}, {-764, 49, 0, 0}};
        ec[S23][C2] = {{1, 2, 2, 1}, {-8, 3, 2, 0}, {4, 1, 1, 1},
                       {-4, 1, 1, 0}, {2, 1, 0, 1},  {20, 3, 0, 0}};
        ec[S23][C3] = {{1, 2, 2, 1}, {-7, 3, 2, 0}, {2, 1, 1, 1}, {1, 1, 1, 0}, {4, 3, 0, 0}};
        ec[S23][TOT] = {{16, 441, 3, 0}, {-7, 3, 1, 1}, {68, 9, 1, 0},
                        {-22, 7, 0, 1},  {-372, 49, 0, 0}};

        // case 1 coincides with P01S23 case 1
        ec[S01][C1] = ec[S23][C1];
        ec[S01][C2] = {{28, 1, 0, 0}, {10, 1, 0, 1}, {-22, 1, 1, 0},
                       {-6, 1, 2, 0}, {1, 1, 2, 1},  {13, 1, 1, 1}};
        ec[S01][TOT] = {{16, 441, 3, 0}, {-1, 1, 2, 0}, {14, 3, 1, 1},
                        {-103, 9, 1, 0}, {34, 7, 0, 1}, {608, 49, 0, 0}};

        ec[TRI][C1] = {{4, 441, 3, 0}, {-1, 3, 2, 0}, {5, 3, 1, 1},
                       {-37, 9, 1, 0}, {12, 7, 0, 1}, {652, 147, 0, 0}};
        ec[TRI][C2] = {{1, 3, 2, 0}, {-2, 1, 1, 1}, {5, 1, 1, 0}, {-2, 1, 0, 1}, {-16, 3, 0, 0}};
        ec[TRI][TOT] = {{4, 441, 3, 0}, {-1, 3, 1, 1}, {8, 9, 1, 0},
                        {-2, 7, 0, 1},  {-44, 49, 0, 0}};

        ec[ALL][C1] = {{1, 441, 3, 0}, {-1, 3, 1, 1}, {11, 9, 1, 0},
                       {-4, 7, 0, 1},  {-60, 49, 0, 0}};
        ec[ALL][C2] = {{1, 1, 1, 1}, {-4, 1, 1, 0}, {2, 1, 0, 1}, {4, 1, 0, 0}};
        ec[ALL][TOT] = {{1, 441, 3, 0}, {2, 3, 1, 1}, {-25, 9, 1, 0},
                        {10, 7, 0, 1},  {136, 49, 0, 0}};

        t.a_restricted = {{1, 9, 3, 0},   {-2, 1, 2, 0}, {20, 3, 1, 1},
                          {-127, 9, 1, 0}, {6, 1, 0, 1},  {16, 1, 0, 0}};
        t.a_full = {{1, 9, 4, 0},   {-2, 1, 3, 0}, {20, 3, 2, 1},
                    {-127, 9, 2, 0}, {6, 1, 1, 1},  {16, 1, 1, 0}};
        t.abc = {{1, 3, 4, 0},   {-6, 1, 3, 0}, {20, 1, 2, 1},
                 {-127, 3, 2, 0}, {18, 1, 1, 1}, {48, 1, 1, 0}};
        t.ratio_num = {{2, 3, 4, 0}, {-20, 1, 2, 1}, {160, 3, 2, 0},
                       {-18, 1, 1, 1}, {-54, 1, 1, 0}};
        t.ratio_den = {{1, 1, 4, 0}, {-6, 1, 3, 0}, {11, 1, 2, 0}, {-6, 1, 1, 0}};
        return t;
    }();
    return table;
}

inline Rational eval_poly(const Polynomial& poly, int n) {
    Rational acc = 0;
    for (const PolyTerm& t : poly) {
        Rational term(t.num, t.den);
        if (t.npow) term *= n; // npow is 0 or 1 everywhere
        term *= Rational(detail::pow2(static_cast<long>(t.pow2n) * n));
        acc += term;
    }
    return acc;
}

/// Evaluate and require an integer result; anything else is a transcription
/// bug in the coefficient table.
inline BigInt eval_poly_integer(const Polynomial& poly, int n, const char* what) {
    const Rational v = eval_poly(poly, n);
    if (denominator(v) != 1)
        throw std::logic_error(std::string("transcription bug: ") + what + " at n=" +
                               std::to_string(n) + " is not an integer");
    return numerator(v);
}

inline BigInt closed_form(EventCaseId id, int n,
                          const FormulaTable& table = reference_formulas()) {
    detail::require_min_n(n, "closed_form");
    const Polynomial& p =
        table.event_case[static_cast<int>(id.event)][static_cast<int>(id.kase)];
    if (p.empty()) throw std::invalid_argument("no closed form for this event/case");
    return eval_poly_integer(p, n, "event/case polynomial");
}

inline BigInt cf_A_restricted(int n, const FormulaTable& table = reference_formulas()) {
    detail::require_min_n(n, "cf_A_restricted");
    return eval_poly_integer(table.a_restricted, n, "A restricted polynomial");
}

inline BigInt cf_A_full(int n, const FormulaTable& table = reference_formulas()) {
    detail::require_min_n(n, "cf_A_full");
    return eval_poly_integer(table.a_full, n, "A full polynomial");
}

inline BigInt cf_ABC(int n, const FormulaTable& table = reference_formulas()) {
    detail::require_min_n(n, "cf_ABC");
    return eval_poly_integer(table.abc, n, "AuBuC polynomial");
}

/// 2|P01 n S01| + 2|P01 n S23| - 4|P01 n P23 n S01| + |all four|, from the
/// per-event closed forms. Must equal cf_A_restricted for every n.
inline BigInt inclusion_exclusion_A(int n, const FormulaTable& table = reference_formulas()) {
    detail::require_min_n(n, "inclusion_exclusion_A");
    return 2 * closed_form({CanonicalEvent::p01_s01, EventCase::total}, n, table) +
           2 * closed_form({CanonicalEvent::p01_s23, EventCase::total}, n, table) -
           4 * closed_form({CanonicalEvent::p01_p23_s01, EventCase::total}, n, table) +
           closed_form({CanonicalEvent::all4, EventCase::total}, n, table);
}

/// Agreeing unordered quartets: |A u B u C| / 24, exactly.
inline BigInt agreeing_unordered_cf(int n, const FormulaTable& table = reference_formulas()) {
    const BigInt v = cf_ABC(n, table);
    if (v % 24 != 0)
        throw std::logic_error("transcription bug: |AuBuC| not divisible by 24 at n=" +
                               std::to_string(n));
    return v / 24;
}

/// C(2^n, 4), via the expanded numerator over 24.
inline BigInt total_unordered(int n) {
    detail::require_min_n(n, "total_unordered");
    const BigInt num = eval_poly_integer(reference_formulas().ratio_den, n, "total numerator");
    if (num % 24 != 0)
        throw std::logic_error("transcription bug: total numerator not divisible by 24");
    return num / 24;
}

/// Exact quartet distance between the prefix and suffix trees on 2^n leaves.
inline BigInt distance_cf(int n) {
    detail::require_min_n(n, "distance_cf");
    const BigInt num = eval_poly_integer(reference_formulas().ratio_num, n, "distance numerator");
    if (num % 24 != 0)
        throw std::logic_error("transcription bug: distance numerator not divisible by 24");
    return num / 24;
}

/// Normalized quartet distance, reduced.
inline Rational ratio(int n) {
    return Rational(distance_cf(n)) / Rational(total_unordered(n));
}

/// numerator(R(n))*denominator(R(n+1)) - numerator(R(n+1))*denominator(R(n)),
/// with the unreduced polynomial numerator/denominator. Positive iff
/// R(n) > R(n+1).
inline BigInt monotone_crossdiff(int n) {
    detail::require_min_n(n, "monotone_crossdiff");
    const FormulaTable& t = reference_formulas();
    const Rational v = eval_poly(t.ratio_num, n) * eval_poly(t.ratio_den, n + 1) -
                       eval_poly(t.ratio_num, n + 1) * eval_poly(t.ratio_den, n);
    if (denominator(v) != 1)
        throw std::logic_error("transcription bug: cross-difference is not an integer");
    return numerator(v);
}

/// The derivative of the (normalized) cross-difference with respect to the
/// real variable t, scaled by 2^(-4t) to stay inside double range; the scale
/// factor is positive, so the sign is unchanged. Negative for t >= 11.
inline double derivative_value(double t) {
    if (t < 2.0) throw std::invalid_argument("derivative_value needs t >= 2");
    static const double ln2 = std::log(2.0);
    const double p = std::exp2(t); // 2^t
    const double inv = 1.0 / p;
    return -240.0 * ln2 * p + (1440.0 * t * ln2 - 3792.0 * ln2 + 360.0) +
           (-1026.0 * t * ln2 + 10908.0 * ln2 - 342.0) * inv +
           (-1944.0 * t * ln2 - 7824.0 * ln2 - 972.0) * inv * inv +
           (954.0 * t * ln2 + 948.0 * ln2 + 954.0) * inv * inv * inv;
}

// ---------------------------------------------------------------------------
// rendering
// ---------------------------------------------------------------------------

/// Fixed three decimal places, truncated toward zero. The reference table
/// this must reproduce truncates (0.79780... prints as 0.797).
inline std::string render_ratio_3dp(const Rational& r) {
    const BigInt scaled = (numerator(r) * 1000) / denominator(r);
    const BigInt whole = scaled / 1000, frac = scaled % 1000;
    std::string f = frac.str();
    return whole.str() + "." + std::string(3 - f.size(), '0') + f;
}

inline std::string render_fraction(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

} // namespace quartets
