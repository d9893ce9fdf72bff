#pragma once

// Event calculus over ordered 4-tuples: the twelve atomic events P_ij / S_ij
// ("pair (i,j) attains the maximal common prefix / suffix length"), boolean
// combinations of them, and exhaustive counting oracles.
//
// Counting uses the all-zero reduction: XORing every label with x0 preserves
// all pairwise lcp/lcs lengths, so the full count over distinct 4-tuples is
// exactly 2^n times the count with x0 fixed to 0^n.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "quartets/bitlabel.hpp"
#include "quartets/parallel.hpp"
#include "quartets/topology.hpp"

namespace quartets {

using BigInt = boost::multiprecision::cpp_int;

enum class EventKind { prefix_max, suffix_max };

struct AtomicEvent {
    EventKind kind;
    int i, j; // 0 <= i < j <= 3

    AtomicEvent(EventKind k, int i_, int j_) : kind(k), i(i_), j(j_) {
        if (i_ < 0 || j_ > 3 || i_ >= j_)
            throw std::invalid_argument("atomic event needs indices 0 <= i < j <= 3");
    }

    // position of (i,j) in kIndexPairs order
    int pair_index() const {
        for (int p = 0; p < 6; ++p)
            if (kIndexPairs[static_cast<std::size_t>(p)][0] == i &&
                kIndexPairs[static_cast<std::size_t>(p)][1] == j)
                return p;
        throw std::logic_error("unreachable: bad pair");
    }

    // bit in the 12-bit "which atoms hold" mask: P pairs 0..5, S pairs 6..11
    int mask_bit() const {
        return pair_index() + (kind == EventKind::suffix_max ? 6 : 0);
    }

    std::string name() const {
        return std::string(kind == EventKind::prefix_max ? "P" : "S") +
               static_cast<char>('0' + i) + static_cast<char>('0' + j);
    }
};

// Immutable and/or tree over atomic events.
class EventExpr {
public:
    static EventExpr atom(EventKind kind, int i, int j) {
        return EventExpr(std::make_shared<Node>(Node{Op::atom, AtomicEvent(kind, i, j), nullptr, nullptr}));
    }
    static EventExpr intersect(EventExpr a, EventExpr b) {
        return combine(Op::and_, std::move(a), std::move(b));
    }
    static EventExpr unite(EventExpr a, EventExpr b) {
        return combine(Op::or_, std::move(a), std::move(b));
    }

    // mask has bit AtomicEvent::mask_bit() set iff that atom holds
    bool eval_mask(unsigned mask) const { return eval_mask(node_.get(), mask); }

    std::string text() const { return text(node_.get(), /*parent_and=*/false); }

    // flattened, operand-sorted rendering; equal for expressions that differ
    // only by commutativity/associativity
    std::string canonical_key() const { return key(node_.get()); }

private:
    enum class Op { atom, and_, or_ };
    struct Node {
        Op op;
        AtomicEvent a;
        std::shared_ptr<const Node> lhs, rhs;
    };

    explicit EventExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static EventExpr combine(Op op, EventExpr a, EventExpr b) {
        return EventExpr(std::make_shared<Node>(
            Node{op, AtomicEvent(EventKind::prefix_max, 0, 1), a.node_, b.node_}));
    }

    static bool eval_mask(const Node* n, unsigned mask) {
        switch (n->op) {
            case Op::atom: return (mask >> n->a.mask_bit()) & 1u;
            case Op::and_: return eval_mask(n->lhs.get(), mask) && eval_mask(n->rhs.get(), mask);
            case Op::or_: return eval_mask(n->lhs.get(), mask) || eval_mask(n->rhs.get(), mask);
        }
        return false;
    }

    static std::string text(const Node* n, bool parent_and) {
        if (n->op == Op::atom) return n->a.name();
        const char sep = n->op == Op::and_ ? '&' : '|';
        std::string s = text(n->lhs.get(), n->op == Op::and_) + sep +
                        text(n->rhs.get(), n->op == Op::and_);
        if (n->op == Op::or_ && parent_and) return "(" + s + ")";
        return s;
    }

    static void flatten(const Node* n, Op op, std::vector<std::string>& out) {
        if (n->op == op) {
            flatten(n->lhs.get(), op, out);
            flatten(n->rhs.get(), op, out);
        } else {
            out.push_back(key(n));
        }
    }

    static std::string key(const Node* n) {
        if (n->op == Op::atom) return n->a.name();
        std::vector<std::string> parts;
        flatten(n, n->op, parts);
        std::sort(parts.begin(), parts.end());
        std::string s = n->op == Op::and_ ? "and(" : "or(";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) s += ',';
            s += parts[i];
        }
        return s + ")";
    }

    std::shared_ptr<const Node> node_;
};

inline EventExpr operator&(const EventExpr& a, const EventExpr& b) {
    return EventExpr::intersect(a, b);
}
inline EventExpr operator|(const EventExpr& a, const EventExpr& b) {
    return EventExpr::unite(a, b);
}

// ---------------------------------------------------------------------------
// expression text: atoms P01..S23, operators & and | (& binds tighter), parens
// ---------------------------------------------------------------------------

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view s) : s_(s) {}

    EventExpr parse() {
        EventExpr e = parse_or();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    EventExpr parse_or() {
        EventExpr e = parse_and();
        while (peek() == '|') {
            ++pos_;
            e = e | parse_and();
        }
        return e;
    }

    EventExpr parse_and() {
        EventExpr e = parse_primary();
        while (peek() == '&') {
            ++pos_;
            e = e & parse_primary();
        }
        return e;
    }

    EventExpr parse_primary() {
        skip_ws();
        if (peek() == '(') {
            ++pos_;
            EventExpr e = parse_or();
            skip_ws();
            if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
            ++pos_;
            return e;
        }
        if (pos_ + 3 > s_.size()) fail("expected event atom like P01 or S23");
        const char c = s_[pos_];
        if (c != 'P' && c != 'S') fail("expected event atom like P01 or S23");
        const char ci = s_[pos_ + 1], cj = s_[pos_ + 2];
        if (ci < '0' || ci > '3' || cj < '0' || cj > '3' || ci >= cj)
            fail("event atom indices must satisfy 0 <= i < j <= 3");
        pos_ += 3;
        return EventExpr::atom(c == 'P' ? EventKind::prefix_max : EventKind::suffix_max,
                               ci - '0', cj - '0');
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("event expression error at position " +
                                    std::to_string(pos_) + ": " + what);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline EventExpr parse_event_expr(std::string_view text) {
    return detail::ExprParser(text).parse();
}

// ---------------------------------------------------------------------------
// evaluation on quartets
// ---------------------------------------------------------------------------

namespace detail {

// 12-bit mask of atoms holding on the tuple: bit p (0..5) iff lcp of pair p
// equals the max of the six, bits 6..11 likewise for lcs. "Not shorter than"
// is a weak maximum, so several pairs may tie.
inline unsigned atom_mask(const std::array<std::uint64_t, 4>& x, int n) {
    const std::array<int, 6> p = six_lcp(x, n);
    const std::array<int, 6> s = six_lcs(x, n);
    int pmax = p[0], smax = s[0];
    for (int t = 1; t < 6; ++t) {
        if (p[static_cast<std::size_t>(t)] > pmax) pmax = p[static_cast<std::size_t>(t)];
        if (s[static_cast<std::size_t>(t)] > smax) smax = s[static_cast<std::size_t>(t)];
    }
    unsigned mask = 0;
    for (int t = 0; t < 6; ++t) {
        if (p[static_cast<std::size_t>(t)] == pmax) mask |= 1u << t;
        if (s[static_cast<std::size_t>(t)] == smax) mask |= 1u << (t + 6);
    }
    return mask;
}

// per-mask truth of an expression, for the enumeration inner loops
struct TruthTable {
    std::array<std::uint64_t, 64> bits{};
    explicit TruthTable(const EventExpr& e) {
        for (unsigned m = 0; m < 4096; ++m)
            if (e.eval_mask(m)) bits[m >> 6] |= 1ull << (m & 63u);
    }
    bool operator[](unsigned m) const { return (bits[m >> 6] >> (m & 63u)) & 1u; }
};

inline void require_count_range(int n, int lo, int hi, const char* what) {
    if (n < lo || n > hi)
        throw std::invalid_argument(std::string(what) + " supports n in [" +
                                    std::to_string(lo) + "," + std::to_string(hi) +
                                    "], got " + std::to_string(n));
}

} // namespace detail

inline bool atomic_holds(const AtomicEvent& e, const Quartet& q) {
    return (detail::atom_mask(detail::raw(q), q.width()) >> e.mask_bit()) & 1u;
}

inline bool eval_event(const EventExpr& expr, const Quartet& q) {
    return expr.eval_mask(detail::atom_mask(detail::raw(q), q.width()));
}

// ---------------------------------------------------------------------------
// counting oracles
// ---------------------------------------------------------------------------

inline constexpr int kMaxRestrictedN = 8;   // (2^8-1)^3 ~ 16.6M tuples
inline constexpr int kMaxFullDirectN = 4;   // 16*15*14*13 tuples
inline constexpr int kMaxAgreeScanN = 7;    // C(128,4) ~ 10.7M subsets (8 opt-in)

/// Number of ordered tuples (0^n, x1, x2, x3), all distinct, satisfying expr.
inline std::int64_t count_restricted(const EventExpr& expr, int n) {
    detail::require_count_range(n, 2, kMaxRestrictedN, "count_restricted");
    const detail::TruthTable tt(expr);
    const std::uint64_t top = 1ull << n;
    const std::uint64_t c = detail::chunked_sum(1, top, [&](std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t acc = 0;
        for (std::uint64_t x1 = lo; x1 < hi; ++x1)
            for (std::uint64_t x2 = 1; x2 < top; ++x2) {
                if (x2 == x1) continue;
                for (std::uint64_t x3 = 1; x3 < top; ++x3) {
                    if (x3 == x1 || x3 == x2) continue;
                    if (tt[detail::atom_mask({0, x1, x2, x3}, n)]) ++acc;
                }
            }
        return acc;
    });
    return static_cast<std::int64_t>(c);
}

/// Count over all ordered distinct 4-tuples, via the 2^n scaling.
inline std::int64_t count_full(const EventExpr& expr, int n) {
    return static_cast<std::int64_t>(1ull << n) * count_restricted(expr, n);
}

/// Direct full enumeration, for cross-checking the scaling at small n.
inline std::int64_t count_full_direct(const EventExpr& expr, int n) {
    detail::require_count_range(n, 2, kMaxFullDirectN, "count_full_direct");
    const detail::TruthTable tt(expr);
    const std::uint64_t top = 1ull << n;
    std::uint64_t acc = 0;
    for (std::uint64_t x0 = 0; x0 < top; ++x0)
        for (std::uint64_t x1 = 0; x1 < top; ++x1) {
            if (x1 == x0) continue;
            for (std::uint64_t x2 = 0; x2 < top; ++x2) {
                if (x2 == x0 || x2 == x1) continue;
                for (std::uint64_t x3 = 0; x3 < top; ++x3) {
                    if (x3 == x0 || x3 == x1 || x3 == x2) continue;
                    if (tt[detail::atom_mask({x0, x1, x2, x3}, n)]) ++acc;
                }
            }
        }
    return static_cast<std::int64_t>(acc);
}

/// Number of 4-subsets of {0,1}^n whose prefix and suffix topologies agree.
inline std::int64_t count_agreeing_unordered(int n, bool allow_large = false) {
    detail::require_count_range(n, 2, allow_large ? 8 : kMaxAgreeScanN,
                                "count_agreeing_unordered");
    const std::uint64_t top = 1ull << n;
    const std::uint64_t c = detail::chunked_sum(0, top, [&](std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t acc = 0;
        for (std::uint64_t a = lo; a < hi; ++a)
            for (std::uint64_t b = a + 1; b < top; ++b)
                for (std::uint64_t cc = b + 1; cc < top; ++cc)
                    for (std::uint64_t d = cc + 1; d < top; ++d) {
                        const std::array<std::uint64_t, 4> x{a, b, cc, d};
                        if (detail::pairing_from_six(detail::six_lcp(x, n)) ==
                            detail::pairing_from_six(detail::six_lcs(x, n)))
                            ++acc;
                    }
        return acc;
    });
    return static_cast<std::int64_t>(c);
}

// ---------------------------------------------------------------------------
// the agreement events A, B, C and the 24-permutation orbit
// ---------------------------------------------------------------------------

inline EventExpr event_A() {
    using K = EventKind;
    return (EventExpr::atom(K::prefix_max, 0, 1) | EventExpr::atom(K::prefix_max, 2, 3)) &
           (EventExpr::atom(K::suffix_max, 0, 1) | EventExpr::atom(K::suffix_max, 2, 3));
}

inline EventExpr event_B() {
    using K = EventKind;
    return (EventExpr::atom(K::prefix_max, 0, 2) | EventExpr::atom(K::prefix_max, 1, 3)) &
           (EventExpr::atom(K::suffix_max, 0, 2) | EventExpr::atom(K::suffix_max, 1, 3));
}

inline EventExpr event_C() {
    using K = EventKind;
    return (EventExpr::atom(K::prefix_max, 0, 3) | EventExpr::atom(K::prefix_max, 1, 2)) &
           (EventExpr::atom(K::suffix_max, 0, 3) | EventExpr::atom(K::suffix_max, 1, 2));
}

inline EventExpr event_ABC() { return event_A() | event_B() | event_C(); }

struct OrbitCounts {
    int in_a = 0, in_b = 0, in_c = 0;
    friend bool operator==(const OrbitCounts&, const OrbitCounts&) = default;
};

/// Over all 24 reorderings of q: how many land in A, in B, in C. Agreeing
/// quartets give (8,8,8), disagreeing ones (0,0,0).
inline OrbitCounts orbit_classify(const Quartet& q) {
    static const std::array<std::array<int, 4>, 24> perms = [] {
        std::array<std::array<int, 4>, 24> out{};
        std::array<int, 4> p{0, 1, 2, 3};
        for (std::size_t i = 0; i < 24; ++i) {
            out[i] = p;
            std::next_permutation(p.begin(), p.end());
        }
        return out;
    }();
    const detail::TruthTable ta(event_A()), tb(event_B()), tc(event_C());
    const auto x = detail::raw(q);
    OrbitCounts counts;
    for (const auto& p : perms) {
        const std::array<std::uint64_t, 4> y{
            x[static_cast<std::size_t>(p[0])], x[static_cast<std::size_t>(p[1])],
            x[static_cast<std::size_t>(p[2])], x[static_cast<std::size_t>(p[3])]};
        const unsigned m = detail::atom_mask(y, q.width());
        if (ta[m]) ++counts.in_a;
        if (tb[m]) ++counts.in_b;
        if (tc[m]) ++counts.in_c;
    }
    return counts;
}

// ---------------------------------------------------------------------------
// the four intersections whose counts have closed forms, stratified by the
// common prefix/suffix lengths the derivations fix
// ---------------------------------------------------------------------------

enum class CanonicalEvent { p01_s23, p01_s01, p01_p23_s01, all4 };

inline std::string_view to_string(CanonicalEvent e) {
    switch (e) {
        case CanonicalEvent::p01_s23: return "P01S23";
        case CanonicalEvent::p01_s01: return "P01S01";
        case CanonicalEvent::p01_p23_s01: return "P01P23S01";
        case CanonicalEvent::all4: return "P01P23S01S23";
    }
    throw std::logic_error("bad CanonicalEvent");
}

inline EventExpr canonical_expr(CanonicalEvent e) {
    using K = EventKind;
    const EventExpr p01 = EventExpr::atom(K::prefix_max, 0, 1);
    const EventExpr p23 = EventExpr::atom(K::prefix_max, 2, 3);
    const EventExpr s01 = EventExpr::atom(K::suffix_max, 0, 1);
    const EventExpr s23 = EventExpr::atom(K::suffix_max, 2, 3);
    switch (e) {
        case CanonicalEvent::p01_s23: return p01 & s23;
        case CanonicalEvent::p01_s01: return p01 & s01;
        case CanonicalEvent::p01_p23_s01: return p01 & p23 & s01;
        case CanonicalEvent::all4: return p01 & p23 & s01 & s23;
    }
    throw std::logic_error("bad CanonicalEvent");
}

/// Restricted counts binned by (l,k) where l = lcp(x0,x1) and k = lcs(x2,x3)
/// for p01_s23, l = lcp(x0,x1) and k = lcs(x0,x1) otherwise. Keys with zero
/// count are omitted.
inline std::map<std::pair<int, int>, std::int64_t>
stratified_restricted_counts(CanonicalEvent ev, int n) {
    detail::require_count_range(n, 2, 6, "stratified_restricted_counts");
    const detail::TruthTable tt(canonical_expr(ev));
    const std::uint64_t top = 1ull << n;
    std::map<std::pair<int, int>, std::int64_t> bins;
    for (std::uint64_t x1 = 1; x1 < top; ++x1)
        for (std::uint64_t x2 = 1; x2 < top; ++x2) {
            if (x2 == x1) continue;
            for (std::uint64_t x3 = 1; x3 < top; ++x3) {
                if (x3 == x1 || x3 == x2) continue;
                if (!tt[detail::atom_mask({0, x1, x2, x3}, n)]) continue;
                const int l = detail::lcp_bits(0, x1, n);
                const int k = ev == CanonicalEvent::p01_s23 ? detail::lcs_bits(x2, x3, n)
                                                        : detail::lcs_bits(0, x1, n);
                ++bins[{l, k}];
            }
        }
    return bins;
}

// One counting result: which expression, which route, and the exact value.
struct CountReport {
    int n = 0;
    std::string expr;
    std::string method;
    BigInt value;
};

} // namespace quartets
