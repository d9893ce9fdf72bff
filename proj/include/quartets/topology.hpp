#pragma once

// Quartet topologies straight from the labels: the two labels with the
// longest common prefix sit together in the prefix tree, and dually for
// suffixes. O(n) per quartet, no tree needed.

#include <array>
#include <stdexcept>
#include <string_view>

#include "quartets/bitlabel.hpp"

namespace quartets {

// The three topologies of an ordered 4-tuple, named by the index split.
enum class Pairing { p01_23, p02_13, p03_12 };

inline std::string_view to_string(Pairing p) {
    switch (p) {
        case Pairing::p01_23: return "01|23";
        case Pairing::p02_13: return "02|13";
        case Pairing::p03_12: return "03|12";
    }
    throw std::logic_error("bad Pairing");
}

// Index pairs in the fixed order used throughout: 01, 02, 03, 12, 13, 23.
inline constexpr std::array<std::array<int, 2>, 6> kIndexPairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

class Quartet {
public:
    Quartet(const Label& x0, const Label& x1, const Label& x2, const Label& x3)
        : labels_{x0, x1, x2, x3} {
        for (int i = 1; i < 4; ++i) {
            if (labels_[static_cast<std::size_t>(i)].width() != x0.width())
                throw std::invalid_argument("quartet labels must share one width");
            for (int j = 0; j < i; ++j)
                if (labels_[static_cast<std::size_t>(i)] == labels_[static_cast<std::size_t>(j)])
                    throw std::invalid_argument("quartet labels must be pairwise distinct");
        }
    }

    const std::array<Label, 4>& labels() const { return labels_; }
    const Label& operator[](int i) const { return labels_[static_cast<std::size_t>(i)]; }
    int width() const { return labels_[0].width(); }

private:
    std::array<Label, 4> labels_;
};

namespace detail {

// Pairing whose two pairs carry the strictly largest max(lcp) / max(lcs)
// score. `vals` are the six pairwise lengths in kIndexPairs order. For
// distinct labels the maximum cannot be shared by two crossing pairs (two
// max pairs sharing an index would force a longer common prefix between the
// other endpoints), so the winner is unique; a tie here means corrupt input
// or a bug, not a decision to make.
inline Pairing pairing_from_six(const std::array<int, 6>& vals) {
    const int s0 = vals[0] > vals[5] ? vals[0] : vals[5];
    const int s1 = vals[1] > vals[4] ? vals[1] : vals[4];
    const int s2 = vals[2] > vals[3] ? vals[2] : vals[3];
    if (s0 > s1 && s0 > s2) return Pairing::p01_23;
    if (s1 > s0 && s1 > s2) return Pairing::p02_13;
    if (s2 > s0 && s2 > s1) return Pairing::p03_12;
    throw std::logic_error("ambiguous quartet topology: two pairings share the maximal score");
}

inline std::array<int, 6> six_lcp(const std::array<std::uint64_t, 4>& x, int n) {
    std::array<int, 6> out;
    for (std::size_t p = 0; p < 6; ++p)
        out[p] = lcp_bits(x[static_cast<std::size_t>(kIndexPairs[p][0])],
                          x[static_cast<std::size_t>(kIndexPairs[p][1])], n);
    return out;
}

inline std::array<int, 6> six_lcs(const std::array<std::uint64_t, 4>& x, int n) {
    std::array<int, 6> out;
    for (std::size_t p = 0; p < 6; ++p)
        out[p] = lcs_bits(x[static_cast<std::size_t>(kIndexPairs[p][0])],
                          x[static_cast<std::size_t>(kIndexPairs[p][1])], n);
    return out;
}

inline std::array<std::uint64_t, 4> raw(const Quartet& q) {
    return {q[0].bits(), q[1].bits(), q[2].bits(), q[3].bits()};
}

} // namespace detail

inline Pairing prefix_topology(const Quartet& q) {
    return detail::pairing_from_six(detail::six_lcp(detail::raw(q), q.width()));
}

inline Pairing suffix_topology(const Quartet& q) {
    return detail::pairing_from_six(detail::six_lcs(detail::raw(q), q.width()));
}

/// True iff the quartet induces the same split in both trees. The answer is
/// a property of the label set, independent of tuple order.
inline bool agree(const Quartet& q) {
    return prefix_topology(q) == suffix_topology(q);
}

} // namespace quartets
