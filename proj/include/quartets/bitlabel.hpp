#pragma once

// n-bit leaf labels and the prefix/suffix primitives everything else builds on.
//
// Convention: the first character of the written bit string is the most
// significant of the n used bits, so the integer value of a label equals its
// rank in lexicographic (prefix) order.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace quartets {

inline constexpr int kMinWidth = 2;
inline constexpr int kMaxWidth = 64;

class Label {
public:
    Label(int width, std::uint64_t bits) : width_(width), bits_(bits) {
        if (width < kMinWidth || width > kMaxWidth)
            throw std::invalid_argument("label width out of range [2,64]: " +
                                        std::to_string(width));
        if (width < 64 && (bits >> width) != 0)
            throw std::invalid_argument("label value does not fit in width");
    }

    int width() const { return width_; }
    std::uint64_t bits() const { return bits_; }

    friend bool operator==(const Label&, const Label&) = default;

private:
    int width_;
    std::uint64_t bits_;
};

enum class LeafOrder { prefix, suffix };

inline std::string_view to_string(LeafOrder order) {
    return order == LeafOrder::prefix ? "prefix" : "suffix";
}

inline Label parse_label(std::string_view text, int n) {
    if (n < kMinWidth || n > kMaxWidth)
        throw std::invalid_argument("label width out of range [2,64]: " +
                                    std::to_string(n));
    if (static_cast<int>(text.size()) != n)
        throw std::invalid_argument("label \"" + std::string(text) + "\" is not " +
                                    std::to_string(n) + " characters long");
    std::uint64_t bits = 0;
    for (char c : text) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("label \"" + std::string(text) +
                                        "\" contains a character other than 0/1");
        bits = (bits << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return Label(n, bits);
}

inline std::string render(const Label& x) {
    std::string out(static_cast<std::size_t>(x.width()), '0');
    for (int i = 0; i < x.width(); ++i)
        if (x.bits() >> (x.width() - 1 - i) & 1u) out[static_cast<std::size_t>(i)] = '1';
    return out;
}

namespace detail {

// Primitives on raw bit values; callers guarantee the width.
inline int lcp_bits(std::uint64_t x, std::uint64_t y, int n) {
    const std::uint64_t z = x ^ y;
    if (z == 0) return n;
    // first differing written position, counted from the left
    return n - (64 - std::countl_zero(z));
}

inline int lcs_bits(std::uint64_t x, std::uint64_t y, int n) {
    const std::uint64_t z = x ^ y;
    if (z == 0) return n;
    return std::countr_zero(z);
}

inline std::uint64_t reverse_bits(std::uint64_t x, int n) {
    std::uint64_t r = 0;
    for (int i = 0; i < n; ++i) {
        r = (r << 1) | (x & 1u);
        x >>= 1;
    }
    return r;
}

inline void require_same_width(const Label& x, const Label& y) {
    if (x.width() != y.width())
        throw std::invalid_argument("label width mismatch: " +
                                    std::to_string(x.width()) + " vs " +
                                    std::to_string(y.width()));
}

} // namespace detail

/// Length of the longest common prefix, in [0, n]; equals n iff x == y.
inline int lcp(const Label& x, const Label& y) {
    detail::require_same_width(x, y);
    return detail::lcp_bits(x.bits(), y.bits(), x.width());
}

/// Length of the longest common suffix; mirror of lcp.
inline int lcs(const Label& x, const Label& y) {
    detail::require_same_width(x, y);
    return detail::lcs_bits(x.bits(), y.bits(), x.width());
}

inline Label operator^(const Label& x, const Label& y) {
    detail::require_same_width(x, y);
    return Label(x.width(), x.bits() ^ y.bits());
}

inline Label reverse(const Label& x) {
    return Label(x.width(), detail::reverse_bits(x.bits(), x.width()));
}

// 0-based left-to-right leaf position in the chosen tree. Prefix order is the
// integer value itself; suffix (co-lexicographic) order is the value of the
// reversed string. Both are bijections on {0,...,2^n-1}.
inline std::uint64_t leaf_index(const Label& x, LeafOrder order) {
    return order == LeafOrder::prefix ? x.bits()
                                      : detail::reverse_bits(x.bits(), x.width());
}

} // namespace quartets
