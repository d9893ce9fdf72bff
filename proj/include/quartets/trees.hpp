#pragma once

// Explicit rooted binary trees: the prefix/suffix trees materialized, Newick
// I/O, and a brute-force quartet distance between any two binary trees on the
// same leaf set. Quartet identity only uses unrooted information, so the
// internal rooting never shows through.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "quartets/bitlabel.hpp"
#include "quartets/parallel.hpp"
#include "quartets/topology.hpp"

namespace quartets {

inline constexpr int kMaxTreeDepthN = 20;     // build_tree cap: 2^20 leaves
inline constexpr int kMaxDistanceLeaves = 256; // quartet_distance scan cap

struct PhyloTree {
    struct Node {
        std::int32_t parent = -1;
        std::int32_t left = -1;
        std::int32_t right = -1;
        std::string label; // non-empty iff leaf
    };

    std::vector<Node> nodes;
    std::int32_t root = -1;

    bool is_leaf(std::int32_t v) const {
        return nodes[static_cast<std::size_t>(v)].left < 0;
    }

    std::vector<std::string> leaf_labels() const { // left-to-right
        std::vector<std::string> out;
        std::vector<std::int32_t> stack{root};
        while (!stack.empty()) {
            const std::int32_t v = stack.back();
            stack.pop_back();
            const Node& nd = nodes[static_cast<std::size_t>(v)];
            if (nd.left < 0) {
                out.push_back(nd.label);
            } else {
                stack.push_back(nd.right);
                stack.push_back(nd.left);
            }
        }
        return out;
    }
};

/// Complete balanced binary tree of depth n; the leaf at position p carries
/// the label whose leaf_index in the given order is p.
inline PhyloTree build_tree(int n, LeafOrder order) {
    if (n < kMinWidth || n > kMaxTreeDepthN)
        throw std::invalid_argument("build_tree supports n in [2," +
                                    std::to_string(kMaxTreeDepthN) + "], got " +
                                    std::to_string(n));
    PhyloTree t;
    const std::uint64_t leaves = 1ull << n;
    t.nodes.resize(2 * leaves - 1);
    t.root = 0;
    // heap layout: children of v are 2v+1, 2v+2; leaves occupy the last level
    // in left-to-right order
    const std::size_t internal = leaves - 1;
    for (std::size_t v = 0; v < internal; ++v) {
        t.nodes[v].left = static_cast<std::int32_t>(2 * v + 1);
        t.nodes[v].right = static_cast<std::int32_t>(2 * v + 2);
        t.nodes[2 * v + 1].parent = static_cast<std::int32_t>(v);
        t.nodes[2 * v + 2].parent = static_cast<std::int32_t>(v);
    }
    for (std::uint64_t p = 0; p < leaves; ++p) {
        // label whose index in this order equals p; both orders are
        // involutive bijections, so the inverse is the map itself
        const std::uint64_t bits =
            order == LeafOrder::prefix ? p : detail::reverse_bits(p, n);
        t.nodes[internal + p].label = render(Label(n, bits));
    }
    return t;
}

// ---------------------------------------------------------------------------
// Newick, fixed dialect: leaves are bare labels, internal nodes unnamed and
// binary, no branch lengths, terminated by ';'
// ---------------------------------------------------------------------------

class newick_parse_error : public std::runtime_error {
public:
    newick_parse_error(const std::string& what, std::size_t position)
        : std::runtime_error("newick parse error at position " +
                             std::to_string(position) + ": " + what),
          pos(position) {}
    std::size_t pos;
};

inline std::string to_newick(const PhyloTree& t) {
    std::string out;
    // explicit stack; parsed inputs can be arbitrarily deep
    struct Frame { std::int32_t node; int phase; };
    std::vector<Frame> stack{{t.root, 0}};
    while (!stack.empty()) {
        auto& [v, phase] = stack.back();
        const PhyloTree::Node& nd = t.nodes[static_cast<std::size_t>(v)];
        if (nd.left < 0) {
            out += nd.label;
            stack.pop_back();
            continue;
        }
        if (phase == 0) {
            out += '(';
            phase = 1;
            stack.push_back({nd.left, 0});
        } else if (phase == 1) {
            out += ',';
            phase = 2;
            stack.push_back({nd.right, 0});
        } else {
            out += ')';
            stack.pop_back();
        }
    }
    out += ';';
    return out;
}

inline PhyloTree parse_newick(std::string_view text) {
    PhyloTree t;
    std::vector<std::int32_t> open;       // unfinished internal nodes
    std::vector<int> child_count;         // children attached so far
    std::map<std::string, bool, std::less<>> seen;
    std::size_t i = 0;
    bool done = false;
    bool after_close = false; // last token was ')'

    auto skip_ws = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' ||
                                   text[i] == '\n' || text[i] == '\r'))
            ++i;
    };
    auto attach = [&](std::int32_t v, std::size_t pos) {
        if (open.empty()) {
            if (t.root >= 0) throw newick_parse_error("multiple top-level subtrees", pos);
            t.root = v;
            return;
        }
        const std::int32_t p = open.back();
        if (child_count.back() >= 2)
            throw newick_parse_error("non-binary node: more than two children", pos);
        t.nodes[static_cast<std::size_t>(v)].parent = p;
        if (child_count.back() == 0)
            t.nodes[static_cast<std::size_t>(p)].left = v;
        else
            t.nodes[static_cast<std::size_t>(p)].right = v;
        ++child_count.back();
    };

    skip_ws();
    while (i < text.size() && !done) {
        const char c = text[i];
        switch (c) {
            case '(': {
                t.nodes.emplace_back();
                open.push_back(static_cast<std::int32_t>(t.nodes.size() - 1));
                child_count.push_back(0);
                ++i;
                after_close = false;
                break;
            }
            case ',': {
                if (open.empty()) throw newick_parse_error("',' outside parentheses", i);
                ++i;
                after_close = false;
                break;
            }
            case ')': {
                if (open.empty()) throw newick_parse_error("unmatched ')'", i);
                if (child_count.back() != 2)
                    throw newick_parse_error("non-binary node: fewer than two children", i);
                const std::int32_t v = open.back();
                open.pop_back();
                child_count.pop_back();
                attach(v, i);
                ++i;
                after_close = true;
                break;
            }
            case ';': {
                if (!open.empty()) throw newick_parse_error("';' inside parentheses", i);
                if (t.root < 0) throw newick_parse_error("empty tree", i);
                ++i;
                done = true;
                break;
            }
            case ':':
                throw newick_parse_error("branch lengths are not supported", i);
            default: {
                const std::size_t start = i;
                if (after_close)
                    throw newick_parse_error("internal node names are not supported", start);
                while (i < text.size() && text[i] != '(' && text[i] != ')' &&
                       text[i] != ',' && text[i] != ';' && text[i] != ':' &&
                       text[i] != ' ' && text[i] != '\t' && text[i] != '\n' &&
                       text[i] != '\r')
                    ++i;
                std::string label(text.substr(start, i - start));
                if (i < text.size() && text[i] == '(')
                    throw newick_parse_error("label immediately before '('", i);
                if (!seen.emplace(label, true).second)
                    throw newick_parse_error("duplicate leaf label \"" + label + "\"", start);
                t.nodes.emplace_back();
                t.nodes.back().label = std::move(label);
                attach(static_cast<std::int32_t>(t.nodes.size() - 1), start);
                break;
            }
        }
        skip_ws();
    }
    if (!done) throw newick_parse_error("missing terminating ';'", i);
    skip_ws();
    if (i != text.size()) throw newick_parse_error("trailing input after ';'", i);
    return t;
}

// ---------------------------------------------------------------------------
// induced quartets and quartet distance
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<int> node_depths(const PhyloTree& t) {
    std::vector<int> depth(t.nodes.size(), 0);
    std::vector<std::int32_t> stack{t.root};
    while (!stack.empty()) {
        const std::int32_t v = stack.back();
        stack.pop_back();
        const auto& nd = t.nodes[static_cast<std::size_t>(v)];
        if (nd.left >= 0) {
            depth[static_cast<std::size_t>(nd.left)] = depth[static_cast<std::size_t>(v)] + 1;
            depth[static_cast<std::size_t>(nd.right)] = depth[static_cast<std::size_t>(v)] + 1;
            stack.push_back(nd.left);
            stack.push_back(nd.right);
        }
    }
    return depth;
}

inline int lca_depth(const PhyloTree& t, const std::vector<int>& depth,
                     std::int32_t u, std::int32_t v) {
    while (u != v) {
        if (depth[static_cast<std::size_t>(u)] >= depth[static_cast<std::size_t>(v)])
            u = t.nodes[static_cast<std::size_t>(u)].parent;
        else
            v = t.nodes[static_cast<std::size_t>(v)].parent;
    }
    return depth[static_cast<std::size_t>(u)];
}

// depth-of-LCA matrix over leaves listed in `leaf_node` order
inline std::vector<int> lca_depth_matrix(const PhyloTree& t,
                                         const std::vector<std::int32_t>& leaf_node) {
    const std::size_t n = leaf_node.size();
    const std::vector<int> depth = node_depths(t);
    std::vector<int> m(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            m[i * n + j] = m[j * n + i] = lca_depth(t, depth, leaf_node[i], leaf_node[j]);
    return m;
}

} // namespace detail

/// Topology induced on four leaves, as the pairing of the argument order:
/// the pair with the deepest LCA sits together, the other two close the
/// split. Unrooted information only, so any rooting gives the same answer.
inline Pairing induced_quartet(const PhyloTree& t, std::string_view a,
                               std::string_view b, std::string_view c,
                               std::string_view d) {
    const std::array<std::string_view, 4> want{a, b, c, d};
    std::array<std::int32_t, 4> leaf{-1, -1, -1, -1};
    for (std::size_t v = 0; v < t.nodes.size(); ++v) {
        if (t.nodes[v].left >= 0) continue;
        for (std::size_t q = 0; q < 4; ++q)
            if (t.nodes[v].label == want[q]) {
                if (leaf[q] >= 0) throw std::invalid_argument("repeated quartet label");
                leaf[q] = static_cast<std::int32_t>(v);
            }
    }
    for (std::size_t q = 0; q < 4; ++q) {
        if (leaf[q] < 0)
            throw std::invalid_argument("label \"" + std::string(want[q]) +
                                        "\" not found in tree");
        for (std::size_t r = 0; r < q; ++r)
            if (leaf[q] == leaf[r]) throw std::invalid_argument("repeated quartet label");
    }
    const std::vector<int> depth = detail::node_depths(t);
    std::array<int, 6> vals;
    for (std::size_t p = 0; p < 6; ++p)
        vals[p] = detail::lca_depth(t, depth,
                                    leaf[static_cast<std::size_t>(kIndexPairs[p][0])],
                                    leaf[static_cast<std::size_t>(kIndexPairs[p][1])]);
    return detail::pairing_from_six(vals);
}

/// Number of 4-subsets of the common leaf set whose induced topologies
/// differ. Brute force over all C(N,4) subsets with precomputed pairwise
/// LCA depths; N capped at 256.
inline std::int64_t quartet_distance(const PhyloTree& t1, const PhyloTree& t2) {
    std::vector<std::string> labels = t1.leaf_labels();
    std::sort(labels.begin(), labels.end());
    {
        std::vector<std::string> other = t2.leaf_labels();
        std::sort(other.begin(), other.end());
        if (labels != other)
            throw std::invalid_argument("quartet_distance: leaf-label sets differ");
    }
    const std::size_t n = labels.size();
    if (n < 4) throw std::invalid_argument("quartet_distance needs at least 4 leaves");
    if (n > kMaxDistanceLeaves)
        throw std::invalid_argument("quartet_distance brute-force cap is " +
                                    std::to_string(kMaxDistanceLeaves) + " leaves");

    auto leaf_nodes_in = [&](const PhyloTree& t) {
        std::map<std::string_view, std::size_t> rank;
        for (std::size_t i = 0; i < n; ++i) rank[labels[i]] = i;
        std::vector<std::int32_t> out(n, -1);
        for (std::size_t v = 0; v < t.nodes.size(); ++v)
            if (t.nodes[v].left < 0)
                out[rank.at(t.nodes[v].label)] = static_cast<std::int32_t>(v);
        return out;
    };
    const std::vector<int> m1 = detail::lca_depth_matrix(t1, leaf_nodes_in(t1));
    const std::vector<int> m2 = detail::lca_depth_matrix(t2, leaf_nodes_in(t2));

    auto pairing_of = [n](const std::vector<int>& m, std::size_t a, std::size_t b,
                          std::size_t c, std::size_t d) {
        return detail::pairing_from_six({m[a * n + b], m[a * n + c], m[a * n + d],
                                         m[b * n + c], m[b * n + d], m[c * n + d]});
    };

    const std::uint64_t disagreeing = detail::chunked_sum(
        0, n >= 3 ? n - 3 : 0, [&](std::uint64_t lo, std::uint64_t hi) {
            std::uint64_t acc = 0;
            for (std::size_t a = lo; a < hi; ++a)
                for (std::size_t b = a + 1; b < n; ++b)
                    for (std::size_t c = b + 1; c < n; ++c)
                        for (std::size_t d = c + 1; d < n; ++d)
                            if (pairing_of(m1, a, b, c, d) != pairing_of(m2, a, b, c, d))
                                ++acc;
            return acc;
        });
    return static_cast<std::int64_t>(disagreeing);
}

} // namespace quartets
