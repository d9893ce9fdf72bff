#pragma once

// Command implementations behind the `quartets` tool. Each takes the output
// stream and returns the process exit code: 0 success/pass, 1 verification
// failure. Bad arguments throw std::invalid_argument and the tool maps them
// to exit code 2.

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "quartets/closed_forms.hpp"
#include "quartets/events.hpp"
#include "quartets/trees.hpp"
#include "quartets/verify.hpp"

namespace quartets {

inline int cmd_table(int nmin, int nmax, std::string_view format, std::ostream& out) {
    if (nmin < 2 || nmin > nmax || nmax > 128)
        throw std::invalid_argument("table needs 2 <= nmin <= nmax <= 128");
    if (format != "tsv" && format != "json")
        throw std::invalid_argument("table format must be tsv or json");

    if (format == "tsv") {
        out << "n\tN\tdistance\tratio\tratio_3dp\n";
        for (int n = nmin; n <= nmax; ++n) {
            const Rational r = ratio(n);
            out << n << '\t' << detail::pow2(n).str() << '\t' << distance_cf(n).str()
                << '\t' << render_fraction(r) << '\t' << render_ratio_3dp(r) << '\n';
        }
        return 0;
    }
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["rows"] = nlohmann::ordered_json::array();
    for (int n = nmin; n <= nmax; ++n) {
        const Rational r = ratio(n);
        j["rows"].push_back({{"n", n},
                             {"N", detail::pow2(n).str()},
                             {"distance", distance_cf(n).str()},
                             {"ratio", render_fraction(r)},
                             {"ratio_3dp", render_ratio_3dp(r)}});
    }
    out << j.dump(2) << '\n';
    return 0;
}

inline int cmd_verify(int n, bool include_brute, std::ostream& out) {
    const VerificationReport report = run_verification(n, include_brute);
    out << to_json(report).dump(2) << '\n';
    return report.overall_pass ? 0 : 1;
}

namespace detail {

// closed/sum methods exist only for the expressions the formulas cover;
// matching is up to commutativity/associativity
inline bool resolve_formula_expr(const EventExpr& expr, CanonicalEvent& ev, bool& is_a,
                                 bool& is_abc) {
    const std::string key = expr.canonical_key();
    is_a = key == event_A().canonical_key();
    is_abc = key == event_ABC().canonical_key();
    if (is_a || is_abc) return true;
    for (CanonicalEvent cand : {CanonicalEvent::p01_s23, CanonicalEvent::p01_s01,
                            CanonicalEvent::p01_p23_s01, CanonicalEvent::all4})
        if (key == canonical_expr(cand).canonical_key()) {
            ev = cand;
            return true;
        }
    return false;
}

} // namespace detail

// Count semantics per method: `brute` and `closed`/`sum` count tuples with
// x0 = 0^n (for AuBuC the formula is the unrestricted one, matching
// `brute-full`); `brute-full` counts all ordered distinct tuples.
inline CountReport make_count_report(std::string_view expr_text, int n,
                                     std::string_view method) {
    const EventExpr expr = parse_event_expr(expr_text);
    BigInt value;
    if (method == "brute") {
        value = count_restricted(expr, n);
    } else if (method == "brute-full") {
        value = count_full(expr, n);
    } else if (method == "closed" || method == "sum") {
        CanonicalEvent ev{};
        bool is_a = false, is_abc = false;
        if (!detail::resolve_formula_expr(expr, ev, is_a, is_abc))
            throw std::invalid_argument(
                "closed/sum methods cover only the four canonical intersections, "
                "A = (P01|P23)&(S01|S23), and A|B|C");
        const bool closed = method == "closed";
        if (is_a) {
            value = closed ? cf_A_restricted(n)
                           : 2 * sum_form({CanonicalEvent::p01_s01, EventCase::total}, n) +
                                 2 * sum_form({CanonicalEvent::p01_s23, EventCase::total}, n) -
                                 4 * sum_form({CanonicalEvent::p01_p23_s01, EventCase::total}, n) +
                                 sum_form({CanonicalEvent::all4, EventCase::total}, n);
        } else if (is_abc) {
            value = closed ? cf_ABC(n)
                           : 3 * detail::pow2(n) *
                                 (2 * sum_form({CanonicalEvent::p01_s01, EventCase::total}, n) +
                                  2 * sum_form({CanonicalEvent::p01_s23, EventCase::total}, n) -
                                  4 * sum_form({CanonicalEvent::p01_p23_s01, EventCase::total}, n) +
                                  sum_form({CanonicalEvent::all4, EventCase::total}, n));
        } else {
            value = closed ? closed_form({ev, EventCase::total}, n)
                           : sum_form({ev, EventCase::total}, n);
        }
    } else {
        throw std::invalid_argument("count method must be brute, brute-full, closed, or sum");
    }
    return CountReport{n, expr.text(), std::string(method), std::move(value)};
}

inline int cmd_count(std::string_view expr_text, int n, std::string_view method,
                     std::ostream& out) {
    out << make_count_report(expr_text, n, method).value.str() << '\n';
    return 0;
}

namespace detail {

inline std::string render_split(Pairing p, const std::vector<std::string>& labels) {
    static constexpr int groups[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    const int* g = groups[static_cast<int>(p)];
    return "{" + labels[static_cast<std::size_t>(g[0])] + "," +
           labels[static_cast<std::size_t>(g[1])] + "}|{" +
           labels[static_cast<std::size_t>(g[2])] + "," +
           labels[static_cast<std::size_t>(g[3])] + "}";
}

} // namespace detail

inline int cmd_topology(std::string_view labels_csv, std::ostream& out) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : labels_csv) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 4)
        throw std::invalid_argument("topology needs exactly 4 comma-separated labels");
    const int n = static_cast<int>(parts[0].size());
    const Quartet q(parse_label(parts[0], n), parse_label(parts[1], n),
                    parse_label(parts[2], n), parse_label(parts[3], n));
    const Pairing p = prefix_topology(q);
    const Pairing s = suffix_topology(q);
    out << "prefix: " << detail::render_split(p, parts) << '\n';
    out << "suffix: " << detail::render_split(s, parts) << '\n';
    out << "agree: " << (p == s ? "yes" : "no") << '\n';
    return 0;
}

inline int cmd_newick(int n, std::string_view order, std::ostream& out) {
    LeafOrder lo;
    if (order == "prefix")
        lo = LeafOrder::prefix;
    else if (order == "suffix")
        lo = LeafOrder::suffix;
    else
        throw std::invalid_argument("order must be prefix or suffix");
    out << to_newick(build_tree(n, lo)) << '\n';
    return 0;
}

inline int cmd_distance(const std::string& file1, const std::string& file2,
                        std::ostream& out) {
    auto load = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::invalid_argument("cannot open tree file: " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_newick(buf.str());
    };
    out << quartet_distance(load(file1), load(file2)) << '\n';
    return 0;
}

inline int cmd_monotonic(int nmax, std::ostream& out) {
    if (nmax < 3 || nmax > 1024)
        throw std::invalid_argument("monotonic needs nmax in [3,1024]");
    bool pass = true;
    for (int n = 3; n <= nmax; ++n)
        if (monotone_crossdiff(n) <= 0) {
            out << "FAIL crossdiff(" << n << ") <= 0\n";
            pass = false;
        }
    out << "crossdiff positive for n in [3," << nmax << "]: " << (pass ? "yes" : "no")
        << '\n';
    bool dpass = true;
    for (int t = 11; t <= nmax; ++t)
        if (!(derivative_value(t) < 0.0)) {
            out << "FAIL derivative(" << t << ") >= 0\n";
            dpass = false;
        }
    if (nmax >= 11)
        out << "derivative negative for t in [11," << nmax << "]: "
            << (dpass ? "yes" : "no") << '\n';
    pass = pass && dpass;
    out << (pass ? "PASS" : "FAIL") << '\n';
    return pass ? 0 : 1;
}

} // namespace quartets
