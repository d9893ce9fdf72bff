#pragma once

// Three-way verification: for each event/case, the brute-force restricted
// count, the summation form, and the closed-form polynomial must agree
// exactly. On top of that: inclusion-exclusion for A, the A u B u C scaling,
// the unordered agreement count, and the distance identity.

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "quartets/closed_forms.hpp"
#include "quartets/events.hpp"

namespace quartets {

struct VerifyEntry {
    std::string event;
    std::string kase;
    std::optional<BigInt> brute; // absent when brute force was not requested
    BigInt sum_form = 0;         // summation route (or sum-based combination)
    BigInt closed_form = 0;      // polynomial route
    bool match = false;
    double elapsed_ms = 0.0;
};

struct VerificationReport {
    int n = 0;
    bool with_brute = false;
    bool overall_pass = false;
    std::vector<VerifyEntry> entries;
};

inline constexpr int kMaxVerifyBruteN = 6;
inline constexpr int kMaxVerifyN = 64;

inline VerificationReport run_verification(int n, bool include_brute,
                                           const FormulaTable& table = reference_formulas()) {
    if (n < 2 || n > (include_brute ? kMaxVerifyBruteN : kMaxVerifyN))
        throw std::invalid_argument("verify supports n in [2," +
                                    std::to_string(include_brute ? kMaxVerifyBruteN
                                                                 : kMaxVerifyN) +
                                    (include_brute ? "] with brute force" : "]"));

    VerificationReport report;
    report.n = n;
    report.with_brute = include_brute;

    using clock = std::chrono::steady_clock;
    auto add = [&](std::string event, std::string kase, std::optional<BigInt> brute,
                   BigInt sum, BigInt closed, clock::time_point t0) {
        VerifyEntry e;
        e.event = std::move(event);
        e.kase = std::move(kase);
        e.brute = std::move(brute);
        e.sum_form = std::move(sum);
        e.closed_form = std::move(closed);
        e.match = e.sum_form == e.closed_form &&
                  (!e.brute.has_value() || *e.brute == e.sum_form);
        e.elapsed_ms =
            std::chrono::duration<double, std::milli>(clock::now() - t0).count();
        report.entries.push_back(std::move(e));
    };

    constexpr CanonicalEvent kEvents[] = {CanonicalEvent::p01_s23, CanonicalEvent::p01_s01,
                                      CanonicalEvent::p01_p23_s01, CanonicalEvent::all4};

    for (CanonicalEvent ev : kEvents) {
        const auto t0 = clock::now();
        std::map<std::pair<int, int>, std::int64_t> bins;
        std::optional<BigInt> brute_total;
        if (include_brute) {
            bins = stratified_restricted_counts(ev, n);
            brute_total = count_restricted(canonical_expr(ev), n);
        }
        std::vector<EventCase> cases{EventCase::case1, EventCase::case2};
        if (ev == CanonicalEvent::p01_s23) cases.push_back(EventCase::case3);
        BigInt sum_total = 0;
        for (EventCase c : cases) {
            const EventCaseId id{ev, c};
            std::optional<BigInt> brute_case;
            if (include_brute) {
                std::int64_t acc = 0;
                for (const auto& [lk, cnt] : bins)
                    if (in_case_region(id, n, lk.first, lk.second)) acc += cnt;
                brute_case = acc;
            }
            const BigInt s = sum_form(id, n);
            sum_total += s;
            add(std::string(to_string(ev)), std::string(to_string(c)), brute_case, s,
                closed_form(id, n, table), t0);
        }
        add(std::string(to_string(ev)), "total", brute_total, sum_total,
            closed_form({ev, EventCase::total}, n, table), t0);
    }

    // A with x0 = 0^n: inclusion-exclusion of the sums vs the A polynomial
    const auto ta = clock::now();
    const BigInt a_sums = 2 * sum_form({CanonicalEvent::p01_s01, EventCase::total}, n) +
                          2 * sum_form({CanonicalEvent::p01_s23, EventCase::total}, n) -
                          4 * sum_form({CanonicalEvent::p01_p23_s01, EventCase::total}, n) +
                          sum_form({CanonicalEvent::all4, EventCase::total}, n);
    std::optional<BigInt> a_brute;
    if (include_brute) a_brute = count_restricted(event_A(), n);
    add("A", "restricted", a_brute, a_sums, cf_A_restricted(n, table), ta);

    // A u B u C, unrestricted: 3 * 2^n * |A restricted|
    const auto tu = clock::now();
    const BigInt abc_sums = 3 * detail::pow2(n) * a_sums;
    std::optional<BigInt> abc_brute;
    if (include_brute) abc_brute = count_full(event_ABC(), n);
    add("AuBuC", "full", abc_brute, abc_sums, cf_ABC(n, table), tu);

    // unordered agreement: topology scan vs |AuBuC|/24
    const auto tg = clock::now();
    if (abc_sums % 24 != 0)
        throw std::logic_error("sum route: |AuBuC| not divisible by 24");
    std::optional<BigInt> agree_brute;
    if (include_brute) agree_brute = count_agreeing_unordered(n);
    const BigInt agree_sums = abc_sums / 24;
    add("agreement", "unordered", agree_brute, agree_sums,
        agreeing_unordered_cf(n, table), tg);

    // distance = total - agreeing
    const auto td = clock::now();
    const BigInt total = total_unordered(n);
    std::optional<BigInt> dist_brute;
    if (agree_brute) dist_brute = total - *agree_brute;
    add("distance", "unordered", dist_brute, total - agree_sums, distance_cf(n), td);

    report.overall_pass = true;
    for (const VerifyEntry& e : report.entries)
        if (!e.match) report.overall_pass = false;
    return report;
}

// Counts are serialized as decimal strings; they outgrow JSON numbers fast.
inline nlohmann::ordered_json to_json(const VerificationReport& r) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["n"] = r.n;
    j["with_brute"] = r.with_brute;
    j["overall_pass"] = r.overall_pass;
    j["entries"] = nlohmann::ordered_json::array();
    for (const VerifyEntry& e : r.entries) {
        nlohmann::ordered_json je;
        je["event"] = e.event;
        je["case"] = e.kase;
        if (e.brute) je["brute"] = e.brute->str();
        je["sum_form"] = e.sum_form.str();
        je["closed_form"] = e.closed_form.str();
        je["match"] = e.match;
        je["timing"] = {{"elapsed_ms", e.elapsed_ms}};
        j["entries"].push_back(std::move(je));
    }
    return j;
}

} // namespace quartets
