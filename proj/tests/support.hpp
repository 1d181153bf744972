#pragma once

#include <string>
#include <string_view>

#include "doctest.h"
#include "n4/series.hpp"
#include "n4/suites.hpp"

namespace n4::testing {

/// every case of the list must pass
inline void require_cases(std::string_view suite, const std::vector<SuiteCase>& cases, const SuiteConfig& cfg = {})
{
    REQUIRE_FALSE(cases.empty());
    const SuiteReport r = run_suite(std::string(suite), cases, cfg);
    for (const auto& c : r.cases) {
        INFO(c.id << ": " << c.detail);
        CHECK(c.status == CaseStatus::pass);
    }
}

inline JacobiSeries poly(std::initializer_list<std::tuple<Rational, Rational, GaussianRational>> terms,
                         QOrder order = {})
{
    JacobiSeries s;
    for (const auto& [q, x, c] : terms)
        s = s + JacobiSeries::monomial(q, x, c);
    if (order)
        s = s.truncated(*order);
    return s;
}

/// lowest stored q-exponent, as a named value (doctest keeps operands by reference)
inline Rational lowest(const JacobiSeries& s)
{
    REQUIRE(s.lowest_q().has_value());
    return s.lowest_q().value();
}

} // namespace n4::testing
