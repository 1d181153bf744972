#include "doctest.h"
#include "n4/characters.hpp"
#include "n4/reduction.hpp"
#include "support.hpp"

using namespace n4;

TEST_CASE("reduction_hs")
{
    ReductionParams p{3, 1, 0, 0, 2, Heart::I, false};
    CHECK(reduction_hs(p).s == rat(-2, 3));

    for (int M = 1; M <= 9; ++M)
        for (int k1 = 0; 2 * k1 <= M - 1; ++k1) {
            const ReductionParams n{M, 1, 0, k1, M - 1 - 2 * k1, Heart::I, false};
            const Rational a = Rational(k1) + rat(1, 2);
            CHECK(reduction_hs(n).h == a * a / M + Rational(1) / (4 * M) - rat(1, 2));
        }
}

TEST_CASE("heart I at (k1, k2) matches heart IV at (k1 + 1, k2)")
{
    for (int M = 2; M <= 7; ++M)
        for (int m = 1; m <= 3; ++m)
            for (int m2 = 0; m2 <= m; ++m2)
                for (int k1 = 0; 2 * k1 <= M - 1; ++k1)
                    for (int k2 = 0; 2 * k1 + k2 <= M - 2; ++k2)
                        for (bool tw : {false, true}) {
                            const ReductionParams a{M, m, m2, k1, k2, Heart::I, tw};
                            const ReductionParams b{M, m, m2, k1 + 1, k2, Heart::IV, tw};
                            CHECK(reduction_hs(a) == reduction_hs(b));
                        }
}

TEST_CASE("nice_param_to_j")
{
    CHECK(nice_param_to_j(2, 0, Heart::I, false) == rat(1, 2));
    CHECK(nice_param_to_j(2, 0, Heart::III, true) == 1);
    const Rational j = nice_param_to_j(5, 2, Heart::I, true);
    CHECK(j == -2);
    const auto set = index_set(5, Sector::R);
    CHECK(std::find(set.begin(), set.end(), j) != set.end());
    CHECK_THROWS_AS(nice_param_to_j(2, 1, Heart::I, false), std::invalid_argument);
    CHECK_THROWS_AS(nice_param_to_j(2, 0, Heart::II, false), std::invalid_argument);

    // the nice-case reduction lands on a valid character index with matching (h, s)
    for (int M = 1; M <= 9; ++M)
        for (Heart h : {Heart::I, Heart::III})
            for (bool tw : {false, true}) {
                const auto [lo, hi] = nice_k1_range(M, h);
                for (int k1 = lo; k1 <= hi; ++k1) {
                    const CharacterSpec s{M, nice_param_to_j(M, k1, h, tw), tw ? Sector::R : Sector::NS, Sign::plus};
                    CHECK_NOTHROW(s.validate());
                    CHECK(nice_hs_closed_form(M, k1, h, tw) == h_s_values(s));
                }
            }
}

TEST_CASE("vanishes")
{
    CHECK(vanishes({3, 1, 1, 1, 0, Heart::I, false}));
    CHECK_FALSE(vanishes({3, 1, 0, 1, 0, Heart::I, false}));
    for (int M = 1; M <= 4; ++M)
        for (int k1 = 1; 2 * k1 <= M; ++k1)
            for (int k2 = 1; 2 * k1 + k2 <= M; ++k2)
                for (int m2 = 0; m2 <= 1; ++m2)
                    CHECK_FALSE(vanishes({M, 1, m2, k1, k2, Heart::II, false}));
}

TEST_CASE("parameter validation")
{
    CHECK_THROWS_AS(ReductionParams({3, 1, 2, 0, 0, Heart::I, false}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(ReductionParams({3, 1, 0, 1, 1, Heart::I, false}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(ReductionParams({3, 1, 0, 0, 0, Heart::II, false}).validate(), std::invalid_argument);
    CHECK(reduction_central_charge(3, 1) == -4);
}

TEST_CASE("reduction suite")
{
    SuiteConfig cfg;
    n4::testing::require_cases("reduction", reduction_cases(cfg), cfg);
}
