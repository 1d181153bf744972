#include "doctest.h"
#include "n4/characters.hpp"
#include "n4/modular.hpp"
#include "n4/numerators.hpp"
#include "support.hpp"

using namespace n4;

namespace {

SeriesRatio one(const Rational&) { return {JacobiSeries::constant(1), JacobiSeries::constant(1)}; }

} // namespace

TEST_CASE("central charge")
{
    CHECK(central_charge(1) == 0);
    CHECK(central_charge(2) == -3);
    CHECK(central_charge(3) == -4);
    CHECK_THROWS_AS(central_charge(0), std::invalid_argument);
}

TEST_CASE("h and s")
{
    CHECK(h_s_values({2, rat(1, 2), Sector::NS, Sign::plus}) == HS{rat(-1, 4), rat(-1, 2)});
    CHECK(h_s_values({2, 0, Sector::R, Sign::plus}) == HS{rat(-1, 8), 0});
    CHECK(h_s_values({1, rat(1, 2), Sector::NS, Sign::minus}) == HS{0, 0});
    CHECK_THROWS_AS(h_s_values({2, rat(3, 2), Sector::NS, Sign::plus}), std::invalid_argument);
}

TEST_CASE("index sets")
{
    CHECK(index_set(2, Sector::NS) == std::vector<Rational>{rat(-1, 2), rat(1, 2)});
    CHECK(index_set(2, Sector::R) == std::vector<Rational>{0, 1});
    CHECK(index_set(1, Sector::R) == std::vector<Rational>{0});
    CHECK(index_set(4, Sector::NS).size() == 4);
    CharacterSpec bad{3, 2, Sector::NS, Sign::plus};
    const std::string admissible = describe_index_set(3, Sector::NS);
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains(admissible.c_str()), std::invalid_argument);
}

TEST_CASE("sgn_j")
{
    CHECK(sgn_j(rat(1, 2)) == 1);
    CHECK(sgn_j(0) == -1);
    CHECK(sgn_j(rat(-1, 2)) == -1);
}

TEST_CASE("trivial module")
{
    for (Sign sg : {Sign::plus, Sign::minus}) {
        const CharacterSpec ns{1, rat(1, 2), Sector::NS, sg};
        const CharacterSpec r{1, 0, Sector::R, sg};
        for (const auto& s : {ns, r}) {
            const SeriesRatio c = character_ratio(s, 10);
            CHECK(equal_to_order(c.num, c.den, *c.cross_order(one(0))));
            CHECK(cross_equal_to([&](const Rational& o) { return character_ratio(s, o); }, one, 20));
        }
    }
}

TEST_CASE("denominators")
{
    for (Sign sg : {Sign::plus, Sign::minus})
        for (Sector sec : {Sector::NS, Sector::R})
            CHECK_NOTHROW(denominator_three_theta(sg, sec, 12));

    // z -> z + 1/2 swaps plus and minus
    const Rational o = 8;
    for (Sector sec : {Sector::NS, Sector::R}) {
        const SeriesRatio p = denominator(Sign::plus, sec, o + 1);
        const SeriesRatio m = denominator(Sign::minus, sec, o + 1);
        const SeriesRatio shifted(subst_shift_z(p.num, 0, rat(1, 2)), subst_shift_z(p.den, 0, rat(1, 2)));
        CHECK(cross_equal(shifted, m, o));
    }

    const std::complex<double> tau(0.12, 0.95), z(0.17, 0.03);
    for (Sign sg : {Sign::plus, Sign::minus})
        for (Sector sec : {Sector::NS, Sector::R}) {
            const auto series = eval_numeric<double>(denominator(sg, sec, 30), tau, z);
            const auto direct = denominator_numeric<double>(sg, sec, tau, z);
            CHECK(std::abs(series - direct) < 1e-11);
        }
}

TEST_CASE("character_ratio M=2 closed form")
{
    // i [eta(2tau)/eta(tau)]^3 theta00(2tau, z+tau/2) theta00(tau, z) / (theta10(2tau, z+tau/2) theta11(2tau, 2z))
    const ThetaArg half{2, 1, rat(1, 2), 0};
    const RatioBuilder closed = ratio_of(
        {monomial_builder(0, 0, GaussianRational::i()), eta_builder(2), eta_builder(2), eta_builder(2),
         theta_builder(ThetaLabel::t00, half), theta_builder(ThetaLabel::t00)},
        {eta_builder(), eta_builder(), eta_builder(), theta_builder(ThetaLabel::t10, half),
         theta_builder(ThetaLabel::t11, {2, 2})});
    const CharacterSpec spec{2, rat(1, 2), Sector::NS, Sign::plus};
    CHECK(cross_equal_to([&](const Rational& o) { return character_ratio(spec, o); }, closed, 10));
}

TEST_CASE("character_series leading terms")
{
    const XWindow w{-6, 6};
    const JacobiSeries ns = character_series({2, rat(1, 2), Sector::NS, Sign::plus}, 1, w);
    const Rational ns_low = n4::testing::lowest(ns);
    CHECK(ns_low == rat(-1, 8));
    const auto lead = ns.level(rat(-1, 8));
    // x^{-1/2} (1 + x^{-2} + x^{-4} + ...)
    for (const auto& [x, c] : lead) {
        const Rational k = (rat(-1, 2) - x) / 2;
        CHECK(c == (is_integer(k) && k >= 0 ? GaussianRational(1) : GaussianRational(0)));
    }
    CHECK(lead.size() == 3);

    const JacobiSeries r0 = character_series({2, 0, Sector::R, Sign::plus}, 1, w);
    const Rational r0_low = n4::testing::lowest(r0);
    CHECK(r0_low == 0);
    CHECK(r0.level(0) == std::vector<std::pair<Rational, GaussianRational>>{{Rational(0), GaussianRational(1)}});

    for (Sign sg : {Sign::plus, Sign::minus}) {
        const JacobiSeries r1 = character_series({2, 1, Sector::R, sg}, 1, w);
        const Rational r1_low = n4::testing::lowest(r1);
        CHECK(r1_low == rat(1, 2));
        const long pm = sg == Sign::plus ? 1 : -1;
        const std::vector<std::pair<Rational, GaussianRational>> want{
            {Rational(-1), GaussianRational(1)}, {Rational(0), GaussianRational(2 * pm)}, {Rational(1), GaussianRational(1)}};
        CHECK(r1.level(rat(1, 2)) == want);
    }

    for (int M = 1; M <= 6; ++M)
        for (Sector sec : {Sector::NS, Sector::R})
            for (const Rational& j : index_set(M, sec))
                for (Sign sg : {Sign::plus, Sign::minus}) {
                    const CharacterSpec s{M, j, sec, sg};
                    const Rational want = -central_charge(M) / 24 + h_s_values(s).h;
                    const JacobiSeries c = character_series(s, want + 1, w);
                    const Rational got = n4::testing::lowest(c);
                    CHECK(got == want);
                }
}

TEST_CASE("numerator table")
{
    CHECK(numerator_table().size() == 8);
    for (Sector sec : {Sector::NS, Sector::R})
        for (Sign sg : {Sign::plus, Sign::minus})
            for (Heart h : {Heart::I, Heart::III})
                CHECK_NOTHROW(numerator_case(sec, sg, h));
    CHECK_THROWS_AS(numerator_case(Sector::NS, Sign::plus, Heart::II), std::invalid_argument);

    // heart III at k1 carries the opposite sign of heart I at the reflected index
    for (int M = 2; M <= 5; ++M)
        for (int k1 = 0; 2 * k1 + 1 <= M - 1; ++k1) {
            const auto a = nice_indices(M, k1, Heart::I, Sign::plus, false);
            const auto b = nice_indices(M, k1, Heart::III, Sign::plus, false);
            CHECK(a.global_sign == -b.global_sign);
            CHECK(a.psi.j == -b.psi.j);
        }

    const auto dd = dd_indices(3, 0, 0, Heart::I, Sign::minus, false);
    CHECK(dd.psi.j == rat(1, 2));
    CHECK(dd.psi.k == rat(5, 2));
    CHECK(dd.psi.eps == 0);
    CHECK(dd.psi.eps_prime == rat(1, 2));

    CHECK_THROWS_AS(dd_indices(3, 2, 0, Heart::I, Sign::plus, false), std::invalid_argument);
    CHECK_THROWS_AS(nice_numerator(3, 2, Heart::I, Sign::plus, false, 4), std::invalid_argument);
}

TEST_CASE("nice numerators")
{
    CHECK(cross_equal_to([](const Rational& o) { return nice_numerator(1, 0, Heart::I, Sign::plus, false, o); },
                         [](const Rational& o) { return denominator(Sign::plus, Sector::NS, o); }, 10));

    const CharacterSpec s{2, rat(-1, 2), Sector::NS, Sign::plus};
    CHECK(nice_param_to_j(2, 0, Heart::III, false) == rat(-1, 2));
    CHECK(cross_equal_to([](const Rational& o) { return nice_numerator(2, 0, Heart::III, Sign::plus, false, o); },
                         [&](const Rational& o) { return denominator(Sign::plus, Sector::NS, o) * character_ratio(s, o); },
                         8));
}

TEST_CASE("character suite")
{
    SuiteConfig cfg;
    n4::testing::require_cases("characters", character_cases(cfg), cfg);
}
