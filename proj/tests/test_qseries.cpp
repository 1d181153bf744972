#include <complex>
#include <random>

#include "doctest.h"
#include "n4/series.hpp"
#include "n4/series_json.hpp"
#include "n4/theta.hpp"
#include "support.hpp"

using namespace n4;
using n4::testing::poly;

namespace {

// small random series on the lattice (1/2)Z x (1/2)Z, exact
JacobiSeries random_series(std::mt19937& rng)
{
    std::uniform_int_distribution<int> qd(0, 4), xd(-4, 4), cd(-3, 3), nd(1, 4);
    JacobiSeries s;
    const int n = nd(rng);
    for (int i = 0; i < n; ++i)
        s = s + JacobiSeries::monomial(rat(qd(rng), 2), rat(xd(rng), 2), GaussianRational(cd(rng), cd(rng)));
    return s;
}

bool same(const JacobiSeries& a, const JacobiSeries& b, const Rational& o = 40) { return equal_to_order(a, b, o); }

} // namespace

TEST_CASE("add")
{
    const JacobiSeries s = poly({{0, 0, 1}, {rat(1, 2), 1, 3}, {2, -1, GaussianRational(0, 1)}});
    CHECK(same(s + JacobiSeries(), s));

    const JacobiSeries t = theta_product(ThetaLabel::t00, 1);
    const JacobiSeries z = t + (-t);
    CHECK(z.is_zero());
    CHECK(z.q_order() == QOrder(Rational(1)));

    const JacobiSeries a = poly({{0, 0, 1}, {rat(1, 2), 1, 1}});
    const JacobiSeries b = poly({{0, 0, 1}, {rat(1, 2), 1, -1}});
    CHECK(same(a + b, JacobiSeries::constant(2)));
}

TEST_CASE("mul")
{
    const JacobiSeries a = poly({{0, 0, 1}, {1, 1, -1}});
    const JacobiSeries b = poly({{0, 0, 1}, {1, 1, 1}});
    CHECK(same(a * b, poly({{0, 0, 1}, {2, 2, -1}})));

    // first factors of the theta00 triple product, by hand
    const JacobiSeries f = poly({{0, 0, 1}, {1, 0, -1}}) * poly({{0, 0, 1}, {rat(1, 2), 1, 1}}) *
                           poly({{0, 0, 1}, {rat(1, 2), -1, 1}}) * poly({{0, 0, 1}, {rat(3, 2), 1, 1}});
    const JacobiSeries g = f.truncated(2);
    CHECK(g.coeff(0, 0) == GaussianRational(1));
    CHECK(g.coeff(rat(1, 2), 1) == GaussianRational(1));
    CHECK(g.coeff(rat(1, 2), -1) == GaussianRational(1));
    CHECK(g.q_order() == QOrder(Rational(2)));

    const JacobiSeries s = poly({{0, 0, 2}, {rat(3, 2), rat(-1, 2), 5}});
    CHECK(same(s * JacobiSeries::constant(1), s));
}

TEST_CASE("scale_monomial")
{
    CHECK(same(scale_monomial(JacobiSeries::constant(1), rat(1, 8), rat(1, 2), 1),
               JacobiSeries::monomial(rat(1, 8), rat(1, 2), 1)));
    const JacobiSeries s = theta_product(ThetaLabel::t01, 3);
    CHECK(same(scale_monomial(s, 0, 0, 1), s, 3));

    const JacobiSeries lead = poly({{rat(1, 8), rat(1, 2), 1}, {rat(1, 8), rat(-1, 2), 1}}, Rational(1));
    const JacobiSeries shifted = scale_monomial(lead, rat(-1, 8), rat(-1, 2), 1);
    CHECK(same(shifted, poly({{0, 0, 1}, {0, -1, 1}}), rat(7, 8)));
    CHECK(shifted.q_order() == QOrder(rat(7, 8)));
}

TEST_CASE("subst_scale_tau")
{
    const JacobiSeries s = theta_product(ThetaLabel::t10, 4);
    CHECK(same(subst_scale_tau(s, 1), s, 4));
    CHECK(same(subst_scale_tau(JacobiSeries::monomial(rat(1, 2), 1, 1), 2), JacobiSeries::monomial(1, 1, 1)));
    const JacobiSeries d = subst_scale_tau(theta_product(ThetaLabel::t00, 2), 2);
    CHECK(d.q_order() == QOrder(Rational(4)));
    CHECK(same(d, poly({{0, 0, 1}, {1, 1, 1}, {1, -1, 1}}, Rational(4)), 4));
    CHECK_THROWS_AS(subst_scale_tau(s, 0), std::invalid_argument);
}

TEST_CASE("subst_shift_z")
{
    const Rational o = 6;
    const JacobiSeries t00 = theta_product(ThetaLabel::t00, o + 2);
    const JacobiSeries t10 = theta_product(ThetaLabel::t10, o + 2);
    const JacobiSeries lhs = subst_shift_z(t00, rat(1, 2), 0);
    REQUIRE(lhs.q_order());
    CHECK(*lhs.q_order() >= o);
    CHECK(same(lhs, scale_monomial(t10, rat(-1, 8), rat(-1, 2), 1), o));

    CHECK(same(subst_shift_z(t00, 0, 0), t00, o));

    const JacobiSeries t11 = theta_product(ThetaLabel::t11, o);
    CHECK(same(subst_shift_z(t11, 0, rat(1, 2)), -theta_product(ThetaLabel::t10, o), o));

    CHECK_THROWS_AS(subst_shift_z(t11, 0, rat(1, 3)), std::invalid_argument);
}

TEST_CASE("subst_shift_z round trip")
{
    std::mt19937 rng(7);
    for (int i = 0; i < 20; ++i) {
        const JacobiSeries s = random_series(rng);
        // x-exponents are half-integers, so the z shift must be a multiple of 1/2 to stay in Q(i)
        for (auto [a, b] : {std::pair{rat(1, 2), rat(1, 2)}, {rat(3, 2), Rational(1)}, {rat(-1, 2), rat(-1, 2)}}) {
            const JacobiSeries back = subst_shift_z(subst_shift_z(s, a, b), -a, -b);
            CHECK(same(back, s));
        }
    }
}

TEST_CASE("subst_negate_z")
{
    const Rational o = 10;
    CHECK(same(subst_negate_z(theta_product(ThetaLabel::t00, o)), theta_product(ThetaLabel::t00, o), o));
    CHECK(same(subst_negate_z(theta_product(ThetaLabel::t11, 2)), -theta_product(ThetaLabel::t11, 2), rat(9, 8)));
    CHECK(same(subst_negate_z(JacobiSeries::monomial(0, 1, 1)), JacobiSeries::monomial(0, -1, 1)));
}

TEST_CASE("invert_directed")
{
    const XWindow w{-12, 12};
    const JacobiSeries s = poly({{0, 0, 1}, {0, -2, -1}});
    const JacobiSeries t = invert_directed(s, w, Rational(1));
    for (int e = 0; e >= -12; e -= 2)
        CHECK(t.coeff(0, e) == GaussianRational(1));
    CHECK(t.coeff(0, 2) == GaussianRational(0));
    REQUIRE(t.x_window());
    CHECK(*t.x_window() == w);

    const JacobiSeries h = poly({{0, rat(1, 2), 1}, {0, rat(-1, 2), 1}});
    const JacobiSeries hi = invert_directed(h, w, Rational(1));
    CHECK(hi.coeff(0, rat(-1, 2)) == GaussianRational(1));
    CHECK(hi.coeff(0, rat(-3, 2)) == GaussianRational(-1));
    CHECK(hi.coeff(0, rat(-5, 2)) == GaussianRational(1));
    CHECK(hi.coeff(0, rat(1, 2)) == GaussianRational(0));

    CHECK(same(invert_directed(JacobiSeries::constant(1), w, Rational(3)), JacobiSeries::constant(1), 3));

    CHECK_THROWS(invert_directed(JacobiSeries(), w, Rational(1)));
}

TEST_CASE("invert_directed multiplies back to one")
{
    const XWindow w{-10, 10};
    const Rational o = 3;
    for (ThetaLabel l : all_theta_labels) {
        const JacobiSeries s = theta_product(l, o + 1);
        const JacobiSeries t = invert_directed(s, w, o);
        const JacobiSeries p = s * t;
        CAPTURE(to_string(l));
        // the product s * (1/s) is exact inside the window away from its lower edge
        for (const Rational& q : p.levels())
            for (const auto& [x, c] : p.level(q))
                if (x > w.lo + 4)
                    CHECK(c == (q == 0 && x == 0 ? GaussianRational(1) : GaussianRational(0)));
    }
}

TEST_CASE("eval_numeric")
{
    const std::complex<double> tau(0, 1), z(0.1, 0.02);
    CHECK(std::abs(eval_numeric(JacobiSeries::constant(1), tau, z) - 1.0) < 1e-15);
    CHECK(std::abs(eval_numeric(JacobiSeries::monomial(rat(1, 8), 0, 1), tau, 0.0) - std::exp(-M_PI / 4)) < 1e-15);
    const auto s = eval_numeric(theta_product(ThetaLabel::t00, 40), tau, 0.0);
    CHECK(std::abs(s - theta_numeric(ThetaLabel::t00, tau, 0.0)) < 1e-12);
}

TEST_CASE("eval_numeric is multiplicative up to truncation")
{
    const Rational o = 12;
    const std::complex<double> tau(0.13, 0.9), z(0.21, -0.05);
    for (ThetaLabel a : all_theta_labels)
        for (ThetaLabel b : all_theta_labels) {
            const JacobiSeries sa = theta_product(a, o), sb = theta_product(b, o);
            const auto lhs = eval_numeric(sa * sb, tau, z);
            const auto rhs = eval_numeric(sa, tau, z) * eval_numeric(sb, tau, z);
            // truncation error is of size |q|^{12}, about 1e-29 here
            CHECK(std::abs(lhs - rhs) < 1e-12);
        }
}

TEST_CASE("equal_to_order")
{
    const JacobiSeries s = theta_product(ThetaLabel::t01, 5);
    CHECK(equal_to_order(s, s, 5));
    CHECK(equal_to_order(theta_product(ThetaLabel::t00, 20), theta_sum(ThetaLabel::t00, 20), 20));
    CHECK_FALSE(equal_to_order(theta_product(ThetaLabel::t00, 1), theta_product(ThetaLabel::t01, 1), 1));
    CHECK_THROWS_AS(equal_to_order(s, s, 6), std::invalid_argument);
}

TEST_CASE("ring axioms on random series")
{
    std::mt19937 rng(20240917);
    for (int i = 0; i < 60; ++i) {
        const JacobiSeries a = random_series(rng), b = random_series(rng), c = random_series(rng);
        CHECK(same(a + b, b + a));
        CHECK(same(a * b, b * a));
        CHECK(same((a + b) + c, a + (b + c)));
        CHECK(same((a * b) * c, a * (b * c)));
        CHECK(same(a * (b + c), a * b + a * c));
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("truncated multiplication keeps the smaller order")
{
    const JacobiSeries a = theta_product(ThetaLabel::t00, 3), b = theta_product(ThetaLabel::t01, 5);
    CHECK((a * b).q_order() == QOrder(Rational(3)));
    CHECK((a + b).q_order() == QOrder(Rational(3)));
}

TEST_CASE("json round trip")
{
    for (const JacobiSeries& s : {theta_product(ThetaLabel::t11, 4), JacobiSeries::constant(GaussianRational(rat(1, 3), -2)),
                                  invert_directed(theta_product(ThetaLabel::t10, 3), XWindow{-6, 6}, Rational(2))}) {
        const std::string j = to_json(s);
        const JacobiSeries back = series_from_json(j);
        CHECK(to_json(back) == j);
        CHECK(back.q_order() == s.q_order());
        CHECK(back.x_window() == s.x_window());
    }
    CHECK(to_json(JacobiSeries::constant(1)).find("\"inf\"") != std::string::npos);
    CHECK_THROWS_AS(series_from_json("{\"q_den\": 1}"), std::invalid_argument);
    CHECK_THROWS_AS(series_from_json("not json"), std::invalid_argument);
}
