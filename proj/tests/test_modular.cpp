#include <complex>

#include "doctest.h"
#include "n4/modular.hpp"
#include "support.hpp"

using namespace n4;

TEST_CASE("psi S and T laws")
{
    const NumericPoint p{{0.2, 0.9}, 0.13, 0.07, 0};
    CHECK(psi_s_residual({1, 0, 0, 0, 0}, p) < 1e-9);
    CHECK(psi_s_residual({2, rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)}, p) < 1e-9);
    CHECK(psi_t_residual({1, 0, 0, 0, 0}, p) < 1e-11);
    CHECK(psi_t_residual({3, 1, 2, 0, 0}, p) < 1e-9);
    CHECK(psi_t_residual({2, rat(1, 2), rat(3, 2), rat(1, 2), rat(1, 2)}, p) < 1e-9);

    // a wrong label on the right-hand side must show up
    const PsiParams a{2, rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)};
    const auto lhs = psi_numeric(a, NumericPoint{p.tau + 1.0, p.z1, p.z2, 0});
    const auto wrong = std::exp(std::complex<double>(0, M_PI / 4)) * psi_numeric(a, p);
    CHECK(std::abs(lhs - wrong) > 1e-3);

    const NumericPoint pole{{0.2, 0.9}, 0, 0.07, 0};
    CHECK_THROWS_AS(psi_s_residual({1, 0, 0, 0, 0}, pole), PoleProximity);
}

TEST_CASE("residuals shrink with precision")
{
    const NumericPoint p{{0.2, 0.9}, 0.13, 0.07, 0};
    const PsiParams a{2, rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)};
    const double d = psi_s_residual(a, p, Precision::Double);
    const double e = psi_s_residual(a, p, Precision::Extended);
    const double q = psi_s_residual(a, p, Precision::Quad);
    CHECK(e <= d);
    CHECK(q <= e);
    CHECK(q < 1e-30);
}

TEST_CASE("denominator laws")
{
    const NumericPoint p{{0.1, 1.1}, 0.21, 0, 0};
    for (Sign sg : {Sign::plus, Sign::minus})
        for (Sector sec : {Sector::NS, Sector::R})
            for (Transform w : {Transform::S, Transform::T})
                CHECK(denominator_transform_residual(sg, sec, w, p) < 1e-9);

    // with eps' = 0 the T-law is a pure relabelling
    const std::complex<double> tau(0.1, 1.1), z(0.21, 0);
    const auto a = denominator_numeric<double>(Sign::plus, Sector::R, tau + 1.0, z);
    const auto b = denominator_numeric<double>(Sign::plus, Sector::R, tau, z);
    CHECK(std::abs(a - b) < 1e-12);
}

TEST_CASE("character_numeric")
{
    for (const NumericPoint& p : generic_points())
        for (Sign sg : {Sign::plus, Sign::minus})
            for (bool tw : {false, true})
                CHECK(std::abs(character_numeric(1, 0, 0, Heart::I, sg, tw, p.tau, p.z1) - 1.0) < 1e-12);
    CHECK_THROWS_AS(character_numeric(2, 0, 1, Heart::I, Sign::plus, false, {0.1, 1.0}, 0.0), PoleProximity);

    // closed M = 2 form, numerically
    const std::complex<double> tau(0.07, 1.05), z(0.19, 0.04), I(0, 1);
    auto th = [](ThetaLabel l, std::complex<double> t, std::complex<double> w) { return theta_numeric(l, t, w); };
    const auto e1 = eta_numeric<double>(tau), e2 = eta_numeric<double>(2.0 * tau);
    const auto closed = I * std::pow(e2 / e1, 3) * th(ThetaLabel::t00, 2.0 * tau, z + tau / 2.0) *
                        th(ThetaLabel::t00, tau, z) /
                        (th(ThetaLabel::t10, 2.0 * tau, z + tau / 2.0) * th(ThetaLabel::t11, 2.0 * tau, 2.0 * z));
    CHECK(std::abs(character_numeric(2, 0, 1, Heart::I, Sign::plus, false, tau, z) - closed) < 1e-10);
}

TEST_CASE("precision_from_bits")
{
    CHECK(precision_from_bits(53) == Precision::Double);
    CHECK(precision_from_bits(64) == Precision::Extended);
    CHECK(precision_from_bits(100) == Precision::Quad);
    CHECK_THROWS(precision_from_bits(200));
}

TEST_CASE("span closure")
{
    for (int st : {1, 2}) {
        const auto fam = character_family(1, st);
        const auto c = span_closure(1, st, Transform::S, sample_points(3 * fam.size()), 1e-7);
        CHECK(c.basis.size() == 1);
        CHECK(c.residual < 1e-12);
        for (const auto& row : c.coefficients)
            CHECK(std::abs(row.at(0) - 1.0) < 1e-12);
    }

    {
        const auto fam = character_family(2, 2);
        const auto c = span_closure(2, 2, Transform::T, sample_points(3 * fam.size()), 1e-8);
        CHECK(c.passed());
        REQUIRE(c.diagonal_deviation);
        CHECK(*c.diagonal_deviation < 1e-6);
    }
    {
        const auto fam = character_family(3, 1);
        const auto c = span_closure(3, 1, Transform::S, sample_points(3 * fam.size()), 1e-7);
        CHECK(c.passed());
        CHECK(c.family.size() == fam.size());
        for (const auto& p : c.points)
            CHECK(p.tau.imag() >= 0.8);
        const std::string j = to_json(c);
        for (const char* key : {"\"transform\"", "\"family\"", "\"coefficients\"", "\"residual\"", "\"points\"",
                                "\"precision_bits\""})
            CHECK(j.find(key) != std::string::npos);
    }
}

TEST_CASE("span closure rejects bad samples")
{
    const auto fam = character_family(2, 1);
    CHECK_THROWS_AS(span_closure(2, 1, Transform::S, sample_points(fam.size()), 1e-7), std::invalid_argument);
    const std::vector<NumericPoint> same(3 * fam.size(), NumericPoint{{0.1, 1.0}, {0.1, 0.05}, {0.1, 0.05}, 0});
    CHECK_THROWS_AS(span_closure(2, 1, Transform::S, same, 1e-7), IllConditioned);
}

TEST_CASE("sample points are reproducible")
{
    const auto a = sample_points(12), b = sample_points(12), c = sample_points(12, 5);
    REQUIRE(a.size() == 12);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].tau == b[i].tau);
        CHECK(a[i].z1 == b[i].z1);
    }
    CHECK(a[0].tau != c[0].tau);
}

TEST_CASE("modular suite")
{
    SuiteConfig cfg;
    n4::testing::require_cases("modular", modular_cases(cfg), cfg);
}
