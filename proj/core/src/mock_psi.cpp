#include "n4/mock_psi.hpp"

#include <cmath>

namespace n4 {

bool is_half_bit(const Rational& e) { return e == 0 || e == rat(1, 2); }

Rational half_mod1(const Rational& e)
{
    Rational twice = e * 2;
    if (!is_integer(twice))
        throw std::invalid_argument("not a half-integer: " + to_string(e));
    return is_integer(e) ? Rational(0) : rat(1, 2);
}

void PsiParams::validate() const
{
    if (M < 1)
        throw std::invalid_argument("M must be positive");
    if (!is_half_bit(eps) || !is_half_bit(eps_prime))
        throw std::invalid_argument("eps and eps' must be 0 or 1/2");
    if (!is_integer(j - eps_prime) || !is_integer(k - eps_prime))
        throw std::invalid_argument("j and k must lie in eps' + Z (j=" + to_string(j) + ", k=" + to_string(k) +
                                    ", eps'=" + to_string(eps_prime) + ")");
}

SumWithTail phi_a11_numeric(int m, const Rational& s, const NumericPoint& p, int j_cutoff, double tol)
{
    if (m < 1 || j_cutoff < 1)
        throw std::invalid_argument("m and j_cutoff must be positive");
    if (!(p.tau.imag() > 0))
        throw std::domain_error("phi_a11_numeric needs Im tau > 0");
    using C = std::complex<double>;
    const double sd = s.get_d();
    const C x1 = e2pi<double>(p.z1);
    auto term = [&](long j) {
        const C qj = e2pi<double>(p.tau * double(j));
        const C d = check_pole(C(1) - x1 * qj, "1 - x1 q^j");
        const C w = double(m) * double(j) * (p.z1 + p.z2) + sd * p.z1 + p.tau * (double(m) * j * j + sd * j);
        return e2pi<double>(w) / (d * d);
    };
    C sum = term(0);
    for (long j = 1; j <= j_cutoff; ++j)
        sum += term(j) + term(-j);
    const double tail = std::abs(term(j_cutoff)) + std::abs(term(-j_cutoff));
    if (tail > tol)
        throw std::domain_error("phi_a11_numeric: tail estimate " + std::to_string(tail) + " above tolerance");
    return {e2pi<double>(-double(m) * p.t) * sum, tail};
}

SeriesRatio psi_diag_ratio(const PsiParams& a, const Rational& q_order)
{
    a.validate();
    if (a.j != a.k)
        throw std::invalid_argument("psi_diag_ratio needs j = k");
    const ThetaArg arg{a.M, 1, a.j, 0};
    const bool plus = a.eps != 0;
    const ThetaLabel third = plus ? ThetaLabel::t11 : ThetaLabel::t10;
    const ThetaLabel below = plus ? ThetaLabel::t10 : ThetaLabel::t11;
    const GaussianRational c = plus ? GaussianRational::i() : -GaussianRational::i();
    const Rational aq = a.j * a.j / a.M, ax = 2 * a.j / a.M;
    auto th = [arg](ThetaLabel l) { return [l, arg](const Rational& o) { return theta_at(l, arg, o); }; };
    JacobiSeries num = product_to_order(
        {[&](const Rational&) { return JacobiSeries::monomial(aq, ax, c); }, th(ThetaLabel::t00), th(ThetaLabel::t01),
         th(third)},
        q_order);
    return {std::move(num), theta_at(below, arg, q_order)};
}

SeriesRatio psi_zz_ratio(const PsiParams& a, const Rational& q_order)
{
    a.validate();
    const Rational aq = a.j * a.k / a.M, ax = (a.j + a.k) / a.M;
    const std::int64_t M = a.M;
    const Rational jk = a.j + a.k;
    const SeriesBuilder eta = [M](const Rational& o) { return eta_at(M, o); };
    JacobiSeries num = product_to_order(
        {[&](const Rational&) { return JacobiSeries::monomial(aq, ax, -GaussianRational::i()); }, eta, eta, eta,
         [&](const Rational& o) { return theta_at(ThetaLabel::t11, {M, 2, jk, 0}, o); }},
        q_order);
    JacobiSeries den = product_to_order(
        {[&](const Rational& o) { return theta_at(ThetaLabel::t11, {M, 1, a.j, a.eps}, o); },
         [&](const Rational& o) { return theta_at(ThetaLabel::t11, {M, 1, a.k, Rational(-a.eps)}, o); }},
        q_order);
    return {std::move(num), std::move(den)};
}

} // namespace n4
