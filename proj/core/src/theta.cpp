#include "n4/theta.hpp"

#include <cmath>
#include <cstdlib>

namespace n4 {

ThetaLabel theta_label(int a, int b)
{
    if ((a != 0 && a != 1) || (b != 0 && b != 1))
        throw std::invalid_argument("theta characteristics must be bits");
    return all_theta_labels[2 * a + b];
}

ThetaLabel parse_theta_label(std::string_view s)
{
    if (s.size() != 2 || (s[0] != '0' && s[0] != '1') || (s[1] != '0' && s[1] != '1'))
        throw std::invalid_argument("theta label must be one of 00, 01, 10, 11");
    return theta_label(s[0] - '0', s[1] - '0');
}

std::string to_string(ThetaLabel l) { return std::to_string(theta_a(l)) + std::to_string(theta_b(l)); }

namespace {

JacobiSeries binomial(const GaussianRational& c, const Rational& q, const Rational& x)
{
    return JacobiSeries::constant(1) + JacobiSeries::monomial(q, x, c);
}

const SupportBound theta_bound{Rational(2), Rational(0), Rational(0)};

} // namespace

JacobiSeries theta_product(ThetaLabel label, const Rational& q_order)
{
    if (sgn(q_order) <= 0)
        throw std::invalid_argument("q_order must be positive");
    const bool half = theta_a(label) == 0;
    const GaussianRational sign = theta_b(label) ? GaussianRational(-1) : GaussianRational(1);
    JacobiSeries acc = JacobiSeries::constant(1, q_order);
    for (long n = 1; n < q_order + 1; ++n) {
        const Rational e = half ? Rational(rat(2 * n - 1, 2)) : Rational(n);
        if (n < q_order)
            acc = acc * binomial(GaussianRational(-1), Rational(n), Rational(0));
        if (e < q_order) {
            acc = acc * binomial(sign, e, Rational(1));
            acc = acc * binomial(sign, e, Rational(-1));
        }
    }
    if (!half) {
        const Rational h = rat(1, 2);
        JacobiSeries pre = JacobiSeries::monomial(rat(1, 8), h, 1) +
                           JacobiSeries::monomial(rat(1, 8), -h, sign);
        if (theta_b(label))
            pre = scale_monomial(pre, 0, 0, GaussianRational::i());
        acc = (acc * pre).truncated(q_order);
    }
    return acc.with_bound(theta_bound);
}

JacobiSeries theta_sum(ThetaLabel label, const Rational& q_order)
{
    if (sgn(q_order) <= 0)
        throw std::invalid_argument("q_order must be positive");
    const bool odd = theta_a(label) == 1;
    const std::int64_t xd = odd ? 2 : 1;
    JacobiSeries::Terms terms;
    // m = u/2 with u = 2n + a; q-exponent m^2/2 = u^2/8
    const long umax = static_cast<long>(std::sqrt(8.0 * q_order.get_d())) + 2;
    for (long u = -umax; u <= umax; ++u) {
        if (std::abs(u) % 2 != (odd ? 1 : 0) || !(rat(u * u, 8) < q_order))
            continue;
        GaussianRational c(1);
        if (theta_b(label))
            c = GaussianRational::i_pow(u); // e^{pi i m} = i^{2m}
        terms[{u * u, odd ? u : u / 2}] = c;
    }
    return JacobiSeries(8, xd, std::move(terms), q_order, {}, theta_bound);
}

JacobiSeries eta_series(const Rational& q_order)
{
    if (sgn(q_order) <= 0)
        throw std::invalid_argument("q_order must be positive");
    const Rational shift = rat(1, 24);
    JacobiSeries acc = JacobiSeries::constant(1, Rational(q_order - shift));
    for (long n = 1; n < q_order; ++n)
        acc = acc * binomial(GaussianRational(-1), Rational(n), Rational(0));
    acc = scale_monomial(acc, shift, 0, 1);
    return acc.with_bound(SupportBound{Rational(0), Rational(0), shift});
}

JacobiSeries theta_at(ThetaLabel label, const ThetaArg& arg, const Rational& q_order)
{
    if (arg.tau_scale < 1 || arg.z_scale < 1)
        throw std::invalid_argument("theta_at scales must be positive");
    Rational base = std::max(Rational(q_order / arg.tau_scale), Rational(1));
    for (int attempt = 0; attempt < 64; ++attempt) {
        JacobiSeries s = theta_product(label, base);
        if (arg.tau_scale != 1)
            s = subst_scale_tau(s, arg.tau_scale);
        if (sgn(arg.shift_tau) != 0 || sgn(arg.shift_one) != 0)
            s = subst_shift_z(s, arg.shift_tau, arg.shift_one);
        if (arg.z_scale != 1)
            s = subst_scale_z(s, arg.z_scale);
        if (*s.q_order() >= q_order)
            return s.truncated(q_order);
        base += (q_order - *s.q_order()) / arg.tau_scale + rat(1, 2);
    }
    throw std::logic_error("theta_at: trusted order did not grow");
}

JacobiSeries eta_at(std::int64_t k, const Rational& q_order)
{
    if (k < 1)
        throw std::invalid_argument("eta scale must be positive");
    return subst_scale_tau(eta_series(q_order / k), k);
}

SeriesBuilder theta_builder(ThetaLabel label, const ThetaArg& arg)
{
    return [label, arg](const Rational& o) { return theta_at(label, arg, o); };
}

SeriesBuilder eta_builder(std::int64_t k)
{
    return [k](const Rational& o) { return eta_at(k, o); };
}

} // namespace n4
