#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "n4/numeric.hpp"
#include "n4/series.hpp"

namespace n4 {

/// theta_ab, ab in {00, 01, 10, 11}
enum class ThetaLabel { t00, t01, t10, t11 };

inline int theta_a(ThetaLabel l) { return l == ThetaLabel::t10 || l == ThetaLabel::t11 ? 1 : 0; }
inline int theta_b(ThetaLabel l) { return l == ThetaLabel::t01 || l == ThetaLabel::t11 ? 1 : 0; }
ThetaLabel theta_label(int a, int b);
ThetaLabel parse_theta_label(std::string_view s);
std::string to_string(ThetaLabel l);
inline constexpr ThetaLabel all_theta_labels[] = {ThetaLabel::t00, ThetaLabel::t01, ThetaLabel::t10, ThetaLabel::t11};

/// Triple-product expansion, trusted below q_order.
///   theta00 = prod (1-q^n)(1+x q^{n-1/2})(1+x^{-1} q^{n-1/2})
///   theta01 = prod (1-q^n)(1-x q^{n-1/2})(1-x^{-1} q^{n-1/2})
///   theta10 = q^{1/8}(x^{1/2}+x^{-1/2}) prod (1-q^n)(1+x q^n)(1+x^{-1} q^n)
///   theta11 = i q^{1/8}(x^{1/2}-x^{-1/2}) prod (1-q^n)(1-x q^n)(1-x^{-1} q^n)
JacobiSeries theta_product(ThetaLabel label, const Rational& q_order);

/// Lattice sum: sum over m in Z + a/2 of q^{m^2/2} x^m e^{pi i m b}.
JacobiSeries theta_sum(ThetaLabel label, const Rational& q_order);

/// q^{1/24} prod (1-q^n)
JacobiSeries eta_series(const Rational& q_order);

/// theta_ab(tau_scale*tau, z_scale*z + shift_tau*tau + shift_one)
struct ThetaArg {
    std::int64_t tau_scale = 1;
    std::int64_t z_scale = 1;
    Rational shift_tau = 0;
    Rational shift_one = 0;
};

/// theta at an affine argument, built from theta_product through the substitution ops
JacobiSeries theta_at(ThetaLabel label, const ThetaArg& arg, const Rational& q_order);
/// eta(k tau)
JacobiSeries eta_at(std::int64_t k, const Rational& q_order);

SeriesBuilder theta_builder(ThetaLabel label, const ThetaArg& arg = {});
/// eta(k tau)
SeriesBuilder eta_builder(std::int64_t k = 1);

// numeric backend

template <class Real>
Complex<Real> theta_numeric(ThetaLabel label, const Complex<Real>& tau, const Complex<Real>& z, const Real& abs_err)
{
    using std::abs;
    using std::exp;
    if (!(tau.imag() > 0))
        throw std::domain_error("theta_numeric needs Im tau > 0");
    if (!(abs_err > 0))
        throw std::invalid_argument("abs_err must be positive");
    const Real y = tau.imag(), v = z.imag();
    const Real half_a = theta_a(label) ? Real(0.5) : Real(0);
    const Real half_b = theta_b(label) ? Real(0.5) : Real(0);
    const Complex<Real> ipi(Real(0), pi_v<Real>());
    const Complex<Real> zb = z + half_b;
    auto term = [&](const Real& m) { return exp(ipi * (tau * m * m + Real(2) * m * zb)); };
    auto mag = [&](const Real& m) { return exp(-pi_v<Real>() * (y * m * m + 2 * m * v)); };

    // start at the lattice point nearest the peak of |term|
    using std::floor;
    const Real peak = -v / y;
    const long n0 = static_cast<long>(floor(static_cast<double>(peak - half_a) + 0.5));
    Complex<Real> sum = term(Real(n0) + half_a);
    constexpr long max_terms = 1000000;
    for (int dir : {1, -1}) {
        for (long k = 1;; ++k) {
            if (k > max_terms)
                throw std::domain_error("theta_numeric: tail bound not reached");
            const Real m = Real(n0 + dir * k) + half_a;
            sum += term(m);
            // ratio of the next magnitude to this one, nonincreasing from here on
            const Real ratio = exp(-pi_v<Real>() * (y * (2 * dir * m + 1) + 2 * dir * v));
            if (ratio < Real(1) && mag(m) * ratio / (Real(1) - ratio) < abs_err / 2)
                break;
        }
    }
    return sum;
}

/// eta via the pentagonal-number series, accurate to the working precision
template <class Real>
Complex<Real> eta_numeric(const Complex<Real>& tau)
{
    using std::abs;
    if (!(tau.imag() > 0))
        throw std::domain_error("eta_numeric needs Im tau > 0");
    const Complex<Real> q = e2pi<Real>(tau);
    const Real aq = abs(q);
    Complex<Real> sum(Real(1), Real(0));
    for (long k = 1;; ++k) {
        const long e1 = k * (3 * k - 1) / 2, e2 = k * (3 * k + 1) / 2;
        using std::pow;
        if (pow(aq, Real(e1)) < epsilon_v<Real>() * Real(1e-3))
            break;
        const Real sgn = k % 2 ? Real(-1) : Real(1);
        sum += sgn * (e2pi<Real>(tau * Real(e1)) + e2pi<Real>(tau * Real(e2)));
        if (k > 100000)
            throw std::domain_error("eta_numeric: no convergence");
    }
    return e2pi<Real>(tau / Real(24)) * sum;
}

/// default absolute error for theta sums at a given precision
template <class Real>
Real default_abs_err()
{
    return epsilon_v<Real>() * Real(1e-2);
}

inline std::complex<double> theta_numeric(ThetaLabel label, std::complex<double> tau, std::complex<double> z,
                                          double abs_err = 1e-18)
{
    return theta_numeric<double>(label, tau, z, abs_err);
}

} // namespace n4
