#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/math/constants/constants.hpp>

#include "n4/gaussian.hpp"

namespace n4 {

using Quad = boost::multiprecision::cpp_bin_float_quad;

template <class Real>
struct ComplexOf {
    using type = std::complex<Real>;
};
template <>
struct ComplexOf<Quad> {
    using type = boost::multiprecision::cpp_complex_quad;
};
template <class Real>
using Complex = typename ComplexOf<Real>::type;

/// Numeric working precisions, in mantissa bits.
enum class Precision { Double = 53, Extended = 64, Quad = 113 };

Precision precision_from_bits(int bits);
inline int bits_of(Precision p) { return static_cast<int>(p); }

/// Calls f.template operator()<Real>() with the Real type for p.
template <class F>
decltype(auto) with_precision(Precision p, F&& f)
{
    switch (p) {
    case Precision::Double: return f.template operator()<double>();
    case Precision::Extended: return f.template operator()<long double>();
    case Precision::Quad: return f.template operator()<Quad>();
    }
    throw std::invalid_argument("unknown precision");
}

/// A theta denominator came closer to zero than the configured threshold.
class PoleProximity : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline constexpr double pole_threshold = 1e-6;

template <class Real>
Real pi_v()
{
    return boost::math::constants::pi<Real>();
}

template <class Real>
Real epsilon_v()
{
    return std::numeric_limits<Real>::epsilon();
}

template <class Real>
Real to_real(const Rational& r)
{
    const auto& n = r.get_num();
    const auto& d = r.get_den();
    if (n.fits_slong_p() && d.fits_slong_p())
        return Real(n.get_si()) / Real(d.get_si());
    return Real(r.get_d());
}

template <class Real>
Complex<Real> to_complex(const GaussianRational& g)
{
    return Complex<Real>(to_real<Real>(g.re), to_real<Real>(g.im));
}

template <class Real>
Complex<Real> lift(const std::complex<double>& z)
{
    return Complex<Real>(Real(z.real()), Real(z.imag()));
}

template <class Real>
std::complex<double> lower(const Complex<Real>& z)
{
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

/// (tau, z1, z2, t) with Im tau > 0
struct NumericPoint {
    std::complex<double> tau;
    std::complex<double> z1;
    std::complex<double> z2 = 0;
    std::complex<double> t = 0;
};

inline constexpr double default_im_tau_floor = 0.3;

/// throws std::domain_error when Im tau is below the floor
inline void require_im_tau_floor(const NumericPoint& p, double floor = default_im_tau_floor)
{
    if (!(p.tau.imag() >= floor))
        throw std::domain_error("Im tau = " + std::to_string(p.tau.imag()) + " is below the floor " +
                                std::to_string(floor));
}

template <class Real>
struct PointT {
    Complex<Real> tau, z1, z2, t;

    static PointT from(const NumericPoint& p)
    {
        return {lift<Real>(p.tau), lift<Real>(p.z1), lift<Real>(p.z2), lift<Real>(p.t)};
    }
};

/// throws PoleProximity when |v| is below the threshold
template <class C>
const C& check_pole(const C& v, const char* what)
{
    using std::abs;
    if (abs(v) < pole_threshold)
        throw PoleProximity(std::string("too close to a zero of ") + what);
    return v;
}

/// e^{2 pi i w}
template <class Real>
Complex<Real> e2pi(const Complex<Real>& w)
{
    using std::exp;
    return exp(Complex<Real>(Real(0), 2 * pi_v<Real>()) * w);
}

} // namespace n4
