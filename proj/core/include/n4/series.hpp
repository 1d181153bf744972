#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "n4/gaussian.hpp"
#include "n4/numeric.hpp"
#include "n4/rational.hpp"

namespace n4 {

/// Lower bound on the support of a whole series, omitted tail included:
/// every (q, x) = (Q, e) with nonzero coefficient has Q >= (e - center)^2 / spread + offset.
/// spread == 0 means the support sits on the single column e == center with Q >= offset.
struct SupportBound {
    Rational spread;
    Rational center;
    Rational offset;

    /// value of the bound at e; empty when e is off the column of a zero-spread bound
    std::optional<Rational> at(const Rational& e) const;
    bool operator==(const SupportBound&) const = default;
};

struct XWindow {
    Rational lo;
    Rational hi;
    bool contains(const Rational& e) const { return lo <= e && e <= hi; }
    bool operator==(const XWindow&) const = default;
};

/// Truncated two-variable series in q and x with rational exponents on the
/// lattice (1/q_den)Z x (1/x_den)Z and Gaussian-rational coefficients.
/// Coefficients with q-exponent below q_order are exact; the tail is unknown.
class JacobiSeries {
public:
    using Key = std::pair<std::int64_t, std::int64_t>; // (q units, x units)
    using Terms = std::map<Key, GaussianRational>;

    /// the exact zero series
    JacobiSeries() = default;

    /// Build from lattice terms. Zero coefficients, terms at or above the order,
    /// and terms outside the window are dropped.
    JacobiSeries(std::int64_t q_den, std::int64_t x_den, Terms terms, QOrder order,
                 std::optional<XWindow> window = {}, std::optional<SupportBound> bound = {});

    static JacobiSeries monomial(const Rational& q, const Rational& x, const GaussianRational& c,
                                 QOrder order = {});
    static JacobiSeries constant(const GaussianRational& c, QOrder order = {});

    std::int64_t q_den() const { return q_den_; }
    std::int64_t x_den() const { return x_den_; }
    const Terms& terms() const { return terms_; }
    const QOrder& q_order() const { return order_; }
    bool exact() const { return !order_.has_value(); }
    const std::optional<XWindow>& x_window() const { return window_; }
    const std::optional<SupportBound>& bound() const { return bound_; }

    Rational q_of(const Key& k) const { return rat(k.first, q_den_); }
    Rational x_of(const Key& k) const { return rat(k.second, x_den_); }

    bool is_zero() const { return terms_.empty(); }
    /// lowest stored q-exponent
    std::optional<Rational> lowest_q() const;
    /// min(lowest stored exponent, q_order): a lower bound for the full series
    std::optional<Rational> valuation() const;
    /// (min, max) stored x-exponent
    std::optional<std::pair<Rational, Rational>> x_range() const;

    GaussianRational coeff(const Rational& q, const Rational& x) const;
    /// the x-polynomial at one q-level, as (x-exponent, coefficient) sorted by x
    std::vector<std::pair<Rational, GaussianRational>> level(const Rational& q) const;
    /// distinct stored q-exponents in increasing order
    std::vector<Rational> levels() const;

    /// same series re-expressed on a finer lattice
    JacobiSeries on_lattice(std::int64_t q_den, std::int64_t x_den) const;
    /// drop terms at or above o and lower the trust bound to o (o must not exceed it)
    JacobiSeries truncated(const Rational& o) const;
    JacobiSeries with_bound(std::optional<SupportBound> b) const;
    JacobiSeries with_window(std::optional<XWindow> w) const;

private:
    std::int64_t q_den_ = 1;
    std::int64_t x_den_ = 1;
    Terms terms_;
    QOrder order_;
    std::optional<XWindow> window_;
    std::optional<SupportBound> bound_;
};

JacobiSeries add(const JacobiSeries& a, const JacobiSeries& b);
JacobiSeries negate(const JacobiSeries& a);
JacobiSeries sub(const JacobiSeries& a, const JacobiSeries& b);
JacobiSeries mul(const JacobiSeries& a, const JacobiSeries& b);
JacobiSeries scale_monomial(const JacobiSeries& s, const Rational& a_q, const Rational& a_x,
                            const GaussianRational& c);
/// tau -> k tau
JacobiSeries subst_scale_tau(const JacobiSeries& s, std::int64_t k);
/// z -> k z
JacobiSeries subst_scale_z(const JacobiSeries& s, std::int64_t k);
/// z -> z + r_tau*tau + r_one
JacobiSeries subst_shift_z(const JacobiSeries& s, const Rational& r_tau, const Rational& r_one);
/// z -> -z
JacobiSeries subst_negate_z(const JacobiSeries& s);

/// num/den expanded level by level in q, each level in descending powers of x,
/// cropped to the window. order caps the result when it would otherwise be unbounded.
JacobiSeries divide_directed(const JacobiSeries& num, const JacobiSeries& den, const XWindow& window,
                             QOrder order = {});
JacobiSeries invert_directed(const JacobiSeries& s, const XWindow& window, QOrder order = {});

/// exact coefficient comparison below o (inside the window intersection, if any)
bool equal_to_order(const JacobiSeries& a, const JacobiSeries& b, const Rational& o);

inline JacobiSeries operator+(const JacobiSeries& a, const JacobiSeries& b) { return add(a, b); }
inline JacobiSeries operator-(const JacobiSeries& a, const JacobiSeries& b) { return sub(a, b); }
inline JacobiSeries operator-(const JacobiSeries& a) { return negate(a); }
inline JacobiSeries operator*(const JacobiSeries& a, const JacobiSeries& b) { return mul(a, b); }

/// Builds one factor trusted below a requested order.
using SeriesBuilder = std::function<JacobiSeries(const Rational& q_order)>;

/// Product of the factors trusted below q_order. Factors with negative
/// valuation are requested with enough headroom; the result is truncated at q_order.
JacobiSeries product_to_order(const std::vector<SeriesBuilder>& factors, const Rational& q_order);

/// Numerator and denominator kept apart so identities can be checked without division.
struct SeriesRatio {
    JacobiSeries num;
    JacobiSeries den;

    SeriesRatio() : num(), den(JacobiSeries::constant(1)) {}
    SeriesRatio(JacobiSeries n, JacobiSeries d);

    /// trust bound of num*other.den and other.num*den
    QOrder cross_order(const SeriesRatio& other) const;
};

SeriesRatio operator*(const SeriesRatio& a, const SeriesRatio& b);
/// a.num*b.den == b.num*a.den below o
bool cross_equal(const SeriesRatio& a, const SeriesRatio& b, const Rational& o);
/// cross_equal at the largest order both products are trusted to
bool cross_equal(const SeriesRatio& a, const SeriesRatio& b);

/// Builds a ratio from a requested construction order.
using RatioBuilder = std::function<SeriesRatio(const Rational& q_order)>;

/// product of builders over product of builders
RatioBuilder ratio_of(std::vector<SeriesBuilder> num, std::vector<SeriesBuilder> den);
/// exact monomial c q^a_q x^a_x, independent of the requested order
SeriesBuilder monomial_builder(const Rational& a_q, const Rational& a_x, const GaussianRational& c = 1);

/// cross_equal at o, rebuilding both sides with more headroom until the products are trusted to o
bool cross_equal_to(const RatioBuilder& a, const RatioBuilder& b, const Rational& o);

/// sum of coeff * e^{2 pi i tau q} e^{2 pi i z x}
template <class Real>
Complex<Real> eval_numeric(const JacobiSeries& s, const Complex<Real>& tau, const Complex<Real>& z)
{
    Complex<Real> acc(Real(0), Real(0));
    for (const auto& [k, c] : s.terms()) {
        const Complex<Real> w = tau * to_real<Real>(s.q_of(k)) + z * to_real<Real>(s.x_of(k));
        acc += to_complex<Real>(c) * e2pi<Real>(w);
    }
    return acc;
}

inline std::complex<double> eval_numeric(const JacobiSeries& s, std::complex<double> tau, std::complex<double> z)
{
    return eval_numeric<double>(s, tau, z);
}

template <class Real>
Complex<Real> eval_numeric(const SeriesRatio& r, const Complex<Real>& tau, const Complex<Real>& z)
{
    return eval_numeric<Real>(r.num, tau, z) / eval_numeric<Real>(r.den, tau, z);
}

} // namespace n4
