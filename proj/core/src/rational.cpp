#include "n4/rational.hpp"
#include "n4/gaussian.hpp"

#include <cctype>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace n4 {

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start])))
        ++start;
    s = s.substr(start);
    if (!s.empty() && s[0] == '+')
        s = s.substr(1);
    if (s.empty())
        throw std::invalid_argument("empty rational");
    auto digits = [](std::string_view d, bool allow_sign) {
        if (allow_sign && !d.empty() && d[0] == '-')
            d.remove_prefix(1);
        if (d.empty())
            return false;
        for (char c : d)
            if (c < '0' || c > '9')
                return false;
        return true;
    };
    const auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits(num, true) || !digits(den, false))
        throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    mpz_class n(num, 10), d(den, 10);
    if (d == 0)
        throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r)
{
    if (r.get_den() == 1)
        return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

static std::int64_t checked(const mpz_class& z)
{
    if (!z.fits_slong_p())
        throw std::overflow_error("integer out of range: " + z.get_str());
    return z.get_si();
}

std::int64_t floor_i64(const Rational& r)
{
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return checked(q);
}

std::int64_t ceil_i64(const Rational& r)
{
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return checked(q);
}

std::int64_t mul_i64(std::int64_t a, std::int64_t b)
{
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out))
        throw std::overflow_error("exponent lattice overflow");
    return out;
}

std::int64_t lcm_i64(std::int64_t a, std::int64_t b) { return mul_i64(a / std::gcd(a, b), b); }

std::int64_t to_lattice(const Rational& r, std::int64_t den)
{
    Rational s = r * den;
    if (!is_integer(s))
        throw std::domain_error("exponent " + to_string(r) + " is off the lattice 1/" + std::to_string(den));
    return checked(s.get_num());
}

QOrder order_min(const QOrder& a, const QOrder& b)
{
    if (!a)
        return b;
    if (!b)
        return a;
    return *a < *b ? a : b;
}

QOrder order_plus(const QOrder& a, const Rational& r)
{
    if (!a)
        return a;
    return Rational(*a + r);
}

std::string order_to_string(const QOrder& o) { return o ? to_string(*o) : std::string("inf"); }

QOrder parse_order(std::string_view text)
{
    if (text == "inf")
        return {};
    return parse_rational(text);
}

// GaussianRational

GaussianRational GaussianRational::i_pow(long k)
{
    switch (((k % 4) + 4) % 4) {
    case 0: return {Rational(1), Rational(0)};
    case 1: return {Rational(0), Rational(1)};
    case 2: return {Rational(-1), Rational(0)};
    default: return {Rational(0), Rational(-1)};
    }
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o)
{
    re += o.re;
    im += o.im;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o)
{
    re -= o.re;
    im -= o.im;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o)
{
    *this = *this * o;
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o)
{
    *this = *this / o;
    return *this;
}

GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }

GaussianRational operator*(const GaussianRational& a, const GaussianRational& b)
{
    if (sgn(a.im) == 0 && sgn(b.im) == 0)
        return {Rational(a.re * b.re), Rational(0)};
    return {Rational(a.re * b.re - a.im * b.im), Rational(a.re * b.im + a.im * b.re)};
}

GaussianRational operator/(GaussianRational a, const GaussianRational& b)
{
    Rational n = b.norm();
    if (sgn(n) == 0)
        throw std::domain_error("division by zero Gaussian rational");
    GaussianRational p = a * b.conj();
    return {Rational(p.re / n), Rational(p.im / n)};
}

GaussianRational operator-(const GaussianRational& a) { return {Rational(-a.re), Rational(-a.im)}; }

bool operator==(const GaussianRational& a, const GaussianRational& b) { return a.re == b.re && a.im == b.im; }

std::string to_string(const GaussianRational& g)
{
    if (sgn(g.im) == 0)
        return to_string(g.re);
    if (sgn(g.re) == 0)
        return to_string(g.im) + "i";
    std::string im = to_string(g.im);
    return "(" + to_string(g.re) + (sgn(g.im) > 0 ? "+" : "") + im + "i)";
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << to_string(g); }

} // namespace n4

#include "n4/numeric.hpp"

namespace n4 {

Precision precision_from_bits(int bits)
{
    if (bits <= 53)
        return Precision::Double;
    if (bits <= 64)
        return Precision::Extended;
    if (bits <= 113)
        return Precision::Quad;
    throw std::invalid_argument("precision above 113 bits is not supported");
}

} // namespace n4
