#pragma once

#include <ostream>
#include <string>

#include "n4/rational.hpp"

namespace n4 {

/// Exact element of Q(i).
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)), im(0) {}
    GaussianRational(long r) : re(r), im(0) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }
    /// i^k for any integer k
    static GaussianRational i_pow(long k);

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    GaussianRational conj() const { return {re, -im}; }
    Rational norm() const { return re * re + im * im; }

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);
};

GaussianRational operator+(GaussianRational a, const GaussianRational& b);
GaussianRational operator-(GaussianRational a, const GaussianRational& b);
GaussianRational operator*(const GaussianRational& a, const GaussianRational& b);
GaussianRational operator/(GaussianRational a, const GaussianRational& b);
GaussianRational operator-(const GaussianRational& a);
bool operator==(const GaussianRational& a, const GaussianRational& b);

std::string to_string(const GaussianRational& g);
std::ostream& operator<<(std::ostream& os, const GaussianRational& g);

} // namespace n4
