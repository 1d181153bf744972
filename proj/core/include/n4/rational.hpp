#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace n4 {

using Rational = mpq_class;

/// Parse "p/q", "p" or "-p/q". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" when the denominator is 1, else "p/q".
std::string to_string(const Rational& r);

inline Rational rat(long num, long den = 1)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

bool is_integer(const Rational& r);

/// floor and ceil into int64; throws std::overflow_error when out of range.
std::int64_t floor_i64(const Rational& r);
std::int64_t ceil_i64(const Rational& r);

/// checked helpers for exponent lattices
std::int64_t lcm_i64(std::int64_t a, std::int64_t b);
std::int64_t mul_i64(std::int64_t a, std::int64_t b);

/// r * den as an integer; throws std::domain_error if r is not on the lattice (1/den)Z.
std::int64_t to_lattice(const Rational& r, std::int64_t den);

/// Trust bound for a truncated series. An empty optional means "exact" (no truncation).
using QOrder = std::optional<Rational>;

QOrder order_min(const QOrder& a, const QOrder& b);
/// a + r, staying exact when a is exact.
QOrder order_plus(const QOrder& a, const Rational& r);
/// true when exponent e is trusted under order o
inline bool below(const Rational& e, const QOrder& o) { return !o || e < *o; }
std::string order_to_string(const QOrder& o);
QOrder parse_order(std::string_view text);

} // namespace n4
