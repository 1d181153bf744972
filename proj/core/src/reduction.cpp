#include "n4/reduction.hpp"

#include <stdexcept>

namespace n4 {

std::string to_string(Heart h)
{
    switch (h) {
    case Heart::I: return "I";
    case Heart::II: return "II";
    case Heart::III: return "III";
    case Heart::IV: return "IV";
    }
    return "?";
}

Heart parse_heart(std::string_view s)
{
    if (s == "I")
        return Heart::I;
    if (s == "II")
        return Heart::II;
    if (s == "III")
        return Heart::III;
    if (s == "IV")
        return Heart::IV;
    throw std::invalid_argument("heart must be I, II, III or IV");
}

bool in_range(int M, int k1, int k2, Heart heart)
{
    const int t = 2 * k1 + k2;
    switch (heart) {
    case Heart::I: return k1 >= 0 && k2 >= 0 && t <= M - 1;
    case Heart::II: return k1 >= 1 && k2 >= 1 && t <= M;
    case Heart::III: return k1 >= 0 && k2 >= 1 && t <= M - 1;
    case Heart::IV: return k1 >= 1 && k2 >= 0 && t <= M;
    }
    return false;
}

void ReductionParams::validate() const
{
    if (M < 1 || m < 1)
        throw std::invalid_argument("M and m must be positive");
    if (m2 < 0 || m2 > m)
        throw std::invalid_argument("m2 must satisfy 0 <= m2 <= m");
    if (!in_range(M, k1, k2, heart))
        throw std::invalid_argument("(k1, k2) = (" + std::to_string(k1) + ", " + std::to_string(k2) +
                                    ") out of range for heart " + to_string(heart) + " at M = " + std::to_string(M));
}

Rational reduction_central_charge(int M, int m) { return 6 * (rat(m, M) - 1); }

HS reduction_hs(const ReductionParams& p)
{
    p.validate();
    const Rational r = rat(p.m, p.M);
    const Rational k1(p.k1), k2(p.k2), m2(p.m2);
    const Rational half = rat(1, 2);
    const bool i_or_iv = p.heart == Heart::I || p.heart == Heart::IV;
    HS out;
    if (!p.twisted) {
        out.s = i_or_iv ? Rational(-r * k2 + m2) : Rational(r * k2 - m2 - 2);
        const Rational a = (p.heart == Heart::I || p.heart == Heart::III) ? Rational(k1 + half) : Rational(k1 - half);
        const Rational b = a + k2;
        out.h = -r * a * b + (m2 + 1) * a - (-r + 2) / 4;
    } else {
        out.s = i_or_iv ? Rational(r * (k2 + 1) - m2 - 1) : Rational(-r * (k2 - 1) + m2 + 1);
        Rational a, b;
        switch (p.heart) {
        case Heart::I: a = k1; b = k1 + k2 + 1; break;
        case Heart::II: a = k1; b = k1 + k2 - 1; break;
        case Heart::III: a = k1 + 1; b = k1 + k2; break;
        case Heart::IV: a = k1 - 1; b = k1 + k2; break;
        }
        out.h = -r * a * b + (m2 + 1) * a - (-r + 1) / 4;
    }
    return out;
}

Rational alpha0_pairing(const ReductionParams& p)
{
    p.validate();
    const Rational r = rat(p.m, p.M);
    if (p.heart == Heart::I || p.heart == Heart::III)
        return -r * (2 * p.k1 + p.k2 + 1) + p.m2 + 1;
    return r * (2 * p.k1 + p.k2 - 1) - p.m2 - 1;
}

bool vanishes(const ReductionParams& p)
{
    p.validate();
    return (p.heart == Heart::I || p.heart == Heart::III) && 2 * p.k1 + p.k2 + 1 == p.M && p.m2 == p.m;
}

std::pair<int, int> nice_k1_range(int M, Heart heart)
{
    if (heart == Heart::I)
        return {0, (M - 1) / 2};
    if (heart == Heart::III)
        return {0, M >= 2 ? (M - 2) / 2 : -1};
    throw std::invalid_argument("nice case needs heart I or III");
}

static void check_nice(int M, int k1, Heart heart)
{
    if (M < 1)
        throw std::invalid_argument("M must be positive");
    auto [lo, hi] = nice_k1_range(M, heart);
    if (k1 < lo || k1 > hi)
        throw std::invalid_argument("k1 = " + std::to_string(k1) + " outside the nice range for heart " +
                                    to_string(heart) + " at M = " + std::to_string(M));
}

Rational nice_param_to_j(int M, int k1, Heart heart, bool twisted)
{
    check_nice(M, k1, heart);
    const bool one = heart == Heart::I;
    if (!twisted)
        return one ? Rational(k1 + rat(1, 2)) : Rational(-(k1 + rat(1, 2)));
    return one ? Rational(-k1) : Rational(k1 + 1);
}

HS nice_hs_closed_form(int M, int k1, Heart heart, bool twisted)
{
    check_nice(M, k1, heart);
    const bool one = heart == Heart::I;
    const Rational a = k1 + rat(1, 2);
    if (!twisted)
        return {a * a / M + rat(1, 4 * M) - rat(1, 2),
                one ? Rational(rat(2 * k1 + 1, M) - 1) : Rational(-rat(2 * k1 + 1, M) - 1)};
    const Rational b = one ? Rational(k1) : Rational(k1 + 1);
    return {b * b / M + rat(1, 4 * M) - rat(1, 4), one ? Rational(rat(-2 * k1, M)) : rat(2 * (k1 + 1), M)};
}

} // namespace n4
