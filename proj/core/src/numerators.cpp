#include "n4/numerators.hpp"

#include <stdexcept>

namespace n4 {

namespace {

const Rational h = rat(1, 2);

} // namespace

const std::array<NumeratorCase, 8>& numerator_table()
{
    // clang-format off
    static const std::array<NumeratorCase, 8> table{{
        // sector     sign         heart       sign  j_pair               k_pair                  j_diag
        {Sector::NS, Sign::plus,  Heart::I,   +1, {1, 0, 0, h},        {-1, -1, 1, -h},        {1, 0, 0, h}},
        {Sector::NS, Sign::plus,  Heart::III, -1, {-1, 0, 1, -h},      {1, 1, 0, h},           {-1, 0, 0, -h}},
        {Sector::NS, Sign::minus, Heart::I,   -1, {1, 0, 0, h},        {-1, -1, 1, -h},        {1, 0, 0, h}},
        {Sector::NS, Sign::minus, Heart::III, +1, {-1, 0, 1, -h},      {1, 1, 0, h},           {-1, 0, 0, -h}},
        {Sector::R,  Sign::plus,  Heart::I,   -1, {-1, 0, 1, 0},       {1, 1, 0, 1},           {-1, 0, 0, 0}},
        {Sector::R,  Sign::plus,  Heart::III, +1, {1, 0, 0, 1},        {-1, -1, 1, 0},         {1, 0, 0, 1}},
        {Sector::R,  Sign::minus, Heart::I,   -1, {-1, 0, 1, 0},       {1, 1, 0, 1},           {-1, 0, 0, 0}},
        {Sector::R,  Sign::minus, Heart::III, +1, {1, 0, 0, 1},        {-1, -1, 1, 0},         {1, 0, 0, 1}},
    }};
    // clang-format on
    return table;
}

const NumeratorCase& numerator_case(Sector sector, Sign sign, Heart heart)
{
    for (const auto& c : numerator_table())
        if (c.sector == sector && c.sign == sign && c.heart == heart)
            return c;
    throw std::invalid_argument("numerators exist only for hearts I and III");
}

NumeratorIndices dd_indices(int M, int k1, int k2, Heart heart, Sign sign, bool twisted)
{
    if (!in_range(M, k1, k2, heart))
        throw std::invalid_argument("(k1, k2) out of range for heart " + to_string(heart));
    const Sector sector = twisted ? Sector::R : Sector::NS;
    const auto& c = numerator_case(sector, sign, heart);
    PsiParams p{M, c.j_pair.at(M, k1, k2), c.k_pair.at(M, k1, k2), eps_of(sign), eps_prime_of(sector)};
    p.validate();
    return {p, c.global_sign};
}

NumeratorIndices nice_indices(int M, int k1, Heart heart, Sign sign, bool twisted)
{
    nice_param_to_j(M, k1, heart, twisted); // range check
    const Sector sector = twisted ? Sector::R : Sector::NS;
    const auto& c = numerator_case(sector, sign, heart);
    const int k2 = M - 1 - 2 * k1;
    const Rational j = c.j_diag.at(M, k1, k2);
    PsiParams p{M, j, j, eps_of(sign), eps_prime_of(sector)};
    p.validate();
    return {p, c.global_sign};
}

static SeriesRatio signed_ratio(SeriesRatio r, int s)
{
    if (s < 0)
        r.num = negate(r.num);
    return r;
}

SeriesRatio nice_numerator(int M, int k1, Heart heart, Sign sign, bool twisted, const Rational& q_order)
{
    const auto idx = nice_indices(M, k1, heart, sign, twisted);
    return signed_ratio(psi_diag_ratio(idx.psi, q_order), idx.global_sign);
}

SeriesRatio dd_numerator(int M, int k1, int k2, Heart heart, Sign sign, bool twisted, const Rational& q_order)
{
    const auto idx = dd_indices(M, k1, k2, heart, sign, twisted);
    return signed_ratio(psi_zz_ratio(idx.psi, q_order), idx.global_sign);
}

} // namespace n4
