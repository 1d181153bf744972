#include "n4/characters.hpp"

#include <stdexcept>

namespace n4 {

std::string to_string(Sector s) { return s == Sector::NS ? "NS" : "R"; }
std::string to_string(Sign s) { return s == Sign::plus ? "+" : "-"; }

Sector parse_sector(std::string_view s)
{
    if (s == "NS" || s == "ns")
        return Sector::NS;
    if (s == "R" || s == "r" || s == "Ramond")
        return Sector::R;
    throw std::invalid_argument("sector must be NS or R");
}

Sign parse_sign(std::string_view s)
{
    if (s == "+" || s == "plus")
        return Sign::plus;
    if (s == "-" || s == "minus")
        return Sign::minus;
    throw std::invalid_argument("sign must be + or -");
}

Rational eps_of(Sign s) { return s == Sign::plus ? rat(1, 2) : Rational(0); }
Rational eps_prime_of(Sector s) { return s == Sector::NS ? rat(1, 2) : Rational(0); }
Sign sign_of_eps(const Rational& e) { return e == 0 ? Sign::minus : Sign::plus; }
Sector sector_of_eps_prime(const Rational& e) { return e == 0 ? Sector::R : Sector::NS; }

std::vector<Rational> index_set(int M, Sector sector)
{
    if (M < 1)
        throw std::invalid_argument("M must be positive");
    std::vector<Rational> out;
    const Rational lo = rat(-(M - 1), 2), hi = rat(M, 2);
    const Rational step = sector == Sector::NS ? rat(1, 2) : Rational(0);
    for (long n = -M; n <= M; ++n) {
        Rational j = n + step;
        if (lo <= j && j <= hi)
            out.push_back(j);
    }
    return out;
}

std::string describe_index_set(int M, Sector sector)
{
    std::string s = "{";
    for (const auto& j : index_set(M, sector))
        s += (s.size() > 1 ? ", " : "") + to_string(j);
    return s + "}";
}

void CharacterSpec::validate() const
{
    if (M < 1)
        throw std::invalid_argument("M must be positive");
    for (const auto& v : index_set(M, sector))
        if (v == j)
            return;
    throw std::invalid_argument("j = " + to_string(j) + " is not admissible for M = " + std::to_string(M) + ", " +
                                to_string(sector) + "; admissible: " + describe_index_set(M, sector));
}

Rational central_charge(int M)
{
    if (M < 1)
        throw std::invalid_argument("M must be positive");
    return rat(6 * (1 - M), M);
}

HS h_s_values(const CharacterSpec& spec)
{
    spec.validate();
    const Rational base = spec.j * spec.j / spec.M + rat(1, 4 * spec.M);
    if (spec.sector == Sector::NS)
        return {base - rat(1, 2), 2 * spec.j / spec.M - 1};
    return {base - rat(1, 4), 2 * spec.j / spec.M};
}

int sgn_j(const Rational& j) { return sgn(j) > 0 ? 1 : -1; }

ThetaLabel denominator_theta(Sign sign, Sector sector)
{
    return theta_label(sector == Sector::NS ? 0 : 1, sign == Sign::plus ? 0 : 1);
}

namespace {

SeriesBuilder plain(ThetaLabel l)
{
    return [l](const Rational& o) { return theta_at(l, {}, o); };
}

SeriesBuilder constant_factor(GaussianRational c)
{
    return [c](const Rational&) { return JacobiSeries::constant(c); };
}

GaussianRational denominator_constant(Sign sign)
{
    return sign == Sign::plus ? -GaussianRational::i() : GaussianRational::i();
}

} // namespace

SeriesRatio denominator(Sign sign, Sector sector, const Rational& q_order)
{
    const SeriesBuilder eta = [](const Rational& o) { return eta_series(o); };
    JacobiSeries num = product_to_order(
        {constant_factor(denominator_constant(sign)), eta, eta, eta,
         [](const Rational& o) { return theta_at(ThetaLabel::t11, {1, 2, 0, 0}, o); }},
        q_order);
    const ThetaLabel x = denominator_theta(sign, sector);
    return {std::move(num), product_to_order({plain(x), plain(x)}, q_order)};
}

SeriesRatio denominator_three_theta(Sign sign, Sector sector, const Rational& q_order)
{
    const ThetaLabel x = denominator_theta(sign, sector);
    std::vector<SeriesBuilder> f{constant_factor(denominator_constant(sign))};
    for (auto l : all_theta_labels)
        if (l != x)
            f.push_back(plain(l));
    SeriesRatio out{product_to_order(f, q_order), theta_at(x, {}, q_order)};
    if (!cross_equal(out, denominator(sign, sector, q_order), q_order))
        throw std::logic_error("denominator forms disagree");
    return out;
}

SeriesRatio character_ratio(const CharacterSpec& spec, const Rational& q_order)
{
    spec.validate();
    const int M = spec.M;
    const ThetaArg arg{M, 1, spec.j, 0};
    auto scaled = [arg](ThetaLabel l) -> SeriesBuilder {
        return [l, arg](const Rational& o) { return theta_at(l, arg, o); };
    };
    const bool plus = spec.sign == Sign::plus;
    const ThetaLabel odd_up = plus ? ThetaLabel::t11 : ThetaLabel::t10;
    const ThetaLabel odd_down = plus ? ThetaLabel::t10 : ThetaLabel::t11;
    const ThetaLabel x = denominator_theta(spec.sign, spec.sector);

    int sign = -sgn_j(spec.j);
    if (spec.sector == Sector::NS && !plus)
        sign = -sign;
    const Rational aq = spec.j * spec.j / M, ax = 2 * spec.j / M;

    std::vector<SeriesBuilder> num{[=](const Rational&) { return JacobiSeries::monomial(aq, ax, sign); },
                                   scaled(ThetaLabel::t00), scaled(ThetaLabel::t01), scaled(odd_up), plain(x)};
    std::vector<SeriesBuilder> den{scaled(odd_down)};
    for (auto l : all_theta_labels)
        if (l != x)
            den.push_back(plain(l));
    return {product_to_order(num, q_order), product_to_order(den, q_order)};
}

JacobiSeries character_series(const CharacterSpec& spec, const Rational& q_order, const XWindow& window)
{
    const HS hs = h_s_values(spec);
    const Rational expected = -central_charge(spec.M) / 24 + hs.h;
    // truncating at the quotient order alone can leave an empty denominator
    Rational build = q_order + std::max(Rational(0), Rational(-expected)) + 1;
    for (int attempt = 0; attempt < 16; ++attempt) {
        const SeriesRatio r = character_ratio(spec, build);
        const Rational lowest = *r.num.lowest_q() - *r.den.lowest_q();
        if (lowest != expected)
            throw std::logic_error("character lowest exponent " + to_string(lowest) + " differs from -c/24 + h = " +
                                   to_string(expected));
        JacobiSeries s = divide_directed(r.num, r.den, window, q_order);
        if (*s.q_order() >= q_order)
            return s;
        build += q_order - *s.q_order();
    }
    throw std::logic_error("character_series: trusted order not reached");
}

} // namespace n4
