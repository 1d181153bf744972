#pragma once

#include <string>
#include <vector>

#include "n4/reduction.hpp"
#include "n4/series.hpp"
#include "n4/theta.hpp"

namespace n4 {

/// NS (eps' = 1/2) or Ramond-twisted (eps' = 0)
enum class Sector { NS, R };
/// character (eps = 1/2) or supercharacter (eps = 0)
enum class Sign { plus, minus };

std::string to_string(Sector s);
std::string to_string(Sign s);
Sector parse_sector(std::string_view s);
Sign parse_sign(std::string_view s);
Rational eps_of(Sign s);
Rational eps_prime_of(Sector s);
Sign sign_of_eps(const Rational& eps);
Sector sector_of_eps_prime(const Rational& eps_prime);

struct CharacterSpec {
    int M = 1;
    Rational j;
    Sector sector = Sector::NS;
    Sign sign = Sign::plus;

    /// throws std::invalid_argument naming the admissible index set
    void validate() const;
};

/// NS: half-odd j with -(M-1)/2 <= j <= M/2; R: integer j in the same range
std::vector<Rational> index_set(int M, Sector sector);
std::string describe_index_set(int M, Sector sector);

/// 6(1-M)/M
Rational central_charge(int M);

/// NS: (j^2/M + 1/(4M) - 1/2, 2j/M - 1); R: (j^2/M + 1/(4M) - 1/4, 2j/M)
HS h_s_values(const CharacterSpec& spec);

/// 1 if j > 0, -1 if j <= 0
int sgn_j(const Rational& j);

/// theta_{1-2eps', 1-2eps}: the plain theta whose square sits in the denominator
ThetaLabel denominator_theta(Sign sign, Sector sector);

/// ((-1)^{2 eps} i eta^3 theta11(tau, 2z), theta_{1-2eps',1-2eps}(tau, z)^2)
SeriesRatio denominator(Sign sign, Sector sector, const Rational& q_order);

/// ((-1)^{2 eps} i * product of the other three thetas, theta_{1-2eps',1-2eps});
/// checked against denominator() before returning
SeriesRatio denominator_three_theta(Sign sign, Sector sector, const Rational& q_order);

/// prefactor * three rescaled thetas * one plain theta over one rescaled theta * three plain thetas.
/// Rescaled means argument (M tau, z + j tau). Global sign -sgn(j), or +sgn(j) for NS supercharacters.
SeriesRatio character_ratio(const CharacterSpec& spec, const Rational& q_order);

/// directed expansion of character_ratio; checks that the lowest q-exponent is -c/24 + h
JacobiSeries character_series(const CharacterSpec& spec, const Rational& q_order, const XWindow& window);

} // namespace n4
