#pragma once

#include <string>

#include "n4/rational.hpp"

namespace n4 {

enum class Heart { I, II, III, IV };
std::string to_string(Heart h);
Heart parse_heart(std::string_view s);

/// conformal weight h and J0-charge s
struct HS {
    Rational h;
    Rational s;
    bool operator==(const HS&) const = default;
};

/// Ranges per heart:
///   I:   k1, k2 >= 0, 2k1 + k2 <= M - 1
///   II:  k1, k2 >= 1, 2k1 + k2 <= M
///   III: k1 >= 0, k2 >= 1, 2k1 + k2 <= M - 1
///   IV:  k1 >= 1, k2 >= 0, 2k1 + k2 <= M
bool in_range(int M, int k1, int k2, Heart heart);

struct ReductionParams {
    int M = 1;
    int m = 1;
    int m2 = 0;
    int k1 = 0;
    int k2 = 0;
    Heart heart = Heart::I;
    bool twisted = false;

    void validate() const;
};

/// 6(m/M - 1)
Rational reduction_central_charge(int M, int m);

/// (h, s) for the untwisted reduction, or (h^tw, s^tw) when params.twisted
HS reduction_hs(const ReductionParams& params);

/// the pairing (Lambda + rho | alpha_0):
///   I, III:  -m(2k1+k2+1)/M + m2 + 1
///   II, IV:   m(2k1+k2-1)/M - m2 - 1
Rational alpha0_pairing(const ReductionParams& params);

/// true iff heart is I or III, 2k1 + k2 + 1 = M and m2 = m
bool vanishes(const ReductionParams& params);

/// nice case 2k1 + k2 = M - 1 with heart I or III:
///   untwisted j = k1 + 1/2 (I), -(k1 + 1/2) (III); twisted j = -k1 (I), k1 + 1 (III)
Rational nice_param_to_j(int M, int k1, Heart heart, bool twisted);

/// closed forms at m = 1, m2 = 0 in the nice case
HS nice_hs_closed_form(int M, int k1, Heart heart, bool twisted);

/// k1 range for the nice case: I 0..(M-1)/2, III 0..(M-2)/2; empty pair (0,-1) when none
std::pair<int, int> nice_k1_range(int M, Heart heart);

} // namespace n4
