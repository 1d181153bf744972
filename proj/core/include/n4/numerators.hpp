#pragma once

#include <array>

#include "n4/characters.hpp"
#include "n4/mock_psi.hpp"
#include "n4/reduction.hpp"

namespace n4 {

/// c_k1*k1 + c_k2*k2 + c_M*M + c
struct IndexForm {
    int c_k1;
    int c_k2;
    int c_M;
    Rational c;

    Rational at(int M, int k1, int k2) const { return Rational(c_k1 * k1 + c_k2 * k2 + c_M * M) + c; }
};

/// One row of the numerator case table. For in-range (k1, k2) the numerator
/// R * ch equals global_sign * Psi^{[M,1,0;eps]}_{j,k;eps'}(tau, z, z, 0) with
/// (j, k) = (j_pair, k_pair). In the nice case 2k1 + k2 = M - 1 the pair reduces by
/// index periodicity to the diagonal (j_diag, j_diag).
struct NumeratorCase {
    Sector sector;
    Sign sign;
    Heart heart;
    int global_sign;
    IndexForm j_pair;
    IndexForm k_pair;
    IndexForm j_diag;
};

const std::array<NumeratorCase, 8>& numerator_table();
const NumeratorCase& numerator_case(Sector sector, Sign sign, Heart heart);

/// the Psi indices, signs and (eps, eps') that a case selects
struct NumeratorIndices {
    PsiParams psi;
    int global_sign;
};

NumeratorIndices dd_indices(int M, int k1, int k2, Heart heart, Sign sign, bool twisted);
NumeratorIndices nice_indices(int M, int k1, Heart heart, Sign sign, bool twisted);

/// signed diagonal Psi ratio for the nice case 2k1 + k2 = M - 1 (heart I or III)
SeriesRatio nice_numerator(int M, int k1, Heart heart, Sign sign, bool twisted, const Rational& q_order);

/// signed Psi ratio for general in-range (k1, k2), z1 = z2 = z, t = 0
SeriesRatio dd_numerator(int M, int k1, int k2, Heart heart, Sign sign, bool twisted, const Rational& q_order);

} // namespace n4
