#pragma once

#include "n4/numeric.hpp"
#include "n4/series.hpp"
#include "n4/theta.hpp"

namespace n4 {

/// Indices of the m = 1 family Psi^{[M,1,s;eps]}_{j,k;eps'}.
struct PsiParams {
    int M = 1;
    Rational j;
    Rational k;
    Rational eps;       // 0 or 1/2
    Rational eps_prime; // 0 or 1/2; j, k in eps' + Z

    /// throws std::invalid_argument when an invariant fails
    void validate() const;
};

/// true for 0 and 1/2
bool is_half_bit(const Rational& e);
/// e reduced mod 1 into {0, 1/2}
Rational half_mod1(const Rational& e);

/// -i e^{-2 pi i t} eta^3 theta11(z1+z2) / (theta11(z1) theta11(z2)); the same for every integer s.
/// At m = 1 the modified function coincides with this one, so no modification is applied.
template <class Real>
Complex<Real> phi1_numeric(long /*s_int*/, const PointT<Real>& p)
{
    const Real err = default_abs_err<Real>();
    const Complex<Real> minus_i(Real(0), Real(-1));
    const Complex<Real> d1 = check_pole(theta_numeric<Real>(ThetaLabel::t11, p.tau, p.z1, err), "theta11(z1)");
    const Complex<Real> d2 = check_pole(theta_numeric<Real>(ThetaLabel::t11, p.tau, p.z2, err), "theta11(z2)");
    const Complex<Real> e = eta_numeric<Real>(p.tau);
    return minus_i * e2pi<Real>(-p.t) * e * e * e *
           theta_numeric<Real>(ThetaLabel::t11, p.tau, p.z1 + p.z2, err) / (d1 * d2);
}

/// closed form of Psi^{[M,1,s;eps]}_{j,k;eps'}(tau, z1, z2, t), s an integer
template <class Real>
Complex<Real> psi_numeric(const PsiParams& a, const PointT<Real>& p)
{
    a.validate();
    const Real err = default_abs_err<Real>();
    const Real M(a.M);
    const Real j = to_real<Real>(a.j), k = to_real<Real>(a.k), eps = to_real<Real>(a.eps);
    const Complex<Real> Mtau = p.tau * M;
    const Complex<Real> d1 =
        check_pole(theta_numeric<Real>(ThetaLabel::t11, Mtau, p.z1 + p.tau * j + eps, err), "theta11(M tau, z1+j tau+eps)");
    const Complex<Real> d2 =
        check_pole(theta_numeric<Real>(ThetaLabel::t11, Mtau, p.z2 + p.tau * k - eps, err), "theta11(M tau, z2+k tau-eps)");
    const Complex<Real> e = eta_numeric<Real>(Mtau);
    const Complex<Real> num = theta_numeric<Real>(ThetaLabel::t11, Mtau, p.z1 + p.z2 + p.tau * (j + k), err);
    const Complex<Real> phase = e2pi<Real>((-p.t + p.tau * (j * k) + p.z1 * k + p.z2 * j) / M);
    return Complex<Real>(Real(0), Real(-1)) * phase * e * e * e * num / (d1 * d2);
}

inline std::complex<double> psi_numeric(const PsiParams& a, const NumericPoint& p)
{
    return psi_numeric<double>(a, PointT<double>::from(p));
}

struct SumWithTail {
    std::complex<double> value;
    double tail;
};

/// e^{-2 pi i m t} sum_{|j| <= cutoff} e^{2 pi i m j (z1+z2) + 2 pi i s z1} q^{m j^2 + s j} / (1 - e^{2 pi i z1} q^j)^2.
/// tail is the size of the two outermost terms kept; throws when it exceeds tol.
SumWithTail phi_a11_numeric(int m, const Rational& s, const NumericPoint& p, int j_cutoff, double tol = 1e-12);

/// Psi on the diagonal z1 = z2 = z, j = k, t = 0 as an exact theta quotient:
///   eps = 1/2:  i q^{j^2/M} x^{2j/M} theta00 theta01 theta11 / theta10, all at (M tau, z + j tau)
///   eps = 0:   -i q^{j^2/M} x^{2j/M} theta00 theta01 theta10 / theta11
SeriesRatio psi_diag_ratio(const PsiParams& a, const Rational& q_order);

/// Psi on z1 = z2 = z, t = 0 for any j, k:
///   -i q^{jk/M} x^{(j+k)/M} eta(M tau)^3 theta11(M tau, 2z + (j+k) tau)
///   / (theta11(M tau, z + j tau + eps) theta11(M tau, z + k tau - eps))
SeriesRatio psi_zz_ratio(const PsiParams& a, const Rational& q_order);

} // namespace n4
