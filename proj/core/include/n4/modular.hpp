#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "n4/characters.hpp"
#include "n4/mock_psi.hpp"
#include "n4/numerators.hpp"
#include "n4/numeric.hpp"

namespace n4 {

enum class Transform { S, T };
std::string to_string(Transform t);
Transform parse_transform(std::string_view s);

/// |LHS - RHS| of the S-law
///   Psi^{eps}_{j,k;eps'}(-1/tau, z1/tau, z2/tau, t)
///     = (tau/M) e^{2 pi i z1 z2/(M tau)} sum_{a,b in eps + Z/M} e^{-2 pi i (a k + b j)/M} Psi^{eps'}_{a,b;eps}(tau, z1, z2, t)
double psi_s_residual(const PsiParams& params, const NumericPoint& p, Precision prec = Precision::Double);

/// |LHS - RHS| of the T-law Psi^{eps}_{j,k;eps'}(tau+1, ...) = e^{2 pi i jk/M} Psi^{eps+eps'}_{j,k;eps'}(tau, ...)
double psi_t_residual(const PsiParams& params, const NumericPoint& p, Precision prec = Precision::Double);

/// R^{(eps)}_{eps'}(tau, z) = (-1)^{2 eps} i eta^3 theta11(tau, 2z) / theta_{1-2eps',1-2eps}(tau, z)^2
template <class Real>
Complex<Real> denominator_numeric(Sign sign, Sector sector, const Complex<Real>& tau, const Complex<Real>& z)
{
    const Real err = default_abs_err<Real>();
    const Complex<Real> d = check_pole(theta_numeric<Real>(denominator_theta(sign, sector), tau, z, err),
                                       "denominator theta");
    const Complex<Real> e = eta_numeric<Real>(tau);
    const Complex<Real> c(Real(0), sign == Sign::plus ? Real(-1) : Real(1));
    return c * e * e * e * theta_numeric<Real>(ThetaLabel::t11, tau, z * Real(2), err) / (d * d);
}

/// |LHS - RHS| of
///   S: R^{(eps)}_{eps'}(-1/tau, z/tau) = (-1)^{4 eps eps'} tau e^{2 pi i z^2/tau} R^{(eps')}_{eps}(tau, z)
///   T: R^{(eps)}_{eps'}(tau+1, z) = e^{-pi i eps'} R^{(eps+eps')}_{eps'}(tau, z)
double denominator_transform_residual(Sign sign, Sector sector, Transform which, const NumericPoint& p,
                                      Precision prec = Precision::Double);

/// global_sign * Psi_{j,k}(tau, z, z, 0) / R(tau, z) for in-range (k1, k2)
template <class Real>
Complex<Real> character_numeric(int M, int k1, int k2, Heart heart, Sign sign, bool twisted, const Complex<Real>& tau,
                                const Complex<Real>& z)
{
    const auto idx = dd_indices(M, k1, k2, heart, sign, twisted);
    const Complex<Real> zero(Real(0), Real(0));
    const Complex<Real> psi = psi_numeric<Real>(idx.psi, PointT<Real>{tau, z, z, zero});
    const Sector sector = twisted ? Sector::R : Sector::NS;
    return Real(idx.global_sign) * psi / check_pole(denominator_numeric<Real>(sign, sector, tau, z), "denominator");
}

inline std::complex<double> character_numeric(int M, int k1, int k2, Heart heart, Sign sign, bool twisted,
                                              std::complex<double> tau, std::complex<double> z)
{
    return character_numeric<double>(M, k1, k2, heart, sign, twisted, tau, z);
}

/// One function in a span-closure family.
struct FamilyMember {
    std::string id;
    int M;
    int k1;
    int k2;
    Heart heart;
    Sign sign;
    bool twisted;
    Rational j;
    Rational k;
    Rational eps;
    Rational eps_prime;
    int global_sign;
};

/// Statement 1: characters and supercharacters (NS) plus twisted characters (R, +);
/// statement 2: twisted supercharacters (R, -). Hearts I and III over their full ranges,
/// deduplicated by (eps, eps', unordered index pair).
std::vector<FamilyMember> character_family(int M, int statement);

/// e^{-pi i c z^2/(3 tau)} f(-1/tau, z/tau) for S, f(tau + 1, z) for T, with c = 6(1-M)/M
template <class Real>
Complex<Real> transformed_member(const FamilyMember& f, Transform which, const Complex<Real>& tau,
                                 const Complex<Real>& z)
{
    if (which == Transform::T)
        return character_numeric<Real>(f.M, f.k1, f.k2, f.heart, f.sign, f.twisted, tau + Real(1), z);
    const Real c = to_real<Real>(central_charge(f.M));
    const Complex<Real> st = Real(-1) / tau;
    const Complex<Real> sz = z / tau;
    using std::exp;
    const Complex<Real> factor = exp(Complex<Real>(Real(0), -pi_v<Real>() * c / 3) * z * z / tau);
    return factor * character_numeric<Real>(f.M, f.k1, f.k2, f.heart, f.sign, f.twisted, st, sz);
}

struct SpanCertificate {
    Transform transform = Transform::S;
    int M = 1;
    int statement = 1;
    std::vector<std::string> family;  // all deduplicated members
    std::vector<std::string> basis;   // numerically independent subset used for the fit
    std::vector<std::vector<std::complex<double>>> coefficients; // one row per member, one column per basis element
    double residual = 0;
    double condition = 0;
    double tol = 0;
    std::vector<NumericPoint> points;
    int precision_bits = 53;
    /// T only, when the whole family is independent: distance of the fit from the predicted diagonal phases
    std::optional<double> diagonal_deviation;

    bool passed() const { return residual < tol; }
};

/// sample matrix too ill-conditioned for a meaningful fit
class IllConditioned : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double max_condition = 1e10;

/// Least-squares fit of each transformed member on the family basis.
SpanCertificate span_closure(int M, int statement, Transform which, const std::vector<NumericPoint>& points, double tol,
                             Precision prec = Precision::Double);

/// Generic sample points: Im tau in [0.8, 1.3], Re tau in [-1/2, 1/2], small z off the real axis.
/// Deterministic for a given seed; z1 == z2 and t = 0.
std::vector<NumericPoint> sample_points(std::size_t n, std::uint32_t seed = 20240917u);

/// A fixed list of generic points for the Psi and denominator laws (z1 != z2, t = 0).
std::vector<NumericPoint> generic_points();

/// Predicted T coefficients: member f maps to phase * member f' with f' the member of
/// (eps + eps' mod 1, eps', same pair) and phase e^{2 pi i (jk/M + eps'/2)} * sign(f)/sign(f').
/// Returns the max deviation of the fitted coefficients from this prediction; throws when the
/// basis is not the whole family.
double t_diagonal_deviation(const SpanCertificate& cert, int M, int statement);

std::string to_json(const SpanCertificate& c, int indent = 2);

} // namespace n4
