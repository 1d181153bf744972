#include "n4/modular.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <json.hpp>

namespace n4 {

std::string to_string(Transform t) { return t == Transform::S ? "S" : "T"; }

Transform parse_transform(std::string_view s)
{
    if (s == "S")
        return Transform::S;
    if (s == "T")
        return Transform::T;
    throw std::invalid_argument("transform must be S or T");
}

namespace {

template <class Real>
double psi_s_residual_t(const PsiParams& a, const NumericPoint& p0)
{
    a.validate();
    using C = Complex<Real>;
    const auto p = PointT<Real>::from(p0);
    const PointT<Real> s{Real(-1) / p.tau, p.z1 / p.tau, p.z2 / p.tau, p.t};
    const C lhs = psi_numeric<Real>(a, s);
    const Real M(a.M);
    C sum(Real(0), Real(0));
    for (int na = 0; na < a.M; ++na)
        for (int nb = 0; nb < a.M; ++nb) {
            const Rational ar = a.eps + na, br = a.eps + nb;
            const PsiParams b{a.M, ar, br, a.eps_prime, a.eps};
            const Real phase = -to_real<Real>((ar * a.k + br * a.j) / a.M);
            sum += e2pi<Real>(C(phase, Real(0))) * psi_numeric<Real>(b, p);
        }
    const C rhs = p.tau / M * e2pi<Real>(p.z1 * p.z2 / (M * p.tau)) * sum;
    using std::abs;
    return static_cast<double>(abs(lhs - rhs));
}

template <class Real>
double psi_t_residual_t(const PsiParams& a, const NumericPoint& p0)
{
    a.validate();
    using C = Complex<Real>;
    const auto p = PointT<Real>::from(p0);
    PointT<Real> shifted = p;
    shifted.tau = p.tau + Real(1);
    const C lhs = psi_numeric<Real>(a, shifted);
    PsiParams b = a;
    b.eps = half_mod1(a.eps + a.eps_prime);
    const C rhs = e2pi<Real>(C(to_real<Real>(a.j * a.k / a.M), Real(0))) * psi_numeric<Real>(b, p);
    using std::abs;
    return static_cast<double>(abs(lhs - rhs));
}

template <class Real>
double denominator_residual_t(Sign sign, Sector sector, Transform which, const NumericPoint& p0)
{
    using C = Complex<Real>;
    const C tau = lift<Real>(p0.tau), z = lift<Real>(p0.z1);
    const Rational e = eps_of(sign), ep = eps_prime_of(sector);
    C lhs, rhs;
    if (which == Transform::S) {
        lhs = denominator_numeric<Real>(sign, sector, Real(-1) / tau, z / tau);
        const Real s = (sgn(e) != 0 && sgn(ep) != 0) ? Real(-1) : Real(1);
        rhs = s * tau * e2pi<Real>(z * z / tau) * denominator_numeric<Real>(sign_of_eps(ep), sector_of_eps_prime(e), tau, z);
    } else {
        lhs = denominator_numeric<Real>(sign, sector, tau + Real(1), z);
        rhs = e2pi<Real>(C(-to_real<Real>(ep) / 2, Real(0))) *
              denominator_numeric<Real>(sign_of_eps(half_mod1(e + ep)), sector, tau, z);
    }
    using std::abs;
    return static_cast<double>(abs(lhs - rhs));
}

} // namespace

double psi_s_residual(const PsiParams& params, const NumericPoint& p, Precision prec)
{
    return with_precision(prec, [&]<class Real>() { return psi_s_residual_t<Real>(params, p); });
}

double psi_t_residual(const PsiParams& params, const NumericPoint& p, Precision prec)
{
    return with_precision(prec, [&]<class Real>() { return psi_t_residual_t<Real>(params, p); });
}

double denominator_transform_residual(Sign sign, Sector sector, Transform which, const NumericPoint& p, Precision prec)
{
    return with_precision(prec, [&]<class Real>() { return denominator_residual_t<Real>(sign, sector, which, p); });
}

std::vector<FamilyMember> character_family(int M, int statement)
{
    if (M < 1)
        throw std::invalid_argument("M must be positive");
    if (statement != 1 && statement != 2)
        throw std::invalid_argument("statement must be 1 or 2");
    struct Kind {
        Sign sign;
        bool twisted;
    };
    std::vector<Kind> kinds;
    if (statement == 1)
        kinds = {{Sign::plus, false}, {Sign::minus, false}, {Sign::plus, true}};
    else
        kinds = {{Sign::minus, true}};

    std::vector<FamilyMember> out;
    std::set<std::tuple<Rational, Rational, Rational, Rational>> seen;
    for (Heart heart : {Heart::I, Heart::III})
        for (int k1 = 0; 2 * k1 <= M; ++k1)
            for (int k2 = 0; 2 * k1 + k2 <= M; ++k2) {
                if (!in_range(M, k1, k2, heart))
                    continue;
                for (const auto& kind : kinds) {
                    const auto idx = dd_indices(M, k1, k2, heart, kind.sign, kind.twisted);
                    const Rational lo = std::min(idx.psi.j, idx.psi.k), hi = std::max(idx.psi.j, idx.psi.k);
                    if (!seen.emplace(idx.psi.eps, idx.psi.eps_prime, lo, hi).second)
                        continue;
                    const std::string id = std::string(kind.twisted ? "R" : "NS") + to_string(kind.sign) + "[" +
                                           to_string(heart) + "](" + std::to_string(k1) + "," + std::to_string(k2) +
                                           ")";
                    out.push_back({id, M, k1, k2, heart, kind.sign, kind.twisted, idx.psi.j, idx.psi.k, idx.psi.eps,
                                   idx.psi.eps_prime, idx.global_sign});
                }
            }
    return out;
}

std::vector<NumericPoint> sample_points(std::size_t n, std::uint32_t seed)
{
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> re_tau(-0.5, 0.5), im_tau(0.8, 1.3), re_z(0.05, 0.3), im_z(-0.1, 0.1);
    std::vector<NumericPoint> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::complex<double> tau(re_tau(gen), im_tau(gen));
        const std::complex<double> z(re_z(gen), im_z(gen));
        out.push_back({tau, z, z, 0});
    }
    return out;
}

std::vector<NumericPoint> generic_points()
{
    return {
        {{0.2, 0.9}, {0.13, 0.0}, {0.07, 0.0}, 0},
        {{0.11, 0.93}, {0.1732, 0.0414}, {-0.0913, 0.0271}, 0},
        {{-0.27, 1.07}, {0.0707, -0.0316}, {0.1414, 0.0523}, 0},
        {{0.38, 0.84}, {-0.1234, 0.0618}, {0.2236, -0.0447}, 0},
        {{-0.05, 1.21}, {0.2718, 0.0141}, {0.0577, -0.0832}, 0},
        {{0.31, 1.29}, {0.0331, 0.0901}, {-0.1618, 0.0112}, 0},
    };
}

namespace {

/// numerical rank of the family on the built-in sample points (members can coincide, e.g. at M = 1)
Eigen::Index family_rank(int M, int statement)
{
    using Mat = Eigen::MatrixXcd;
    const auto fam = character_family(M, statement);
    const auto pts = sample_points(3 * fam.size());
    Mat A(pts.size(), fam.size());
    for (std::size_t p = 0; p < pts.size(); ++p)
        for (std::size_t f = 0; f < fam.size(); ++f) {
            const auto& m = fam[f];
            A(p, f) = character_numeric(m.M, m.k1, m.k2, m.heart, m.sign, m.twisted, pts[p].tau, pts[p].z1);
        }
    Eigen::ColPivHouseholderQR<Mat> qr(A);
    qr.setThreshold(1e-9);
    return qr.rank();
}

template <class Real>
SpanCertificate span_closure_t(int M, int statement, Transform which, const std::vector<NumericPoint>& points, double tol)
{
    using C = Complex<Real>;
    using Mat = Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic>;
    const auto fam = character_family(M, statement);
    const std::size_t n = fam.size();
    if (points.size() < 3 * n)
        throw std::invalid_argument("span_closure needs at least 3x as many points as family members (" +
                                    std::to_string(3 * n) + ")");
    Mat A(points.size(), n), B(points.size(), n);
    for (std::size_t p = 0; p < points.size(); ++p) {
        const C tau = lift<Real>(points[p].tau), z = lift<Real>(points[p].z1);
        for (std::size_t f = 0; f < n; ++f) {
            const auto& m = fam[f];
            A(p, f) = character_numeric<Real>(m.M, m.k1, m.k2, m.heart, m.sign, m.twisted, tau, z);
            B(p, f) = transformed_member<Real>(m, which, tau, z);
        }
    }

    // numerically independent columns by pivoted QR
    Eigen::ColPivHouseholderQR<Mat> qr(A);
    qr.setThreshold(Real(1e-9));
    const auto rank = qr.rank();
    const auto expected = family_rank(M, statement);
    if (rank < expected)
        throw IllConditioned("sample points give rank " + std::to_string(rank) + " but the family has rank " +
                             std::to_string(expected) + "; use more distinct, generic points");
    std::vector<int> basis_idx;
    for (Eigen::Index i = 0; i < rank; ++i)
        basis_idx.push_back(qr.colsPermutation().indices()(i));
    std::sort(basis_idx.begin(), basis_idx.end());
    Mat Ab(points.size(), basis_idx.size());
    for (std::size_t b = 0; b < basis_idx.size(); ++b)
        Ab.col(b) = A.col(basis_idx[b]);

    Eigen::JacobiSVD<Mat> svd(Ab);
    const auto& sv = svd.singularValues();
    const double cond = static_cast<double>(sv(0) / sv(sv.size() - 1));
    if (!(cond < max_condition))
        throw IllConditioned("sample matrix condition number " + std::to_string(cond) +
                             " is too large; choose more generic points");

    const Mat X = Ab.colPivHouseholderQr().solve(B);
    const Mat R = Ab * X - B;
    Real res(0);
    for (Eigen::Index i = 0; i < R.rows(); ++i)
        for (Eigen::Index j = 0; j < R.cols(); ++j) {
            using std::abs;
            res = std::max(res, Real(abs(R(i, j))));
        }

    SpanCertificate cert;
    cert.transform = which;
    cert.M = M;
    cert.statement = statement;
    for (const auto& m : fam)
        cert.family.push_back(m.id);
    for (int b : basis_idx)
        cert.basis.push_back(fam[b].id);
    cert.coefficients.assign(n, std::vector<std::complex<double>>(basis_idx.size()));
    for (std::size_t f = 0; f < n; ++f)
        for (std::size_t b = 0; b < basis_idx.size(); ++b)
            cert.coefficients[f][b] = lower<Real>(X(b, f));
    cert.residual = static_cast<double>(res);
    cert.condition = cond;
    cert.tol = tol;
    cert.points = points;
    cert.precision_bits = std::numeric_limits<Real>::digits;
    return cert;
}

} // namespace

SpanCertificate span_closure(int M, int statement, Transform which, const std::vector<NumericPoint>& points, double tol,
                             Precision prec)
{
    SpanCertificate c =
        with_precision(prec, [&]<class Real>() { return span_closure_t<Real>(M, statement, which, points, tol); });
    if (which == Transform::T && c.basis.size() == c.family.size())
        c.diagonal_deviation = t_diagonal_deviation(c, M, statement);
    return c;
}

double t_diagonal_deviation(const SpanCertificate& cert, int M, int statement)
{
    if (cert.transform != Transform::T)
        throw std::invalid_argument("diagonal prediction applies to T certificates");
    const auto fam = character_family(M, statement);
    if (cert.basis.size() != fam.size())
        throw std::invalid_argument("family is numerically dependent; no unique T coefficients");
    double dev = 0;
    for (std::size_t f = 0; f < fam.size(); ++f) {
        const auto& a = fam[f];
        const Rational target_eps = half_mod1(a.eps + a.eps_prime);
        std::size_t g = fam.size();
        for (std::size_t i = 0; i < fam.size(); ++i) {
            const auto& b = fam[i];
            if (b.eps == target_eps && b.eps_prime == a.eps_prime &&
                std::min(a.j, a.k) == std::min(b.j, b.k) && std::max(a.j, a.k) == std::max(b.j, b.k))
                g = i;
        }
        if (g == fam.size())
            throw std::logic_error("no T partner for " + a.id);
        const double ph = Rational(a.j * a.k / M + a.eps_prime / 2).get_d();
        const std::complex<double> predicted =
            std::polar(1.0, 2 * pi_v<double>() * ph) * double(a.global_sign * fam[g].global_sign);
        for (std::size_t b = 0; b < fam.size(); ++b) {
            const std::complex<double> want = b == g ? predicted : 0.0;
            dev = std::max(dev, std::abs(cert.coefficients[f][b] - want));
        }
    }
    return dev;
}

std::string to_json(const SpanCertificate& c, int indent)
{
    using ojson = nlohmann::ordered_json;
    auto cx = [](std::complex<double> v) {
        ojson o;
        o["re"] = v.real();
        o["im"] = v.imag();
        return o;
    };
    ojson j;
    j["transform"] = to_string(c.transform);
    j["M"] = c.M;
    j["statement"] = c.statement;
    j["family"] = c.family;
    j["basis"] = c.basis;
    ojson rows = ojson::array();
    for (const auto& r : c.coefficients) {
        ojson row = ojson::array();
        for (auto v : r)
            row.push_back(cx(v));
        rows.push_back(std::move(row));
    }
    j["coefficients"] = std::move(rows);
    j["residual"] = c.residual;
    j["tol"] = c.tol;
    j["passed"] = c.passed();
    j["condition"] = c.condition;
    ojson pts = ojson::array();
    for (const auto& p : c.points) {
        ojson o;
        o["tau"] = cx(p.tau);
        o["z"] = cx(p.z1);
        pts.push_back(std::move(o));
    }
    j["points"] = std::move(pts);
    j["precision_bits"] = c.precision_bits;
    if (c.diagonal_deviation)
        j["diagonal_deviation"] = *c.diagonal_deviation;
    return j.dump(indent);
}

} // namespace n4
