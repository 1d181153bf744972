#include "n4/suites.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "n4/characters.hpp"
#include "n4/modular.hpp"
#include "n4/numerators.hpp"
#include "n4/reduction.hpp"
#include "n4/series.hpp"
#include "n4/theta.hpp"

namespace n4 {

std::string to_string(CaseStatus s)
{
    switch (s) {
    case CaseStatus::pass: return "pass";
    case CaseStatus::fail: return "fail";
    case CaseStatus::skip: return "skip";
    }
    return "?";
}

std::size_t SuiteReport::count(CaseStatus s) const
{
    return static_cast<std::size_t>(
        std::count_if(cases.begin(), cases.end(), [s](const CaseResult& c) { return c.status == s; }));
}

namespace {

// order used wherever a truncated series is compared against a numeric value
const Rational numeric_series_order(12);

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

CaseOutcome within(double r, double tol)
{
    return {r < tol ? CaseStatus::pass : CaseStatus::fail, "residual " + sci(r) + " (tol " + sci(tol) + ")"};
}

CaseOutcome holds(bool ok, std::string detail) { return {ok ? CaseStatus::pass : CaseStatus::fail, std::move(detail)}; }

CaseOutcome cross(const RatioBuilder& a, const RatioBuilder& b, const Rational& o)
{
    return holds(cross_equal_to(a, b, o), "cross-multiplied, exact below q^" + to_string(o));
}

SeriesBuilder th(ThetaLabel l, std::int64_t tau_scale = 1, std::int64_t z_scale = 1, Rational shift_tau = 0,
                 Rational shift_one = 0)
{
    return theta_builder(l, ThetaArg{tau_scale, z_scale, std::move(shift_tau), std::move(shift_one)});
}

SeriesBuilder mono(const Rational& q, const Rational& x, const GaussianRational& c = 1)
{
    return monomial_builder(q, x, c);
}

const GaussianRational I = GaussianRational::i();

double rel(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) / std::max(1.0, std::abs(a)); }

std::vector<NumericPoint> floored(const std::vector<NumericPoint>& pts, double floor)
{
    for (const auto& p : pts)
        require_im_tau_floor(p, floor);
    return pts;
}

std::string half_str(const Rational& r) { return to_string(r); }

constexpr ThetaLabel t00 = ThetaLabel::t00, t01 = ThetaLabel::t01, t10 = ThetaLabel::t10, t11 = ThetaLabel::t11;

} // namespace

// ---------------------------------------------------------------- theta

std::vector<SuiteCase> theta_cases(const SuiteConfig& cfg)
{
    const Rational Q = cfg.q_order;
    const Rational h = rat(1, 2), e = rat(1, 8), f = rat(1, 4);
    std::vector<SuiteCase> out;
    auto add = [&](std::string id, std::function<CaseOutcome()> fn) { out.push_back({std::move(id), std::move(fn)}); };
    auto same = [&](std::string id, RatioBuilder a, RatioBuilder b) {
        add(std::move(id), [a, b, Q] { return cross(a, b, Q); });
    };

    for (ThetaLabel l : all_theta_labels)
        add("sum-product/" + to_string(l), [l, Q] {
            return holds(equal_to_order(theta_sum(l, Q), theta_product(l, Q), Q),
                         "lattice sum vs triple product, exact below q^" + to_string(Q));
        });
    for (ThetaLabel l : all_theta_labels)
        add("parity/" + to_string(l), [l, Q] {
            const JacobiSeries s = theta_product(l, Q);
            const JacobiSeries want = l == t11 ? negate(s) : s;
            return holds(equal_to_order(subst_negate_z(s), want, Q),
                         l == t11 ? "odd in z" : "even in z");
        });

    // half-period shift in tau
    const std::array<std::tuple<ThetaLabel, ThetaLabel, GaussianRational>, 4> half_tau{
        {{t00, t10, 1}, {t01, t11, -I}, {t10, t00, 1}, {t11, t01, -I}}};
    for (const auto& [from, to, c] : half_tau)
        same("half-period-tau/" + to_string(from), ratio_of({th(from, 1, 1, h)}, {}),
             ratio_of({mono(-e, -h, c), th(to)}, {}));

    // products at (2 tau, z +- tau/2) against eta quotients
    for (int sgn : {1, -1}) {
        const std::string tag = sgn > 0 ? "plus" : "minus";
        const Rational st = sgn * h;
        same("doubling-half-shift-" + tag + "/00-10", ratio_of({th(t00, 2, 1, st), th(t10, 2, 1, st), eta_builder(1)}, {}),
             ratio_of({mono(-e, -sgn * h), eta_builder(2), eta_builder(2), th(t00)}, {}));
        same("doubling-half-shift-" + tag + "/01-11", ratio_of({th(t01, 2, 1, st), th(t11, 2, 1, st), eta_builder(1)}, {}),
             ratio_of({mono(-e, -sgn * h, sgn > 0 ? -I : I), eta_builder(2), eta_builder(2), th(t01)}, {}));
    }
    // theta(tau, z) theta(tau, z) against theta(2 tau, 2z)
    same("duplication/00-01", ratio_of({th(t00), th(t01), eta_builder(2)}, {}),
         ratio_of({eta_builder(1), eta_builder(1), th(t01, 2, 2)}, {}));
    same("duplication/10-11", ratio_of({th(t10), th(t11), eta_builder(2)}, {}),
         ratio_of({eta_builder(1), eta_builder(1), th(t11, 2, 2)}, {}));
    // theta(2 tau, z) theta(2 tau, z) against theta(tau, z)
    same("doubling/00-10", ratio_of({th(t00, 2), th(t10, 2), eta_builder(1)}, {}),
         ratio_of({eta_builder(2), eta_builder(2), th(t10)}, {}));
    same("doubling/01-11", ratio_of({th(t01, 2), th(t11, 2), eta_builder(1)}, {}),
         ratio_of({eta_builder(2), eta_builder(2), th(t11)}, {}));
    // full period shift at 2 tau
    for (const auto& [from, to, c] : half_tau)
        same("doubled-period-shift/" + to_string(from), ratio_of({th(from, 2, 1, 1)}, {}),
             ratio_of({mono(-f, -h, c), th(to, 2)}, {}));

    same("quadruple-product", ratio_of({eta_builder(1), eta_builder(1), eta_builder(1), th(t11, 1, 2)}, {}),
         ratio_of({th(t00), th(t01), th(t10), th(t11)}, {}));
    same("half-period-one/11+", ratio_of({th(t11, 1, 1, 0, h)}, {}), ratio_of({mono(0, 0, -1), th(t10)}, {}));
    same("half-period-one/11-", ratio_of({th(t11, 1, 1, 0, -h)}, {}), ratio_of({th(t10)}, {}));

    add("eta-pentagonal", [Q] {
        JacobiSeries::Terms terms;
        for (long k = -100; k <= 100; ++k) {
            const long p = k * (3 * k - 1) / 2;
            if (Rational(p) + rat(1, 24) < Q)
                terms[{24 * p + 1, 0}] = GaussianRational(k % 2 ? -1 : 1);
        }
        const JacobiSeries pent(24, 1, std::move(terms), Q);
        return holds(equal_to_order(eta_series(Q), pent, Q), "product vs pentagonal sum below q^" + to_string(Q));
    });

    const double tol = cfg.tol;
    for (ThetaLabel l : all_theta_labels)
        add("numeric-vs-series/" + to_string(l), [l] {
            const std::complex<double> tau(0, 1), z(0.1, 0.05);
            const auto s = theta_product(l, 40);
            return within(std::abs(eval_numeric(s, tau, z) - theta_numeric(l, tau, z)), 1e-12);
        });
    add("numeric-s-law/00", [tol] {
        const std::complex<double> tau(0.3, 0.7), z(0.1, 0);
        using C = std::complex<double>;
        const C lhs = theta_numeric(t00, -1.0 / tau, z / tau);
        const C rhs = std::sqrt(-C(0, 1) * tau) * std::exp(C(0, pi_v<double>()) * z * z / tau) * theta_numeric(t00, tau, z);
        return within(std::abs(lhs - rhs), tol);
    });
    return out;
}

// ---------------------------------------------------------------- psi

std::vector<SuiteCase> psi_cases(const SuiteConfig& cfg)
{
    std::vector<SuiteCase> out;
    const double tol = cfg.tol, floor = cfg.im_tau_floor;
    auto add = [&](std::string id, std::function<CaseOutcome()> fn) { out.push_back({std::move(id), std::move(fn)}); };
    const Rational half = rat(1, 2);

    for (int M = 1; M <= 4; ++M) {
        for (int law = 1; law <= 4; ++law) {
            static const char* names[] = {"", "index-periodicity", "negation-swap", "argument-swap", "negation"};
            add(std::string(names[law]) + "/M" + std::to_string(M), [M, law, tol, floor, half] {
                std::mt19937 gen(1000u * M + law);
                std::uniform_int_distribution<int> jr(-M, M), ab(-2, 2), bit(0, 1);
                double worst = 0;
                for (const auto& p : floored(generic_points(), floor)) {
                    const Rational ep = bit(gen) ? half : Rational(0), e = bit(gen) ? half : Rational(0);
                    const Rational j = ep + jr(gen), k = ep + jr(gen);
                    const PsiParams a{M, j, k, e, ep};
                    const NumericPoint swapped{p.tau, p.z2, p.z1, 0};
                    const NumericPoint negated{p.tau, -p.z1, -p.z2, 0};
                    std::complex<double> lhs, rhs;
                    switch (law) {
                    case 1: {
                        const int ia = ab(gen), ib = ab(gen);
                        lhs = psi_numeric({M, j + ia * M, k + ib * M, e, ep}, p);
                        rhs = std::polar(1.0, 2 * pi_v<double>() * (ia - ib) * e.get_d()) * psi_numeric(a, p);
                        break;
                    }
                    case 2:
                        lhs = psi_numeric(a, negated);
                        rhs = -psi_numeric({M, -k, -j, e, ep}, swapped);
                        break;
                    case 3:
                        lhs = psi_numeric(a, swapped);
                        rhs = psi_numeric({M, k, j, e, ep}, p);
                        break;
                    default:
                        lhs = psi_numeric(a, negated);
                        rhs = -psi_numeric({M, -j, -k, e, ep}, p);
                    }
                    worst = std::max(worst, rel(lhs, rhs));
                }
                auto o = within(worst, tol);
                o.detail = "relative " + o.detail + " over " + std::to_string(generic_points().size()) + " points";
                return o;
            });
        }
    }

    for (int M = 1; M <= 4; ++M)
        for (const Rational& ep : {Rational(0), half})
            for (const Rational& e : {Rational(0), half})
                for (int dj = -1; dj <= 1; ++dj) {
                    const Rational j = ep + dj;
                    add("diag-series-vs-numeric/M" + std::to_string(M) + "/j=" + half_str(j) + "/eps=" + half_str(e) +
                            "/eps'=" + half_str(ep),
                        [M, j, e, ep, floor] {
                            const PsiParams a{M, j, j, e, ep};
                            const SeriesRatio r = psi_diag_ratio(a, numeric_series_order);
                            double worst = 0;
                            for (const auto& p : floored(generic_points(), std::max(floor, 0.5))) {
                                const auto v = eval_numeric<double>(r, p.tau, p.z1);
                                worst = std::max(worst, rel(v, psi_numeric(a, {p.tau, p.z1, p.z1, 0})));
                            }
                            return within(worst, 1e-10);
                        });
                }

    add("trivial-parameters-reduce-to-phi1", [tol, floor] {
        double worst = 0;
        for (const auto& p : floored(generic_points(), floor))
            worst = std::max(worst, std::abs(psi_numeric({1, 0, 0, 0, 0}, p) -
                                             phi1_numeric<double>(0, PointT<double>::from(p))));
        return within(worst, tol);
    });
    add("phi1-symmetry-and-t", [tol, floor] {
        double worst = 0;
        for (const auto& p : floored(generic_points(), floor)) {
            const auto P = PointT<double>::from(p);
            const auto v = phi1_numeric<double>(0, P);
            PointT<double> s = P;
            std::swap(s.z1, s.z2);
            PointT<double> t = P;
            t.t += 0.5;
            worst = std::max({worst, std::abs(v - phi1_numeric<double>(5, P)), std::abs(v - phi1_numeric<double>(0, s)),
                              std::abs(-v - phi1_numeric<double>(0, t))});
        }
        return within(worst, tol);
    });
    add("a11-cutoff-stability", [] {
        const NumericPoint p{{0.1, 1.0}, {0.17, 0.03}, {0.11, -0.02}, 0};
        const auto a = phi_a11_numeric(1, 0, p, 30, 1e-10), b = phi_a11_numeric(1, 0, p, 40, 1e-10);
        return within(std::abs(a.value - b.value), 1e-14);
    });
    add("a11-t-prefactor", [] {
        const NumericPoint p{{0.1, 1.0}, {0.17, 0.03}, {0.11, -0.02}, 0};
        NumericPoint pt = p;
        pt.t = {0.3, 0.1};
        const auto a = phi_a11_numeric(2, 1, p, 30, 1e-10), b = phi_a11_numeric(2, 1, pt, 30, 1e-10);
        return within(std::abs(b.value - e2pi<double>(-2.0 * pt.t) * a.value), 1e-12);
    });
    return out;
}

// ---------------------------------------------------------------- characters

namespace {

std::string spec_id(const CharacterSpec& s)
{
    return "M" + std::to_string(s.M) + "/j=" + to_string(s.j) + "/" + to_string(s.sector) + to_string(s.sign);
}

std::string kind_id(Heart h, Sign s, bool tw)
{
    return to_string(h) + "/" + (tw ? "R" : "NS") + to_string(s);
}

RatioBuilder character_builder(const CharacterSpec& s)
{
    return [s](const Rational& o) { return character_ratio(s, o); };
}

RatioBuilder one_builder()
{
    return [](const Rational&) { return SeriesRatio(JacobiSeries::constant(1), JacobiSeries::constant(1)); };
}

/// expected lowest q-level of the M = 2 characters inside window [-w, w]
std::vector<std::pair<Rational, GaussianRational>> m2_leading(const CharacterSpec& s, int w)
{
    std::vector<std::pair<Rational, GaussianRational>> out;
    if (s.sector == Sector::NS) {
        const Rational top = s.j > 0 ? rat(-1, 2) : rat(-3, 2);
        for (Rational x = top; x >= -w; x -= 2)
            out.emplace_back(x, 1);
    } else if (s.j == 0) {
        out.emplace_back(0, 1);
    } else {
        const int pm = s.sign == Sign::plus ? 1 : -1;
        out = {{-1, 1}, {0, 2 * pm}, {1, 1}};
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

} // namespace

std::vector<SuiteCase> character_cases(const SuiteConfig& cfg)
{
    const Rational Q = cfg.q_order;
    std::vector<SuiteCase> out;
    auto add = [&](std::string id, std::function<CaseOutcome()> fn) { out.push_back({std::move(id), std::move(fn)}); };
    const Rational h = rat(1, 2), e = rat(1, 8);

    for (Sector sec : {Sector::NS, Sector::R})
        for (Sign sg : {Sign::plus, Sign::minus}) {
            const CharacterSpec s{1, sec == Sector::NS ? h : Rational(0), sec, sg};
            add("trivial/" + spec_id(s), [s, Q] { return cross(character_builder(s), one_builder(), Q); });
        }

    for (int M = 1; M <= 5; ++M)
        for (Heart heart : {Heart::I, Heart::III}) {
            const auto [lo, hi] = nice_k1_range(M, heart);
            for (int k1 = lo; k1 <= hi; ++k1)
                for (bool tw : {false, true})
                    for (Sign sg : {Sign::plus, Sign::minus})
                        add("nice-vs-general/M" + std::to_string(M) + "/k1=" + std::to_string(k1) + "/" +
                                kind_id(heart, sg, tw),
                            [=] {
                                const CharacterSpec s{M, nice_param_to_j(M, k1, heart, tw), tw ? Sector::R : Sector::NS,
                                                      sg};
                                return cross([=](const Rational& o) { return nice_numerator(M, k1, heart, sg, tw, o); },
                                             [=](const Rational& o) {
                                                 return denominator(sg, s.sector, o) * character_ratio(s, o);
                                             },
                                             Q);
                            });
        }

    // M = 2 closed forms as eta / theta quotients
    const auto eta2 = eta_builder(2), eta1 = eta_builder(1);
    for (int pm : {1, -1}) {
        const Rational j = pm * h;
        const CharacterSpec plus{2, j, Sector::NS, Sign::plus}, minus{2, j, Sector::NS, Sign::minus};
        add("closed-form/" + spec_id(plus), [=] {
            return cross(character_builder(plus),
                         ratio_of({mono(0, 0, I), eta2, eta2, eta2, th(t00, 2, 1, j), th(t00)},
                                  {eta1, eta1, eta1, th(t10, 2, 1, j), th(t11, 2, 2)}),
                         Q);
        });
        add("closed-form/" + spec_id(minus), [=] {
            return cross(character_builder(minus),
                         ratio_of({mono(0, 0, pm), eta2, eta2, eta2, th(t01, 2, 1, j), th(t01)},
                                  {eta1, eta1, eta1, th(t11, 2, 1, j), th(t11, 2, 2)}),
                         Q);
        });
    }
    {
        const std::array<std::tuple<int, Sign, ThetaLabel, ThetaLabel, ThetaLabel, int>, 4> ramond{
            {{0, Sign::plus, t00, t10, t10, 1},
             {0, Sign::minus, t01, t11, t11, 1},
             {1, Sign::plus, t10, t10, t00, 1},
             {1, Sign::minus, t11, t11, t01, -1}}};
        for (const auto& [j, sg, top2, top1, bot2, c] : ramond) {
            const CharacterSpec s{2, j, Sector::R, sg};
            add("closed-form/" + spec_id(s), [=] {
                return cross(character_builder(s),
                             ratio_of({mono(0, 0, c), eta2, eta2, eta2, th(top2, 2), th(top1)},
                                      {eta1, eta1, eta1, th(bot2, 2), th(t01, 2, 2)}),
                             Q);
            });
        }
    }

    for (Sector sec : {Sector::NS, Sector::R})
        for (const Rational& j : index_set(2, sec))
            for (Sign sg : {Sign::plus, Sign::minus}) {
                const CharacterSpec s{2, j, sec, sg};
                add("leading-term/" + spec_id(s), [s] {
                    const int w = 6;
                    const auto [hh, ss] = h_s_values(s);
                    const Rational low = -central_charge(2) / 24 + hh;
                    const JacobiSeries ser = character_series(s, low + 1, XWindow{-w, w});
                    const auto lq = ser.lowest_q();
                    if (!lq || *lq != low)
                        return holds(false, "lowest exponent " + (lq ? to_string(*lq) : "none") + ", want " +
                                                to_string(low));
                    const auto got = ser.level(low);
                    const auto want = m2_leading(s, w);
                    return holds(got == want, "q^" + to_string(low) + " level inside x window [-6, 6]");
                });
            }

    for (int M = 1; M <= 6; ++M)
        for (Sector sec : {Sector::NS, Sector::R})
            for (const Rational& j : index_set(M, sec))
                for (Sign sg : {Sign::plus, Sign::minus}) {
                    const CharacterSpec s{M, j, sec, sg};
                    add("lowest-exponent/" + spec_id(s), [s] {
                        const auto [hh, ss] = h_s_values(s);
                        const Rational low = -central_charge(s.M) / 24 + hh;
                        const JacobiSeries ser = character_series(s, low + rat(1, 2), XWindow{-8, 8});
                        const auto lq = ser.lowest_q();
                        return holds(lq && *lq == low,
                                     "lowest " + (lq ? to_string(*lq) : std::string("none")) + ", -c/24 + h = " +
                                         to_string(low));
                    });
                }

    for (Sign sg : {Sign::plus, Sign::minus})
        for (Sector sec : {Sector::NS, Sector::R}) {
            const std::string tag = to_string(sec) + to_string(sg);
            add("denominator-forms/" + tag, [=] {
                return cross([=](const Rational& o) { return denominator(sg, sec, o); },
                             [=](const Rational& o) { return denominator_three_theta(sg, sec, o); }, Q);
            });
            add("denominator-half-shift/" + tag, [=] {
                const Sign other = sg == Sign::plus ? Sign::minus : Sign::plus;
                return cross(
                    [=](const Rational& o) {
                        const SeriesRatio r = denominator(sg, sec, o + 1);
                        return SeriesRatio(subst_shift_z(r.num, 0, h), subst_shift_z(r.den, 0, h));
                    },
                    [=](const Rational& o) { return denominator(other, sec, o); }, Q);
            });
            add("denominator-numeric/" + tag, [=] {
                const std::complex<double> tau(0.13, 0.97), z(0.21, 0.04);
                const auto r = denominator(sg, sec, numeric_series_order);
                return within(std::abs(eval_numeric<double>(r, tau, z) - denominator_numeric<double>(sg, sec, tau, z)),
                              1e-11);
            });
        }

    for (int M = 1; M <= 5; ++M)
        for (Heart heart : {Heart::I, Heart::III}) {
            const auto [lo, hi] = nice_k1_range(M, heart);
            for (int k1 = lo; k1 <= hi; ++k1)
                for (bool tw : {false, true})
                    for (Sign sg : {Sign::plus, Sign::minus}) {
                        const int k2 = M - 1 - 2 * k1;
                        add("general-numerator-nice-case/M" + std::to_string(M) + "/k1=" + std::to_string(k1) + "/" +
                                kind_id(heart, sg, tw),
                            [=] {
                                return cross(
                                    [=](const Rational& o) { return dd_numerator(M, k1, k2, heart, sg, tw, o); },
                                    [=](const Rational& o) { return nice_numerator(M, k1, heart, sg, tw, o); }, Q);
                            });
                    }
        }
    for (int M = 1; M <= 3; ++M)
        for (Heart heart : {Heart::I, Heart::III})
            for (int k1 = 0; 2 * k1 <= M; ++k1)
                for (int k2 = 0; 2 * k1 + k2 <= M; ++k2) {
                    if (!in_range(M, k1, k2, heart))
                        continue;
                    for (bool tw : {false, true})
                        for (Sign sg : {Sign::plus, Sign::minus})
                            add("general-numerator-numeric/M" + std::to_string(M) + "/k=(" + std::to_string(k1) + "," +
                                    std::to_string(k2) + ")/" + kind_id(heart, sg, tw),
                                [=] {
                                    const auto idx = dd_indices(M, k1, k2, heart, sg, tw);
                                    const SeriesRatio r = dd_numerator(M, k1, k2, heart, sg, tw, numeric_series_order);
                                    double worst = 0;
                                    for (const auto& p : generic_points()) {
                                        const auto v = eval_numeric<double>(r, p.tau, p.z1);
                                        const auto want =
                                            double(idx.global_sign) * psi_numeric(idx.psi, {p.tau, p.z1, p.z1, 0});
                                        worst = std::max(worst, rel(v, want));
                                    }
                                    return within(worst, 1e-10);
                                });
                }

    for (Sector sec : {Sector::NS, Sector::R})
        for (const Rational& j : index_set(2, sec)) {
            const CharacterSpec s{2, j, sec, Sign::plus};
            add("numeric-vs-series/" + spec_id(s), [s] {
                const std::complex<double> tau(0.1, 1.2), z(0.1, -0.15);
                const JacobiSeries ser = character_series(s, 5, XWindow{-60, 60});
                const auto v = eval_numeric<double>(ser, tau, z);
                // M = 2 members are all nice: heart I for the upper j, III for the lower
                const bool upper = s.sector == Sector::NS ? s.j > 0 : s.j == 0;
                const auto want = character_numeric(2, 0, 1, upper ? Heart::I : Heart::III, s.sign,
                                                    s.sector == Sector::R, tau, z);
                return within(std::abs(v - want), 1e-6);
            });
        }
    return out;
}

// ---------------------------------------------------------------- reduction

std::vector<SuiteCase> reduction_cases(const SuiteConfig&)
{
    std::vector<SuiteCase> out;
    auto add = [&](std::string id, std::function<CaseOutcome()> fn) { out.push_back({std::move(id), std::move(fn)}); };

    for (int M = 1; M <= 9; ++M)
        for (Heart heart : {Heart::I, Heart::III}) {
            const auto [lo, hi] = nice_k1_range(M, heart);
            for (int k1 = lo; k1 <= hi; ++k1)
                for (bool tw : {false, true})
                    add("nice-closed-form/M" + std::to_string(M) + "/k1=" + std::to_string(k1) + "/" + to_string(heart) +
                            "/" + (tw ? "R" : "NS"),
                        [=] {
                            const HS general = reduction_hs({M, 1, 0, k1, M - 1 - 2 * k1, heart, tw});
                            const HS closed = nice_hs_closed_form(M, k1, heart, tw);
                            const Rational j = nice_param_to_j(M, k1, heart, tw);
                            const Sector sec = tw ? Sector::R : Sector::NS;
                            const auto set = index_set(M, sec);
                            const bool member = std::find(set.begin(), set.end(), j) != set.end();
                            const HS from_j = h_s_values({M, j, sec, Sign::plus});
                            return holds(general == closed && closed == from_j && member,
                                         "j = " + to_string(j) + ", (h, s) = (" + to_string(closed.h) + ", " +
                                             to_string(closed.s) + ")");
                        });
        }

    for (int M = 1; M <= 7; ++M)
        for (int m = 1; m <= 3; ++m) {
            // the (h, s) formulas make sense for any m, coprime or not
            add("heart-equivalence/M" + std::to_string(M) + "/m" + std::to_string(m), [M, m] {
                int checked = 0, bad = 0;
                for (int m2 = 0; m2 <= m; ++m2)
                    for (int k1 = 0; 2 * k1 <= M; ++k1)
                        for (int k2 = 0; 2 * k1 + k2 <= M - 2; ++k2)
                            for (bool tw : {false, true}) {
                                if (in_range(M, k1, k2, Heart::I)) {
                                    ++checked;
                                    bad += reduction_hs({M, m, m2, k1, k2, Heart::I, tw}) !=
                                           reduction_hs({M, m, m2, k1 + 1, k2, Heart::IV, tw});
                                }
                                if (k2 >= 1 && in_range(M, k1, k2, Heart::III)) {
                                    ++checked;
                                    bad += reduction_hs({M, m, m2, k1, k2, Heart::III, tw}) !=
                                           reduction_hs({M, m, m2, k1 + 1, k2, Heart::II, tw});
                                }
                            }
                return holds(bad == 0, std::to_string(checked) + " pairs, " + std::to_string(bad) + " mismatches");
            });
        }

    for (int M = 1; M <= 6; ++M)
        for (int m = 1; m <= 3; ++m) {
            if (std::gcd(M, m) != 1)
                continue;
            add("vanishing-scan/M" + std::to_string(M) + "/m" + std::to_string(m), [M, m] {
                int checked = 0, bad = 0, zeros = 0;
                for (Heart heart : {Heart::I, Heart::II, Heart::III, Heart::IV})
                    for (int m2 = 0; m2 <= m; ++m2)
                        for (int k1 = 0; 2 * k1 <= M; ++k1)
                            for (int k2 = 0; 2 * k1 + k2 <= M; ++k2)
                                for (bool tw : {false, true}) {
                                    const ReductionParams p{M, m, m2, k1, k2, heart, tw};
                                    if (!in_range(M, k1, k2, heart))
                                        continue;
                                    ++checked;
                                    const bool want = (heart == Heart::I || heart == Heart::III) &&
                                                      2 * k1 + k2 + 1 == M && m2 == m;
                                    const Rational a = alpha0_pairing(p);
                                    const bool positive_integer = is_integer(a) && a >= 1;
                                    const bool v = vanishes(p);
                                    zeros += v;
                                    bad += (v != want) || (v != positive_integer);
                                }
                return holds(bad == 0, std::to_string(checked) + " parameter sets, " + std::to_string(zeros) +
                                           " vanishing, " + std::to_string(bad) + " disagreements");
            });
        }

    add("central-charge", [] {
        bool ok = central_charge(1) == 0 && central_charge(2) == -3 && central_charge(3) == -4;
        for (int M = 1; M <= 9; ++M)
            ok = ok && reduction_central_charge(M, 1) == central_charge(M);
        return holds(ok, "6(1-M)/M against the reduction formula at m = 1, M <= 9");
    });
    return out;
}

// ---------------------------------------------------------------- modular

std::vector<SuiteCase> modular_cases(const SuiteConfig& cfg)
{
    std::vector<SuiteCase> out;
    auto add = [&](std::string id, std::function<CaseOutcome()> fn) { out.push_back({std::move(id), std::move(fn)}); };
    const double tol = cfg.tol, floor = cfg.im_tau_floor;
    const Precision prec = cfg.precision;
    const Rational half = rat(1, 2);

    for (int M = 1; M <= 3; ++M)
        for (const Rational& e : {Rational(0), half})
            for (const Rational& ep : {Rational(0), half})
                for (int a = 0; a < M; ++a)
                    for (int b = 0; b < M; ++b) {
                        const PsiParams p{M, ep + a, ep + b, e, ep};
                        const std::string tag = "M" + std::to_string(M) + "/j=" + to_string(p.j) + ",k=" +
                                                to_string(p.k) + "/eps=" + to_string(e) + ",eps'=" + to_string(ep);
                        for (Transform w : {Transform::S, Transform::T})
                            add("psi-" + to_string(w) + "/" + tag, [=] {
                                double worst = 0;
                                for (const auto& pt : floored(generic_points(), floor))
                                    worst = std::max(worst, w == Transform::S ? psi_s_residual(p, pt, prec)
                                                                              : psi_t_residual(p, pt, prec));
                                return within(worst, tol);
                            });
                    }

    std::vector<NumericPoint> den_points = generic_points();
    den_points.push_back({{0.1, 1.1}, {0.21, 0}, {0, 0}, 0});
    for (Sign sg : {Sign::plus, Sign::minus})
        for (Sector sec : {Sector::NS, Sector::R})
            for (Transform w : {Transform::S, Transform::T})
                add("denominator-" + to_string(w) + "/" + to_string(sec) + to_string(sg), [=] {
                    double worst = 0;
                    for (const auto& pt : floored(den_points, floor))
                        worst = std::max(worst, denominator_transform_residual(sg, sec, w, pt, prec));
                    return within(worst, tol);
                });
    add("denominator-S-twice/NS+", [floor] {
        using C = std::complex<double>;
        double worst = 0;
        for (const auto& pt : floored(generic_points(), floor)) {
            const C tau = pt.tau, z = pt.z1;
            const C tau1 = -1.0 / tau, z1 = z / tau;
            const C lhs = denominator_numeric<double>(Sign::plus, Sector::NS, -1.0 / tau1, z1 / tau1);
            const C factor = tau1 * e2pi<double>(z1 * z1 / tau1) * tau * e2pi<double>(z * z / tau);
            const C rhs = factor * denominator_numeric<double>(Sign::plus, Sector::NS, tau, z);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        return within(worst, 1e-8);
    });

    for (int M = 1; M <= 3; ++M)
        for (int st : {1, 2})
            for (Transform w : {Transform::S, Transform::T}) {
                const double span_tol = cfg.span_tol;
                add("span-closure/M" + std::to_string(M) + "/statement" + std::to_string(st) + "/" + to_string(w),
                    [=] {
                        const auto fam = character_family(M, st);
                        const auto pts = floored(sample_points(3 * fam.size()), floor);
                        const SpanCertificate c = span_closure(M, st, w, pts, span_tol, prec);
                        CaseOutcome o = within(c.residual, span_tol);
                        o.detail += ", family " + std::to_string(fam.size()) + ", basis " +
                                    std::to_string(c.basis.size()) + ", condition " + sci(c.condition);
                        if (o.status == CaseStatus::pass && c.diagonal_deviation) {
                            const double dev = *c.diagonal_deviation;
                            o.detail += ", diagonal-phase deviation " + sci(dev);
                            if (!(dev < 1e-6))
                                o.status = CaseStatus::fail;
                        }
                        return o;
                    });
            }

    add("precision-monotone/psi-S/M2", [floor, half] {
        const PsiParams p{2, half, rat(3, 2), half, half};
        const NumericPoint pt = floored(generic_points(), floor)[1];
        const double d = psi_s_residual(p, pt, Precision::Double);
        const double x = psi_s_residual(p, pt, Precision::Extended);
        const double q = psi_s_residual(p, pt, Precision::Quad);
        return holds(q <= x && x <= d, "double " + sci(d) + ", extended " + sci(x) + ", quad " + sci(q));
    });
    return out;
}

// ---------------------------------------------------------------- driver

std::vector<SuiteCase> suite_cases(std::string_view suite, const SuiteConfig& cfg)
{
    if (suite == "theta")
        return theta_cases(cfg);
    if (suite == "psi")
        return psi_cases(cfg);
    if (suite == "characters")
        return character_cases(cfg);
    if (suite == "reduction")
        return reduction_cases(cfg);
    if (suite == "modular")
        return modular_cases(cfg);
    if (suite == "all") {
        std::vector<SuiteCase> all;
        for (const auto& name : suite_names())
            for (auto& c : suite_cases(name, cfg)) {
                c.id = name + ":" + c.id;
                all.push_back(std::move(c));
            }
        return all;
    }
    throw std::invalid_argument("unknown suite '" + std::string(suite) +
                                "'; expected theta, psi, characters, reduction, modular or all");
}

std::vector<SuiteCase> with_prefix(const std::vector<SuiteCase>& cases, std::string_view prefix)
{
    std::vector<SuiteCase> out;
    for (const auto& c : cases)
        if (std::string_view(c.id).substr(0, prefix.size()) == prefix)
            out.push_back(c);
    return out;
}

SuiteReport run_suite(std::string suite, const std::vector<SuiteCase>& cases, const SuiteConfig& cfg)
{
    const auto start = std::chrono::steady_clock::now();
    SuiteReport r;
    r.suite = std::move(suite);
    r.config = cfg;
    r.cases.resize(cases.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cases.size(); i = next++) {
            CaseResult& out = r.cases[i];
            out.id = cases[i].id;
            try {
                const CaseOutcome o = cases[i].run();
                out.status = o.status;
                out.detail = o.detail;
            } catch (const std::exception& e) {
                out.status = CaseStatus::fail;
                out.detail = std::string("error: ") + e.what();
            }
        }
    };
    unsigned n = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(cases.size(), 1)));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n; ++t)
        pool.emplace_back(worker);
    worker();
    pool.clear();
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

namespace {

const char* precision_name(Precision p)
{
    switch (p) {
    case Precision::Double: return "double";
    case Precision::Extended: return "extended";
    case Precision::Quad: return "quad";
    }
    return "?";
}

} // namespace

std::string to_json(const SuiteReport& r, bool timing, int indent)
{
    using ojson = nlohmann::ordered_json;
    ojson j;
    j["suite"] = r.suite;
    j["passed"] = r.passed();
    j["counts"] = {{"pass", r.count(CaseStatus::pass)},
                   {"fail", r.count(CaseStatus::fail)},
                   {"skip", r.count(CaseStatus::skip)}};
    j["config"] = {{"q_order", to_string(r.config.q_order)},
                   {"tol", r.config.tol},
                   {"span_tol", r.config.span_tol},
                   {"precision", precision_name(r.config.precision)},
                   {"precision_bits", bits_of(r.config.precision)},
                   {"im_tau_floor", r.config.im_tau_floor}};
    if (timing)
        j["wall_time_s"] = r.wall_time_s;
    ojson cases = ojson::array();
    for (const auto& c : r.cases)
        cases.push_back({{"id", c.id}, {"status", to_string(c.status)}, {"detail", c.detail}});
    j["cases"] = std::move(cases);
    return j.dump(indent);
}

std::string to_text(const SuiteReport& r, bool timing)
{
    std::ostringstream os;
    os << "suite " << r.suite << ": q_order " << to_string(r.config.q_order) << ", tol " << sci(r.config.tol)
       << ", span tol " << sci(r.config.span_tol) << ", precision " << precision_name(r.config.precision) << " ("
       << bits_of(r.config.precision) << " bits), Im tau floor " << r.config.im_tau_floor << "\n";
    for (const auto& c : r.cases)
        os << "  " << to_string(c.status) << "  " << c.id << "  " << c.detail << "\n";
    os << r.count(CaseStatus::pass) << " passed, " << r.count(CaseStatus::fail) << " failed, "
       << r.count(CaseStatus::skip) << " skipped";
    if (timing) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", r.wall_time_s);
        os << " in " << buf << " s";
    }
    os << "\n";
    return os.str();
}

} // namespace n4
