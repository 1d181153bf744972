#include "n4/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace n4 {

namespace {

std::int64_t den_i64(const Rational& r)
{
    if (!r.get_den().fits_slong_p())
        throw std::overflow_error("exponent denominator too large");
    return r.get_den().get_si();
}

// smallest lattice unit count u with u/den >= o, i.e. terms are trusted iff u < limit
std::int64_t unit_limit(const Rational& o, std::int64_t den) { return ceil_i64(o * den); }

// +infinity-aware sum used for trust bounds: empty means unbounded
QOrder order_sum(const QOrder& a, const std::optional<Rational>& b)
{
    if (!a || !b)
        return {};
    return Rational(*a + *b);
}

QOrder product_order(const JacobiSeries& a, const JacobiSeries& b)
{
    return order_min(order_sum(a.q_order(), b.valuation()), order_sum(b.q_order(), a.valuation()));
}

std::optional<XWindow> window_meet(const std::optional<XWindow>& a, const std::optional<XWindow>& b)
{
    if (!a)
        return b;
    if (!b)
        return a;
    return XWindow{std::max(a->lo, b->lo), std::min(a->hi, b->hi)};
}

// product of a and b with every term at or beyond `limit` (already in the common lattice) skipped
JacobiSeries::Terms convolve(const JacobiSeries& a, const JacobiSeries& b, std::optional<std::int64_t> limit)
{
    JacobiSeries::Terms out;
    for (const auto& [ka, ca] : a.terms()) {
        if (limit && ka.first + b.terms().begin()->first.first >= *limit)
            break;
        for (const auto& [kb, cb] : b.terms()) {
            const std::int64_t q = ka.first + kb.first;
            if (limit && q >= *limit)
                break;
            out[{q, ka.second + kb.second}] += ca * cb;
        }
    }
    return out;
}

JacobiSeries mul_capped(const JacobiSeries& a0, const JacobiSeries& b0, const QOrder& cap)
{
    if (a0.x_window() && b0.x_window())
        throw std::invalid_argument("cannot multiply two windowed series");
    const std::int64_t qd = lcm_i64(a0.q_den(), b0.q_den());
    const std::int64_t xd = lcm_i64(a0.x_den(), b0.x_den());
    const JacobiSeries a = a0.on_lattice(qd, xd);
    const JacobiSeries b = b0.on_lattice(qd, xd);
    QOrder order = order_min(product_order(a, b), cap);

    std::optional<XWindow> window;
    if (a.x_window() || b.x_window()) {
        const JacobiSeries& w = a.x_window() ? a : b;
        const JacobiSeries& o = a.x_window() ? b : a;
        if (auto r = o.x_range())
            window = XWindow{w.x_window()->lo + r->second, w.x_window()->hi + r->first};
        else
            window = w.x_window();
    }
    std::optional<SupportBound> bound;
    if (a.bound() && b.bound())
        bound = SupportBound{a.bound()->spread + b.bound()->spread, a.bound()->center + b.bound()->center,
                             a.bound()->offset + b.bound()->offset};

    if (a.is_zero() || b.is_zero())
        return JacobiSeries(qd, xd, {}, order, window, bound);
    std::optional<std::int64_t> limit;
    if (order)
        limit = unit_limit(*order, qd);
    return JacobiSeries(qd, xd, convolve(a, b, limit), order, window, bound);
}

} // namespace

std::optional<Rational> SupportBound::at(const Rational& e) const
{
    if (sgn(spread) == 0) {
        if (e != center)
            return {};
        return offset;
    }
    Rational d = e - center;
    return Rational(d * d / spread + offset);
}

JacobiSeries::JacobiSeries(std::int64_t q_den, std::int64_t x_den, Terms terms, QOrder order,
                           std::optional<XWindow> window, std::optional<SupportBound> bound)
    : q_den_(q_den), x_den_(x_den), order_(std::move(order)), window_(std::move(window)), bound_(std::move(bound))
{
    if (q_den <= 0 || x_den <= 0)
        throw std::invalid_argument("lattice denominators must be positive");
    std::optional<std::int64_t> limit;
    if (order_)
        limit = unit_limit(*order_, q_den_);
    for (auto it = terms.begin(); it != terms.end();) {
        bool drop = it->second.is_zero() || (limit && it->first.first >= *limit) ||
                    (window_ && !window_->contains(rat(it->first.second, x_den_)));
        it = drop ? terms.erase(it) : std::next(it);
    }
    terms_ = std::move(terms);
}

JacobiSeries JacobiSeries::monomial(const Rational& q, const Rational& x, const GaussianRational& c, QOrder order)
{
    const std::int64_t qd = den_i64(q), xd = den_i64(x);
    Terms t;
    t[{to_lattice(q, qd), to_lattice(x, xd)}] = c;
    return JacobiSeries(qd, xd, std::move(t), std::move(order), {}, SupportBound{Rational(0), x, q});
}

JacobiSeries JacobiSeries::constant(const GaussianRational& c, QOrder order)
{
    return monomial(Rational(0), Rational(0), c, std::move(order));
}

std::optional<Rational> JacobiSeries::lowest_q() const
{
    if (terms_.empty())
        return {};
    return q_of(terms_.begin()->first);
}

std::optional<Rational> JacobiSeries::valuation() const
{
    auto low = lowest_q();
    if (!order_)
        return low;
    if (!low || *order_ < *low)
        return order_;
    return low;
}

std::optional<std::pair<Rational, Rational>> JacobiSeries::x_range() const
{
    if (terms_.empty())
        return {};
    std::int64_t lo = terms_.begin()->first.second, hi = lo;
    for (const auto& [k, c] : terms_) {
        lo = std::min(lo, k.second);
        hi = std::max(hi, k.second);
    }
    return std::make_pair(rat(lo, x_den_), rat(hi, x_den_));
}

GaussianRational JacobiSeries::coeff(const Rational& q, const Rational& x) const
{
    Rational qu = q * q_den_, xu = x * x_den_;
    if (!is_integer(qu) || !is_integer(xu))
        return GaussianRational(0);
    auto it = terms_.find({qu.get_num().get_si(), xu.get_num().get_si()});
    return it == terms_.end() ? GaussianRational(0) : it->second;
}

std::vector<std::pair<Rational, GaussianRational>> JacobiSeries::level(const Rational& q) const
{
    std::vector<std::pair<Rational, GaussianRational>> out;
    Rational qu = q * q_den_;
    if (!is_integer(qu))
        return out;
    const std::int64_t u = qu.get_num().get_si();
    auto it = terms_.lower_bound({u, INT64_MIN});
    for (; it != terms_.end() && it->first.first == u; ++it)
        out.emplace_back(x_of(it->first), it->second);
    return out;
}

std::vector<Rational> JacobiSeries::levels() const
{
    std::vector<Rational> out;
    for (const auto& [k, c] : terms_)
        if (out.empty() || out.back() != q_of(k))
            out.push_back(q_of(k));
    return out;
}

JacobiSeries JacobiSeries::on_lattice(std::int64_t q_den, std::int64_t x_den) const
{
    if (q_den == q_den_ && x_den == x_den_)
        return *this;
    if (q_den % q_den_ != 0 || x_den % x_den_ != 0)
        throw std::invalid_argument("target lattice is not a refinement");
    const std::int64_t fq = q_den / q_den_, fx = x_den / x_den_;
    Terms t;
    for (const auto& [k, c] : terms_)
        t.emplace_hint(t.end(), Key{mul_i64(k.first, fq), mul_i64(k.second, fx)}, c);
    JacobiSeries out = *this;
    out.q_den_ = q_den;
    out.x_den_ = x_den;
    out.terms_ = std::move(t);
    return out;
}

JacobiSeries JacobiSeries::truncated(const Rational& o) const
{
    if (order_ && o > *order_)
        throw std::invalid_argument("cannot raise trust bound from " + to_string(*order_) + " to " + to_string(o));
    return JacobiSeries(q_den_, x_den_, terms_, o, window_, bound_);
}

JacobiSeries JacobiSeries::with_bound(std::optional<SupportBound> b) const
{
    JacobiSeries out = *this;
    out.bound_ = std::move(b);
    return out;
}

JacobiSeries JacobiSeries::with_window(std::optional<XWindow> w) const
{
    return JacobiSeries(q_den_, x_den_, terms_, order_, std::move(w), bound_);
}

JacobiSeries add(const JacobiSeries& a0, const JacobiSeries& b0)
{
    if (b0.is_zero() && b0.exact() && !b0.x_window())
        return a0;
    if (a0.is_zero() && a0.exact() && !a0.x_window())
        return b0;
    const std::int64_t qd = lcm_i64(a0.q_den(), b0.q_den());
    const std::int64_t xd = lcm_i64(a0.x_den(), b0.x_den());
    const JacobiSeries a = a0.on_lattice(qd, xd);
    const JacobiSeries b = b0.on_lattice(qd, xd);
    JacobiSeries::Terms t = a.terms();
    for (const auto& [k, c] : b.terms())
        t[k] += c;
    std::optional<SupportBound> bound;
    if (a.bound() && b.bound() && *a.bound() == *b.bound())
        bound = a.bound();
    return JacobiSeries(qd, xd, std::move(t), order_min(a.q_order(), b.q_order()),
                        window_meet(a.x_window(), b.x_window()), bound);
}

JacobiSeries negate(const JacobiSeries& a) { return scale_monomial(a, Rational(0), Rational(0), GaussianRational(-1)); }

JacobiSeries sub(const JacobiSeries& a, const JacobiSeries& b) { return add(a, negate(b)); }

JacobiSeries mul(const JacobiSeries& a, const JacobiSeries& b) { return mul_capped(a, b, {}); }

JacobiSeries scale_monomial(const JacobiSeries& s0, const Rational& a_q, const Rational& a_x, const GaussianRational& c)
{
    const std::int64_t qd = lcm_i64(s0.q_den(), den_i64(a_q));
    const std::int64_t xd = lcm_i64(s0.x_den(), den_i64(a_x));
    const JacobiSeries s = s0.on_lattice(qd, xd);
    const std::int64_t dq = to_lattice(a_q, qd), dx = to_lattice(a_x, xd);
    JacobiSeries::Terms t;
    if (!c.is_zero())
        for (const auto& [k, v] : s.terms())
            t.emplace_hint(t.end(), JacobiSeries::Key{k.first + dq, k.second + dx}, v * c);
    std::optional<XWindow> w;
    if (s.x_window())
        w = XWindow{s.x_window()->lo + a_x, s.x_window()->hi + a_x};
    std::optional<SupportBound> bound;
    if (s.bound())
        bound = SupportBound{s.bound()->spread, s.bound()->center + a_x, s.bound()->offset + a_q};
    return JacobiSeries(qd, xd, std::move(t), order_plus(s.q_order(), a_q), w, bound);
}

JacobiSeries subst_scale_tau(const JacobiSeries& s, std::int64_t k)
{
    if (k < 1)
        throw std::invalid_argument("tau scale must be a positive integer");
    JacobiSeries::Terms t;
    for (const auto& [key, v] : s.terms())
        t.emplace_hint(t.end(), JacobiSeries::Key{mul_i64(key.first, k), key.second}, v);
    QOrder order;
    if (s.q_order())
        order = Rational(*s.q_order() * k);
    std::optional<SupportBound> bound;
    if (s.bound())
        bound = SupportBound{s.bound()->spread / k, s.bound()->center, s.bound()->offset * k};
    return JacobiSeries(s.q_den(), s.x_den(), std::move(t), order, s.x_window(), bound);
}

JacobiSeries subst_scale_z(const JacobiSeries& s, std::int64_t k)
{
    if (k < 1)
        throw std::invalid_argument("z scale must be a positive integer");
    JacobiSeries::Terms t;
    for (const auto& [key, v] : s.terms())
        t.emplace(JacobiSeries::Key{key.first, mul_i64(key.second, k)}, v);
    std::optional<XWindow> w;
    if (s.x_window())
        w = XWindow{s.x_window()->lo * k, s.x_window()->hi * k};
    std::optional<SupportBound> bound;
    if (s.bound())
        bound = SupportBound{s.bound()->spread * k * k, s.bound()->center * k, s.bound()->offset};
    return JacobiSeries(s.q_den(), s.x_den(), std::move(t), s.q_order(), w, bound);
}

JacobiSeries subst_negate_z(const JacobiSeries& s)
{
    JacobiSeries::Terms t;
    for (const auto& [key, v] : s.terms())
        t.emplace(JacobiSeries::Key{key.first, -key.second}, v);
    std::optional<XWindow> w;
    if (s.x_window())
        w = XWindow{-s.x_window()->hi, -s.x_window()->lo};
    std::optional<SupportBound> bound;
    if (s.bound())
        bound = SupportBound{s.bound()->spread, -s.bound()->center, s.bound()->offset};
    return JacobiSeries(s.q_den(), s.x_den(), std::move(t), s.q_order(), w, bound);
}

namespace {

// trust bound after z -> z + r*tau, from the support bound:
// min over lattice e of max(Q0, bound(e)) + e*r
Rational shifted_order(const Rational& q0, const SupportBound& b, const Rational& r, std::int64_t xd)
{
    if (sgn(b.spread) == 0)
        return std::max(q0, b.offset) + b.center * r;
    auto g = [&](std::int64_t u) {
        const Rational e = rat(u, xd);
        return Rational(std::max(q0, *b.at(e)) + e * r);
    };
    // g is convex in e, so a local minimum on the lattice is global
    std::int64_t u = floor_i64(b.center * xd);
    Rational best = g(u);
    for (int dir : {-1, 1}) {
        for (std::int64_t v = u + dir;; v += dir) {
            Rational val = g(v);
            if (val >= best)
                break;
            best = val;
            u = v;
        }
    }
    return best;
}

} // namespace

JacobiSeries subst_shift_z(const JacobiSeries& s0, const Rational& r_tau, const Rational& r_one)
{
    if (!is_integer(r_one * 4))
        throw std::invalid_argument("z shift " + to_string(r_one) + " is not a multiple of 1/4");
    const std::int64_t qd = lcm_i64(s0.q_den(), mul_i64(den_i64(r_tau), s0.x_den()));
    const JacobiSeries s = s0.on_lattice(qd, s0.x_den());
    const std::int64_t xd = s.x_den();

    QOrder order = s.q_order();
    std::optional<SupportBound> bound = s.bound();
    if (sgn(r_tau) != 0) {
        if (order) {
            if (!bound)
                throw std::domain_error("tau shift of a truncated series needs a support bound");
            order = shifted_order(*order, *bound, r_tau, xd);
        }
        if (bound) {
            const auto& b = *bound;
            bound = SupportBound{b.spread, b.center - r_tau * b.spread / 2,
                                 b.offset + b.center * r_tau - r_tau * r_tau * b.spread / 4};
        }
    }

    JacobiSeries::Terms t;
    for (const auto& [k, v] : s.terms()) {
        const Rational e = rat(k.second, xd);
        const Rational quarter = e * r_one * 4;
        if (!is_integer(quarter))
            throw std::invalid_argument("phase e^{2 pi i " + to_string(e * r_one) + "} is not a power of i");
        const std::int64_t dq = to_lattice(e * r_tau, qd);
        GaussianRational c = v * GaussianRational::i_pow(quarter.get_num().get_si() % 4);
        t.emplace(JacobiSeries::Key{k.first + dq, k.second}, std::move(c));
    }
    return JacobiSeries(qd, xd, std::move(t), order, s.x_window(), bound);
}

namespace {

using Level = std::map<std::int64_t, GaussianRational>; // x units -> coefficient

std::map<std::int64_t, Level> split_levels(const JacobiSeries& s)
{
    std::map<std::int64_t, Level> out;
    for (const auto& [k, c] : s.terms())
        out[k.first].emplace(k.second, c);
    return out;
}

} // namespace

JacobiSeries divide_directed(const JacobiSeries& num0, const JacobiSeries& den0, const XWindow& window, QOrder cap)
{
    if (num0.x_window() || den0.x_window())
        throw std::invalid_argument("directed division needs unwindowed operands");
    if (window.lo > window.hi)
        throw std::invalid_argument("degenerate x window");
    if (den0.is_zero())
        throw std::domain_error("division by a series with no trusted terms");
    const std::int64_t qd = lcm_i64(num0.q_den(), den0.q_den());
    const std::int64_t xd = lcm_i64(num0.x_den(), den0.x_den());
    const JacobiSeries num = num0.on_lattice(qd, xd);
    const JacobiSeries den = den0.on_lattice(qd, xd);

    const auto dlev = split_levels(den);
    const auto nlev = split_levels(num);
    const std::int64_t l0 = dlev.begin()->first;
    const Level& d0 = dlev.begin()->second;
    const std::int64_t dmax = d0.rbegin()->first;
    const GaussianRational dtop = d0.rbegin()->second;

    const Rational L0 = rat(l0, qd);
    QOrder order = cap;
    if (num.q_order())
        order = order_min(order, Rational(*num.q_order() - L0));
    if (den.q_order() && !num.is_zero())
        order = order_min(order, Rational(*den.q_order() - L0 + *num.lowest_q() - L0));
    if (!order)
        throw std::invalid_argument("quotient of exact series needs an explicit q_order");
    if (num.is_zero())
        return JacobiSeries(qd, xd, {}, order, window);

    const std::int64_t start = nlev.begin()->first - l0;
    const std::int64_t limit = unit_limit(*order, qd);
    const std::int64_t lo = ceil_i64(window.lo * xd), hi = floor_i64(window.hi * xd);
    if (limit <= start)
        return JacobiSeries(qd, xd, {}, order, window);

    // lower x bound per level so that every coefficient in the window comes out exact
    const std::int64_t n = limit - start;
    std::vector<std::int64_t> lb(static_cast<std::size_t>(n), lo);
    for (std::int64_t u = limit - 1; u >= start; --u) {
        std::int64_t& b = lb[static_cast<std::size_t>(u - start)];
        for (auto it = std::next(dlev.begin()); it != dlev.end(); ++it) {
            const std::int64_t w = u + (it->first - l0);
            if (w >= limit)
                break;
            b = std::min(b, lb[static_cast<std::size_t>(w - start)] + dmax - it->second.rbegin()->first);
        }
    }

    std::map<std::int64_t, Level> tl;
    for (std::int64_t u = start; u < limit; ++u) {
        const std::int64_t floor_x = lb[static_cast<std::size_t>(u - start)] + dmax;
        Level rhs;
        if (auto it = nlev.find(u + l0); it != nlev.end())
            for (const auto& [x, c] : it->second)
                if (x >= floor_x)
                    rhs[x] += c;
        for (auto it = std::next(dlev.begin()); it != dlev.end(); ++it) {
            auto prev = tl.find(u - (it->first - l0));
            if (prev == tl.end())
                continue;
            for (const auto& [tx, tc] : prev->second)
                for (const auto& [dx, dc] : it->second)
                    if (tx + dx >= floor_x)
                        rhs[tx + dx] -= tc * dc;
        }
        Level out;
        while (!rhs.empty()) {
            auto top = std::prev(rhs.end());
            if (top->second.is_zero()) {
                rhs.erase(top);
                continue;
            }
            const std::int64_t e = top->first - dmax;
            const GaussianRational c = top->second / dtop;
            for (const auto& [dx, dc] : d0)
                if (e + dx >= floor_x)
                    rhs[e + dx] -= c * dc;
            rhs.erase(top->first);
            out.emplace(e, c);
        }
        if (!out.empty())
            tl.emplace(u, std::move(out));
    }

    JacobiSeries::Terms terms;
    for (const auto& [u, lvl] : tl)
        for (const auto& [x, c] : lvl)
            if (x >= lo && x <= hi)
                terms.emplace(JacobiSeries::Key{u, x}, c);
    return JacobiSeries(qd, xd, std::move(terms), order, window);
}

JacobiSeries invert_directed(const JacobiSeries& s, const XWindow& window, QOrder order)
{
    return divide_directed(JacobiSeries::constant(1), s, window, std::move(order));
}

JacobiSeries product_to_order(const std::vector<SeriesBuilder>& factors, const Rational& q_order)
{
    std::vector<Rational> low;
    Rational total_neg(0);
    for (const auto& f : factors) {
        const JacobiSeries probe = f(Rational(1));
        Rational v = probe.valuation().value_or(Rational(1));
        low.push_back(std::min(v, Rational(0)));
        total_neg += low.back();
    }
    for (int margin = 0; margin < 8; ++margin) {
        JacobiSeries acc = JacobiSeries::constant(1);
        for (std::size_t i = 0; i < factors.size(); ++i)
            acc = acc * factors[i](q_order - (total_neg - low[i]) + margin);
        if (!acc.q_order() || *acc.q_order() >= q_order)
            return acc.truncated(q_order);
    }
    throw std::logic_error("product_to_order: trusted order not reached");
}

bool equal_to_order(const JacobiSeries& a, const JacobiSeries& b, const Rational& o)
{
    for (const auto* s : {&a, &b})
        if (s->q_order() && o > *s->q_order())
            throw std::invalid_argument("comparison order " + to_string(o) + " exceeds trusted order " +
                                        to_string(*s->q_order()));
    const JacobiSeries d = sub(a, b);
    for (const auto& [k, c] : d.terms())
        if (d.q_of(k) < o)
            return false;
    return true;
}

SeriesRatio::SeriesRatio(JacobiSeries n, JacobiSeries d) : num(std::move(n)), den(std::move(d))
{
    if (den.is_zero())
        throw std::invalid_argument("ratio with zero denominator");
}

QOrder SeriesRatio::cross_order(const SeriesRatio& other) const
{
    return order_min(product_order(num, other.den), product_order(other.num, den));
}

SeriesRatio operator*(const SeriesRatio& a, const SeriesRatio& b) { return {a.num * b.num, a.den * b.den}; }

bool cross_equal(const SeriesRatio& a, const SeriesRatio& b, const Rational& o)
{
    const QOrder trusted = a.cross_order(b);
    if (trusted && o > *trusted)
        throw std::invalid_argument("cross comparison at " + to_string(o) + " exceeds trusted order " +
                                    to_string(*trusted));
    return equal_to_order(mul_capped(a.num, b.den, o), mul_capped(b.num, a.den, o), o);
}

bool cross_equal(const SeriesRatio& a, const SeriesRatio& b)
{
    const QOrder trusted = a.cross_order(b);
    if (!trusted)
        return sub(a.num * b.den, b.num * a.den).is_zero();
    return cross_equal(a, b, *trusted);
}

RatioBuilder ratio_of(std::vector<SeriesBuilder> num, std::vector<SeriesBuilder> den)
{
    return [num = std::move(num), den = std::move(den)](const Rational& o) {
        JacobiSeries n = num.empty() ? JacobiSeries::constant(1) : product_to_order(num, o);
        JacobiSeries d = den.empty() ? JacobiSeries::constant(1) : product_to_order(den, o);
        return SeriesRatio(std::move(n), std::move(d));
    };
}

SeriesBuilder monomial_builder(const Rational& a_q, const Rational& a_x, const GaussianRational& c)
{
    return [a_q, a_x, c](const Rational&) { return JacobiSeries::monomial(a_q, a_x, c); };
}

bool cross_equal_to(const RatioBuilder& a, const RatioBuilder& b, const Rational& o)
{
    Rational build = o;
    for (int attempt = 0; attempt < 32; ++attempt) {
        const SeriesRatio ra = a(build), rb = b(build);
        const QOrder trusted = ra.cross_order(rb);
        if (!trusted || *trusted >= o)
            return cross_equal(ra, rb, o);
        build += o - *trusted + rat(1, 8);
    }
    throw std::logic_error("cross_equal_to: trusted order did not grow");
}

} // namespace n4
