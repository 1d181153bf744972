#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "n4/characters.hpp"
#include "n4/modular.hpp"
#include "n4/reduction.hpp"
#include "n4/series_json.hpp"
#include "n4/suites.hpp"

#ifndef N4CHAR_VERSION
#define N4CHAR_VERSION "dev"
#endif

namespace fs = std::filesystem;
using namespace n4;

namespace {

/// usage or configuration problem: exit code 2
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rational rational_arg(const std::string& s, const char* what)
{
    try {
        return parse_rational(s);
    } catch (const std::exception&) {
        throw UsageError(std::string(what) + ": expected a rational like 3, -1/2 or 5/8, got '" + s + "'");
    }
}

Precision precision_arg(const std::string& s)
{
    if (s == "default" || s == "double")
        return Precision::Double;
    if (s == "extended")
        return Precision::Extended;
    if (s == "quad")
        return Precision::Quad;
    try {
        return precision_from_bits(std::stoi(s));
    } catch (const std::exception&) {
        throw UsageError("precision must be default, double, extended, quad or a bit count up to 113");
    }
}

std::pair<int, int> range_arg(const std::string& s)
{
    try {
        const auto colon = s.find(':');
        if (colon == std::string::npos) {
            const int v = std::stoi(s);
            return {v, v};
        }
        return {std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
    } catch (const std::exception&) {
        throw UsageError("M range must look like 3 or 1:4");
    }
}

XWindow window_arg(const std::string& s)
{
    const auto colon = s.find(':');
    if (colon == std::string::npos)
        throw UsageError("x window must look like -12:12");
    XWindow w{rational_arg(s.substr(0, colon), "x window"), rational_arg(s.substr(colon + 1), "x window")};
    if (!(w.lo < w.hi))
        throw UsageError("x window must have lo < hi");
    return w;
}

std::optional<fs::path> cache_dir()
{
    if (const char* d = std::getenv("N4CHAR_CACHE_DIR"); d && *d)
        return fs::path(d);
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x)
        return fs::path(x) / "n4char";
    if (const char* h = std::getenv("HOME"); h && *h)
        return fs::path(h) / ".cache" / "n4char";
    return std::nullopt;
}

std::string key_part(std::string s)
{
    for (char& c : s)
        if (c == '/')
            c = '_';
        else if (c == '-')
            c = 'm';
    return s;
}

void write_atomic(const fs::path& target, const std::string& text)
{
    fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary);
        out << text;
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw UsageError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ------------------------------------------------------------------ expand

struct ExpandOpts {
    int M = 1;
    std::string j = "1/2", sector = "NS", sign = "+", q_order = "8", window = "-12:12", format = "json";
    bool no_cache = false;
};

int cmd_expand(const ExpandOpts& o)
{
    CharacterSpec spec;
    try {
        spec = CharacterSpec{o.M, rational_arg(o.j, "j"), parse_sector(o.sector), parse_sign(o.sign)};
        spec.validate();
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    const Rational q = rational_arg(o.q_order, "q-order");
    if (sgn(q) <= 0)
        throw UsageError("q-order must be positive");
    const XWindow w = window_arg(o.window);

    std::optional<fs::path> cached;
    if (!o.no_cache)
        if (auto dir = cache_dir())
            cached = *dir / ("expand-M" + std::to_string(spec.M) + "-j" + key_part(to_string(spec.j)) + "-" +
                             to_string(spec.sector) + (spec.sign == Sign::plus ? "plus" : "minus") + "-q" +
                             key_part(to_string(q)) + "-x" + key_part(to_string(w.lo)) + "_" +
                             key_part(to_string(w.hi)) + "-v" + N4CHAR_VERSION + ".json");

    std::optional<JacobiSeries> series;
    if (cached && fs::exists(*cached)) {
        try {
            series = series_from_json(read_file(*cached));
        } catch (const std::exception&) {
            series.reset(); // unreadable entry: recompute and overwrite
        }
    }
    if (!series) {
        series = character_series(spec, q, w);
        if (cached) {
            try {
                write_atomic(*cached, to_json(*series));
            } catch (const std::exception& e) {
                std::cerr << "warning: cache write failed: " << e.what() << "\n";
            }
        }
    }
    if (o.format == "json")
        std::cout << to_json(*series, 2) << "\n";
    else
        std::cout << to_text(*series);
    return 0;
}

// ------------------------------------------------------------------ table

int cmd_table(const std::string& Mrange, bool twisted, const std::string& format)
{
    const auto [lo, hi] = range_arg(Mrange);
    if (lo < 1 || hi < lo)
        throw UsageError("M range must satisfy 1 <= lo <= hi");
    using ojson = nlohmann::ordered_json;
    ojson rows = ojson::array();
    std::ostringstream csv;
    csv << "M,j,heart,k1,k2,c,h,s\n";
    const Sector sec = twisted ? Sector::R : Sector::NS;
    for (int M = lo; M <= hi; ++M)
        for (Heart heart : {Heart::I, Heart::III}) {
            const auto [k_lo, k_hi] = nice_k1_range(M, heart);
            for (int k1 = k_lo; k1 <= k_hi; ++k1) {
                const int k2 = M - 1 - 2 * k1;
                const Rational j = nice_param_to_j(M, k1, heart, twisted);
                const HS hs = h_s_values({M, j, sec, Sign::plus});
                const std::string c = to_string(central_charge(M));
                csv << M << ',' << to_string(j) << ',' << to_string(heart) << ',' << k1 << ',' << k2 << ',' << c
                    << ',' << to_string(hs.h) << ',' << to_string(hs.s) << '\n';
                rows.push_back({{"M", M},
                                {"j", to_string(j)},
                                {"heart", to_string(heart)},
                                {"k1", k1},
                                {"k2", k2},
                                {"c", c},
                                {"h", to_string(hs.h)},
                                {"s", to_string(hs.s)}});
            }
        }
    if (format == "json")
        std::cout << rows.dump(2) << "\n";
    else
        std::cout << csv.str();
    return 0;
}

// ------------------------------------------------------------------ verify

struct VerifyOpts {
    std::string suite = "all", q_order = "8", precision = "default", format = "text";
    double tol = 1e-9, span_tol = 1e-7, floor = default_im_tau_floor;
    unsigned threads = 0;
    bool timing = false;
};

int cmd_verify(const VerifyOpts& o)
{
    SuiteConfig cfg;
    cfg.q_order = rational_arg(o.q_order, "q-order");
    if (sgn(cfg.q_order) <= 0)
        throw UsageError("q-order must be positive");
    cfg.tol = o.tol;
    cfg.span_tol = o.span_tol;
    cfg.precision = precision_arg(o.precision);
    cfg.im_tau_floor = o.floor;
    cfg.threads = o.threads;
    std::vector<SuiteCase> cases;
    try {
        cases = suite_cases(o.suite, cfg);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const SuiteReport r = run_suite(o.suite, cases, cfg);
    if (o.format == "json")
        std::cout << to_json(r, o.timing) << "\n";
    else
        std::cout << to_text(r, o.timing);
    return r.passed() ? 0 : 1;
}

// ------------------------------------------------------------------ transform

struct TransformOpts {
    int M = 1, statement = 1;
    std::string which = "S", precision = "default", points_file, output;
    std::size_t points = 0;
    std::uint32_t seed = 20240917u;
    double tol = 1e-7, floor = default_im_tau_floor;
};

std::vector<NumericPoint> points_from_json(const std::string& text)
{
    const auto j = nlohmann::json::parse(text);
    const auto& arr = j.is_object() ? j.at("points") : j;
    std::vector<NumericPoint> out;
    for (const auto& p : arr) {
        const std::complex<double> tau(p.at("tau").at("re").get<double>(), p.at("tau").at("im").get<double>());
        const std::complex<double> z(p.at("z").at("re").get<double>(), p.at("z").at("im").get<double>());
        out.push_back({tau, z, z, 0});
    }
    return out;
}

int cmd_transform(const TransformOpts& o)
{
    if (o.M < 1)
        throw UsageError("M must be positive");
    if (o.statement != 1 && o.statement != 2)
        throw UsageError("statement must be 1 or 2");
    Transform which;
    try {
        which = parse_transform(o.which);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    const std::size_t family = character_family(o.M, o.statement).size();
    std::vector<NumericPoint> pts;
    if (!o.points_file.empty()) {
        try {
            pts = points_from_json(read_file(o.points_file));
        } catch (const nlohmann::json::exception& e) {
            throw UsageError(std::string("bad points file: ") + e.what());
        }
    } else {
        pts = sample_points(o.points ? o.points : 3 * family, o.seed);
    }
    for (const auto& p : pts)
        try {
            require_im_tau_floor(p, o.floor);
        } catch (const std::domain_error& e) {
            throw UsageError(e.what());
        }
    SpanCertificate c;
    try {
        c = span_closure(o.M, o.statement, which, pts, o.tol, precision_arg(o.precision));
    } catch (const IllConditioned& e) {
        throw UsageError(std::string(e.what()) + " (try --seed, more --points, or a different --points-file)");
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const std::string text = to_json(c) + "\n";
    if (o.output.empty())
        std::cout << text;
    else
        write_atomic(o.output, text);
    return c.passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"N=4 superconformal characters: q-series expansions, parameter tables, identity suites and modular "
                 "certificates"};
    app.set_version_flag("--version", std::string(N4CHAR_VERSION));
    app.require_subcommand(1);

    ExpandOpts ex;
    auto* expand = app.add_subcommand("expand", "q-expansion of a character in descending powers of x");
    expand->add_option("--M", ex.M, "level M >= 1")->required();
    expand->add_option("--j", ex.j, "index j as a rational, e.g. 1/2 or -3/2")->required();
    expand->add_option("--sector", ex.sector, "NS or R")->required();
    expand->add_option("--sign", ex.sign, "+ (character) or - (supercharacter); write --sign=- for minus")->required();
    expand->add_option("--q-order", ex.q_order, "exact below this power of q")->capture_default_str();
    expand->add_option("--x-window", ex.window, "x-exponent window lo:hi")->capture_default_str();
    expand->add_option("--format", ex.format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    expand->add_flag("--no-cache", ex.no_cache, "skip the on-disk cache");

    std::string Mrange = "1:4", tformat = "csv";
    bool twisted = false;
    auto* table = app.add_subcommand("table", "(M, j, heart, k1, k2, c, h, s) for the irreducible reductions");
    table->add_option("--M", Mrange, "M or lo:hi")->capture_default_str();
    table->add_flag("--twisted", twisted, "Ramond (twisted) sector");
    table->add_option("--format", tformat, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    VerifyOpts vo;
    auto* verify = app.add_subcommand("verify", "run an identity suite; exit 1 if any case fails");
    verify->add_option("--suite", vo.suite, "theta, psi, characters, reduction, modular or all")
        ->check(CLI::IsMember({"theta", "psi", "characters", "reduction", "modular", "all"}))
        ->capture_default_str();
    verify->add_option("--q-order", vo.q_order, "order of the exact series comparisons")->capture_default_str();
    verify->add_option("--tol", vo.tol, "numeric identity tolerance")->capture_default_str();
    verify->add_option("--span-tol", vo.span_tol, "span-closure tolerance")->capture_default_str();
    verify->add_option("--precision", vo.precision, "default, double, extended, quad or bits")->capture_default_str();
    verify->add_option("--im-tau-floor", vo.floor, "reject sample points with smaller Im tau")->capture_default_str();
    verify->add_option("--threads", vo.threads, "worker threads (0: all cores)")->capture_default_str();
    verify->add_option("--format", vo.format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    verify->add_flag("--timing", vo.timing, "include wall time (output no longer byte-stable)");

    TransformOpts to;
    auto* transform = app.add_subcommand("transform", "span-closure certificate for S or T");
    transform->add_option("--M", to.M, "level M")->required();
    transform->add_option("--which", to.which, "S or T")->check(CLI::IsMember({"S", "T"}))->capture_default_str();
    transform->add_option("--statement", to.statement, "1: NS characters, supercharacters and R characters; 2: R supercharacters")
        ->capture_default_str();
    transform->add_option("--points", to.points, "number of random sample points (default 3x family size)");
    transform->add_option("--seed", to.seed, "sample point seed")->capture_default_str();
    transform->add_option("--points-file", to.points_file, "JSON list of {tau, z} points, or a certificate");
    transform->add_option("--tol", to.tol, "residual tolerance")->capture_default_str();
    transform->add_option("--precision", to.precision, "default, double, extended, quad or bits")->capture_default_str();
    transform->add_option("--im-tau-floor", to.floor, "reject points with smaller Im tau")->capture_default_str();
    transform->add_option("-o,--output", to.output, "write the certificate here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*expand)
            return cmd_expand(ex);
        if (*table)
            return cmd_table(Mrange, twisted, tformat);
        if (*verify)
            return cmd_verify(vo);
        if (*transform)
            return cmd_transform(to);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
