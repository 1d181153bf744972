#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <string>

#include <json.hpp>

#include "doctest.h"
#include "n4/series_json.hpp"

#ifndef N4CHAR_CLI_PATH
#error "N4CHAR_CLI_PATH must name the CLI binary"
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using n4::Rational;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "")
{
    const std::string cmd = env + " \"" N4CHAR_CLI_PATH "\" " + args + " 2>/dev/null";
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    while (const std::size_t n = fread(buf.data(), 1, buf.size(), f))
        out.append(buf.data(), n);
    const int st = pclose(f);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string run_err(const std::string& args)
{
    const std::string cmd = "\"" N4CHAR_CLI_PATH "\" " + args + " 2>&1 >/dev/null";
    FILE* f = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf{};
    while (const std::size_t n = fread(buf.data(), 1, buf.size(), f))
        out.append(buf.data(), n);
    pclose(f);
    return out;
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("n4char-test-" + std::to_string(::getpid())))
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string env() const { return "N4CHAR_CACHE_DIR=\"" + path.string() + "\""; }
};

Rational lowest(const json& j)
{
    Rational lo;
    bool first = true;
    const Rational qd(j["q_den"].get<long>());
    for (const auto& t : j["terms"]) {
        const Rational q = Rational(t["q"].get<long>()) / qd;
        if (first || q < lo)
            lo = q;
        first = false;
    }
    return lo;
}

} // namespace


TEST_CASE("expand")
{
    const Run one = run("expand --M 1 --j 1/2 --sector NS --sign + --no-cache");
    REQUIRE(one.code == 0);
    const n4::JacobiSeries s = n4::series_from_json(one.out);
    REQUIRE(s.terms().size() == 1);
    CHECK(s.coeff(0, 0) == n4::GaussianRational(1));

    const Run r = run("expand --M 2 --j 0 --sector R --sign + --no-cache");
    REQUIRE(r.code == 0);
    const n4::JacobiSeries rs = n4::series_from_json(r.out);
    REQUIRE(rs.lowest_q().has_value());
    const Rational rs_low = rs.lowest_q().value();
    CHECK(rs_low == 0);
    CHECK(rs.coeff(0, 0) == n4::GaussianRational(1));

    const Run ns = run("expand --M 2 --j 1/2 --sector NS --sign + --q-order 5/8 --no-cache");
    REQUIRE(ns.code == 0);
    const Rational ns_low = lowest(json::parse(ns.out));
    CHECK(ns_low == n4::rat(-1, 8));

    const Run minus = run("expand --M 2 --j 1 --sector R --sign=- --q-order 1 --no-cache");
    CHECK(minus.code == 0);
}

TEST_CASE("expand rejects bad specs")
{
    CHECK(run("expand --M 2 --j 3/2 --sector NS --sign + --no-cache").code == 2);
    const std::string err = run_err("expand --M 2 --j 3/2 --sector NS --sign + --no-cache");
    CHECK(err.find("-1/2") != std::string::npos);
    CHECK(err.find("1/2") != std::string::npos);
    CHECK(run("expand --M 2 --j x --sector NS --sign + --no-cache").code == 2);
    CHECK(run("expand --M 2 --j 1/2 --sector Q --sign + --no-cache").code == 2);
    CHECK(run("frobnicate").code == 2);
}

TEST_CASE("byte determinism")
{
    const std::string a = "expand --M 3 --j -1 --sector R --sign + --q-order 3 --no-cache";
    CHECK(run(a).out == run(a).out);
    const std::string v = "verify --suite reduction --format json";
    CHECK(run(v).out == run(v).out);
    const std::string t = "transform --M 2 --which T";
    CHECK(run(t).out == run(t).out);
}

TEST_CASE("cache round trip")
{
    TempDir dir;
    const std::string args = "expand --M 2 --j 1/2 --sector NS --sign=- --q-order 3";
    const Run first = run(args, dir.env());
    REQUIRE(first.code == 0);
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(dir.path)) {
        ++files;
        CHECK(e.path().extension() == ".json");
    }
    CHECK(files == 1);
    const Run second = run(args, dir.env());
    CHECK(second.out == first.out);
    CHECK(n4::to_json(n4::series_from_json(first.out), 2) + "\n" == first.out);
}

TEST_CASE("table")
{
    const Run ns = run("table --M 2:2");
    REQUIRE(ns.code == 0);
    CHECK(ns.out.find("2,1/2,I,0,1,-3,-1/4,-1/2") != std::string::npos);
    CHECK(ns.out.find("2,-1/2,III,0,1,-3,-1/4,-3/2") != std::string::npos);

    const Run r = run("table --M 2:2 --twisted");
    CHECK(r.out.find(",0,") != std::string::npos);
    const json rj = json::parse(run("table --M 2:2 --twisted --format json").out);
    REQUIRE(rj.size() == 2);
    std::set<std::array<std::string, 3>> rows;
    for (const auto& row : rj)
        rows.insert({row["j"].get<std::string>(), row["h"].get<std::string>(), row["s"].get<std::string>()});
    CHECK(rows.count({"0", "-1/8", "0"}) == 1);
    CHECK(rows.count({"1", "3/8", "1"}) == 1);

    const json one = json::parse(run("table --M 1:1 --format json").out);
    REQUIRE(one.size() == 1);
    CHECK(one[0]["j"] == "1/2");
    CHECK(one[0]["h"] == "0");
    CHECK(one[0]["s"] == "0");
    const json one_r = json::parse(run("table --M 1:1 --twisted --format json").out);
    REQUIRE(one_r.size() == 1);
    CHECK(one_r[0]["j"] == "0");
}

TEST_CASE("verify")
{
    const Run theta = run("verify --suite theta --q-order 15 --format json");
    CHECK(theta.code == 0);
    const json t = json::parse(theta.out);
    CHECK(t["passed"] == true);
    CHECK(t["counts"]["fail"] == 0);
    CHECK(t.find("wall_time_s") == t.end());

    CHECK(run("verify --suite characters --q-order 8").code == 0);
    CHECK(run("verify --suite modular --precision default").code == 0);

    // an impossible tolerance must fail with exit 1
    CHECK(run("verify --suite psi --tol 1e-30").code == 1);
    CHECK(run("verify --suite nonsense").code == 2);
    CHECK(run("verify --suite theta --precision 300").code == 2);
}

TEST_CASE("transform")
{
    const Run s1 = run("transform --M 1 --which S");
    REQUIRE(s1.code == 0);
    const json c1 = json::parse(s1.out);
    CHECK(c1["residual"].get<double>() < 1e-12);
    CHECK(c1["transform"] == "S");

    const Run t2 = run("transform --M 2 --which T");
    REQUIRE(t2.code == 0);
    const json c2 = json::parse(t2.out);
    REQUIRE(c2.contains("diagonal_deviation"));
    CHECK(c2["diagonal_deviation"].get<double>() < 1e-6);

    const Run s3 = run("transform --M 3 --which S --statement 1");
    REQUIRE(s3.code == 0);
    CHECK(json::parse(s3.out)["residual"].get<double>() < 1e-7);

    CHECK(run("transform --M 2 --points 3").code == 2);
    CHECK(run("transform --M 2 --which U").code == 2);

    TempDir dir;
    const fs::path out = dir.path / "cert.json";
    CHECK(run("transform --M 2 --which S -o \"" + out.string() + "\"").code == 0);
    CHECK(fs::exists(out));
    // a certificate can be fed back as a point list
    CHECK(run("transform --M 2 --which S --points-file \"" + out.string() + "\"").code == 0);
}
