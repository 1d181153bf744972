#include <benchmark/benchmark.h>

#include "n4/characters.hpp"
#include "n4/modular.hpp"
#include "n4/theta.hpp"

using namespace n4;

static void theta_product_order(benchmark::State& st)
{
    const Rational o(st.range(0));
    for (auto _ : st)
        benchmark::DoNotOptimize(theta_product(ThetaLabel::t11, o));
}
BENCHMARK(theta_product_order)->Arg(8)->Arg(16)->Arg(32);

static void theta_mul(benchmark::State& st)
{
    const Rational o(st.range(0));
    const JacobiSeries a = theta_product(ThetaLabel::t00, o), b = theta_product(ThetaLabel::t10, o);
    for (auto _ : st)
        benchmark::DoNotOptimize(a * b);
}
BENCHMARK(theta_mul)->Arg(8)->Arg(16);

static void character_ratio_M(benchmark::State& st)
{
    const int M = static_cast<int>(st.range(0));
    const CharacterSpec spec{M, rat(1, 2), Sector::NS, Sign::plus};
    for (auto _ : st)
        benchmark::DoNotOptimize(character_ratio(spec, 8));
}
BENCHMARK(character_ratio_M)->Arg(2)->Arg(3)->Arg(5);

static void character_series_M2(benchmark::State& st)
{
    const CharacterSpec spec{2, rat(1, 2), Sector::NS, Sign::plus};
    for (auto _ : st)
        benchmark::DoNotOptimize(character_series(spec, Rational(st.range(0)), XWindow{-12, 12}));
}
BENCHMARK(character_series_M2)->Arg(4)->Arg(8);

static void span_closure_S(benchmark::State& st)
{
    const int M = static_cast<int>(st.range(0));
    const auto pts = sample_points(3 * character_family(M, 1).size());
    for (auto _ : st)
        benchmark::DoNotOptimize(span_closure(M, 1, Transform::S, pts, 1e-7));
}
BENCHMARK(span_closure_S)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
