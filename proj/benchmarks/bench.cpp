#include <benchmark/benchmark.h>

#include "sl2h/multiplier.hpp"
#include "sl2h/spherical.hpp"
#include "sl2h/transform.hpp"

using namespace sl2h;

static void BM_PhiRadial(benchmark::State& state)
{
    const SphericalParams p{{2, 4}, cplx(3.5, 0.0)};
    const double t = static_cast<double>(state.range(0)) / 4.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(phi_radial(p, t));
}
BENCHMARK(BM_PhiRadial)->Arg(1)->Arg(8)->Arg(32);

static void BM_PhiDiscrete(benchmark::State& state)
{
    const int m = static_cast<int>(state.range(0));
    const TypePair pair(m + 1, m + 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(phi_discrete(pair, m, 3.0));
}
BENCHMARK(BM_PhiDiscrete)->Arg(1)->Arg(3)->Arg(5);

static void BM_ForwardNufft(benchmark::State& state)
{
    const auto f = make_bump({0, 0}, 0.3, 2.0);
    TransformOptions o;
    o.adaptive = false;
    for (auto _ : state)
        benchmark::DoNotOptimize(forward(f, {}, o));
}
BENCHMARK(BM_ForwardNufft)->Unit(benchmark::kMillisecond);

// Coarse spacing falls outside the NUFFT window, so this runs the direct kernel table.
static void BM_ForwardTable(benchmark::State& state)
{
    const auto f = make_bump({0, 0}, 0.3, 2.0);
    TransformOptions o;
    o.adaptive = false;
    o.grid = SpectralGrid::with_spacing(60.0, 0.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(forward(f, {}, o));
}
BENCHMARK(BM_ForwardTable)->Unit(benchmark::kMillisecond);

static void BM_Inverse(benchmark::State& state)
{
    const auto f = make_bump({0, 0}, 0.3, 2.0);
    const auto s = forward(f, {});
    for (auto _ : state)
        benchmark::DoNotOptimize(inverse(s, f.rule(), {}));
}
BENCHMARK(BM_Inverse)->Unit(benchmark::kMillisecond);

static void BM_OperatorMatrix(benchmark::State& state)
{
    const auto rule = RadialRule::uniform(0.0, 8.0, static_cast<int>(state.range(0)));
    const TransformPlan plan({0, 0}, SpectralGrid(), rule, rule);
    const auto m = parse_symbol("heat:0.5");
    const SymbolFunctions sym{m.continuous, m.discrete};
    for (auto _ : state)
        benchmark::DoNotOptimize(plan.operator_matrix(sym, {}));
}
BENCHMARK(BM_OperatorMatrix)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
