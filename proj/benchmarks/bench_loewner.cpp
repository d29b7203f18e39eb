#include <cstdint>

#include <benchmark/benchmark.h>

#include "loewner/conformal.hpp"
#include "loewner/energy.hpp"
#include "loewner/quadrature.hpp"

using namespace loewner;

static void BM_SolveInteriorMap(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const ParametricCurve c = make_family(CurveKind::ellipse, {0.2}, n);
    for (auto _ : state) benchmark::DoNotOptimize(solve_interior_map(c, 0.0, {n, 1e-10, 200}));
}
BENCHMARK(BM_SolveInteriorMap)->Arg(512)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);

static void BM_IntegrateDisk(benchmark::State& state) {
    const DiskQuadrature rule = disk_rule(8, 16, static_cast<int>(state.range(0)));
    auto density = [](cplx z) {
        const double d = 1.0 + std::norm(z);
        return 4.0 * std::norm(z) / (d * d);
    };
    for (auto _ : state) benchmark::DoNotOptimize(integrate_disk(density, rule));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rule.size()));
}
BENCHMARK(BM_IntegrateDisk)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_FullReport(benchmark::State& state) {
    const ParametricCurve c = make_family(CurveKind::ellipse, {0.2});
    for (auto _ : state) benchmark::DoNotOptimize(full_report(c));
}
BENCHMARK(BM_FullReport)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
