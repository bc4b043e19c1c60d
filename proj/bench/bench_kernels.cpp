// Serial reference vs OpenMP kernels: orbit partition and the centre sweep.

#include <benchmark/benchmark.h>

#include "nilc/centers.hpp"
#include "nilc/kernels.hpp"

using namespace nilc;

namespace {

Subgroup upper_unitriangular(std::size_t n)
{
    std::vector<F2Matrix> gens;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        F2Matrix e = F2Matrix::identity(n);
        e.set(i, i + 1, true);
        gens.push_back(e);
    }
    return group_closure(n, gens);
}

void BM_OrbitsSerial(benchmark::State& state)
{
    const Subgroup g = upper_unitriangular(4);
    for (auto _ : state)
        benchmark::DoNotOptimize(orbits_serial(g, static_cast<std::size_t>(state.range(0))));
}

void BM_OrbitsParallel(benchmark::State& state)
{
    const Subgroup g = upper_unitriangular(4);
    for (auto _ : state)
        benchmark::DoNotOptimize(orbits(g, static_cast<std::size_t>(state.range(0))));
}

std::vector<SKPoint> sweep_points(const LayeredAlgebra& k)
{
    std::vector<SKPoint> pts;
    for (std::size_t w = 0; w <= 3; ++w)
        for (auto& p : sk_points(k, w))
            pts.push_back(std::move(p));
    return pts;
}

LayeredAlgebra sweep_algebra()
{
    InducedModule m;
    m.suspension = 1;
    m.source_dim = 3;
    m.gamma = F2Matrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
    return make_layered_algebra(4, {}, {Layer{1, {m}, {}}});
}

void BM_SweepSerial(benchmark::State& state)
{
    const auto k = sweep_algebra();
    const auto pts = sweep_points(k);
    const PointPredicate pred = [&](const SKPoint& p) { return functor_centre_oracle(k.subgroup(), p, 1); };
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate_points_serial(pts, pred));
}

void BM_SweepParallel(benchmark::State& state)
{
    const auto k = sweep_algebra();
    const auto pts = sweep_points(k);
    const PointPredicate pred = [&](const SKPoint& p) { return functor_centre_oracle(k.subgroup(), p, 1); };
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate_points(pts, pred));
}

}  // namespace

BENCHMARK(BM_OrbitsSerial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OrbitsParallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
