#include <benchmark/benchmark.h>

#include <cmath>

#include "pks/chemo.hpp"
#include "pks/evolution.hpp"
#include "pks/profile.hpp"

namespace {

pks::MassFunction gaussian_mass(const pks::RadialGrid& g, double width, double total) {
    pks::RadialDensity u;
    u.values.resize(g.n_cells);
    for (int j = 0; j < g.n_cells; ++j) {
        const double x = g.centers[j] / width;
        u.values[j] = std::exp(-x * x);
    }
    pks::MassFunction M = pks::mass_from_density(u, g);
    const double s = total / M.total();
    for (double& v : M.values) v *= s;
    return M;
}

void BM_Step(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const pks::RadialGrid g = pks::RadialGrid::uniform(3, 8.0, n);
    pks::ModelParams p;
    p.d = 3;
    p.total_mass = 50.0;
    pks::Coefficients coeffs;
    pks::SimulationState s;
    s.M = gaussian_mass(g, 0.5, 50.0);
    for (auto _ : state) {
        s = pks::step(s, p, coeffs, g);
        benchmark::DoNotOptimize(s.M.values.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Step)->Arg(256)->Arg(1024)->Arg(4096);

void BM_ChemoSolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const pks::RadialGrid g = pks::RadialGrid::uniform(3, 8.0, n);
    pks::Coefficients coeffs;
    coeffs.gamma = pks::CoefficientSpec::constant(1.0);
    pks::MassFunction M = gaussian_mass(g, 0.5, 50.0);
    pks::RadialDensity u = pks::density_from_mass(M, g);
    for (auto _ : state) {
        pks::ChemoField f = pks::solve_gamma_positive(u, coeffs, g, 1.0);
        benchmark::DoNotOptimize(f.c.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ChemoSolve)->Arg(256)->Arg(1024)->Arg(4096);

void BM_Shooting(benchmark::State& state) {
    for (auto _ : state) {
        pks::StationaryProfile p = pks::shoot_profile(3, 1.0, 1e-3);
        benchmark::DoNotOptimize(p.total_mass);
    }
}
BENCHMARK(BM_Shooting);

} // namespace

BENCHMARK_MAIN();
