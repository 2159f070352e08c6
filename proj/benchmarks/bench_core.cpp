#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "crz/choi.hpp"
#include "crz/conformal.hpp"
#include "crz/funcalc.hpp"
#include "crz/numrange.hpp"
#include "crz/report.hpp"

using crz::CMatrix;
using crz::Complex;
using crz::WeightVector;

namespace {

WeightVector bench_weights(int d) {
    std::vector<Complex> w(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        w[static_cast<std::size_t>(j)] = Complex(0.6 + 0.5 * ((j * 7 + 3) % 5) / 4.0, 0.0);
    }
    return WeightVector(w);
}

void bm_power_norms(benchmark::State& state) {
    const WeightVector wv = bench_weights(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(crz::power_norms(wv));
    }
}

void bm_boundary(benchmark::State& state) {
    const WeightVector wv = bench_weights(4);
    const CMatrix m = crz::build_matrix(wv);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(crz::boundary(m, n));
    }
}

void bm_solve_map(benchmark::State& state) {
    const WeightVector wv = bench_weights(4);
    const crz::BoundaryCurve bc =
        crz::boundary(crz::build_matrix(wv), static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(crz::solve_map(bc, wv.d()));
    }
}

void bm_cauchy_apply(benchmark::State& state) {
    const WeightVector wv = bench_weights(4);
    const CMatrix m = crz::build_matrix(wv);
    const crz::BoundaryCurve bc = crz::boundary(m, static_cast<int>(state.range(0)));
    const crz::DiskMap map = crz::solve_map(bc, wv.d());
    crz::ContourData cd = crz::make_contour(map);
    cd.f_values = crz::power_f_values(map.n, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(crz::cauchy_apply(cd, m));
    }
}

void bm_verify_choi(benchmark::State& state) {
    const WeightVector wv = bench_weights(static_cast<int>(state.range(0)));
    const crz::Tolerances tol;
    for (auto _ : state) {
        benchmark::DoNotOptimize(crz::verify_choi(wv, 512, tol));
    }
}

} // namespace

BENCHMARK(bm_power_norms)->Arg(4)->Arg(6);
BENCHMARK(bm_boundary)->Arg(512)->Arg(2048);
BENCHMARK(bm_solve_map)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_cauchy_apply)->Arg(512)->Arg(2048);
BENCHMARK(bm_verify_choi)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
