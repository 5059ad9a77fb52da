#include <benchmark/benchmark.h>

#include <mills/analysis.hpp>
#include <mills/distribution.hpp>
#include <mills/grid.hpp>
#include <mills/inequalities.hpp>
#include <mills/quadrature.hpp>
#include <mills/specfun.hpp>

#include <cmath>

using namespace mills;

namespace {

void bm_erfcx(benchmark::State& state) {
    double z = 0.37;
    for (auto _ : state) {
        benchmark::DoNotOptimize(erfcx(z));
        z = z < 30.0 ? z + 0.1 : 0.37;
    }
}
BENCHMARK(bm_erfcx);

void bm_normal_mills(benchmark::State& state) {
    double x = 1e-3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(normal_mills(x).value);
        x = x < 35.0 ? x * 1.1 : 1e-3;
    }
}
BENCHMARK(bm_normal_mills);

void bm_gamma_mills(benchmark::State& state) {
    const shape_param alpha(state.range(0) / 100.0);
    double x = 1e-2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gamma_mills(alpha, x).value);
        x = x < 400.0 ? x * 1.2 : 1e-2;
    }
}
BENCHMARK(bm_gamma_mills)->Arg(50)->Arg(150)->Arg(300);

void bm_mills_reference_laplace(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            mills_reference(representation::laplace_normal, 1.0).value);
}
BENCHMARK(bm_mills_reference_laplace);

void bm_mills_reference_gamma(benchmark::State& state) {
    const shape_param alpha(1.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            mills_reference(representation::gamma_shift, alpha, 2.0).value);
}
BENCHMARK(bm_mills_reference_gamma);

void bm_certify_gamma(benchmark::State& state) {
    const distribution_model model = make_gamma(shape_param(state.range(0) / 100.0));
    for (auto _ : state)
        benchmark::DoNotOptimize(certify_reciprocal(model).outcome);
}
BENCHMARK(bm_certify_gamma)->Arg(50)->Arg(150)->Arg(300)->Unit(benchmark::kMillisecond);

void bm_chain_suite(benchmark::State& state) {
    const distribution_model model = make_gamma(shape_param(0.5));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            random_chain_suite(model.mills, chain_direction::convex_chain,
                               state.range(0), 42u, 1e-2, 50.0)
                .passes);
}
BENCHMARK(bm_chain_suite)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void bm_cm_probe(benchmark::State& state) {
    const auto h = [](double t) {
        return normal_mills(std::sqrt(t)).value / std::sqrt(t);
    };
    const std::vector<double> grid = log_grid(0.1, 20.0, 30);
    for (auto _ : state)
        benchmark::DoNotOptimize(complete_monotonicity_probe(h, grid, 5).passed);
}
BENCHMARK(bm_cm_probe);

} // namespace

BENCHMARK_MAIN();
