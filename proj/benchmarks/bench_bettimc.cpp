#include "bettimc/chebyshev.hpp"
#include "bettimc/io.hpp"
#include "bettimc/laplacian.hpp"
#include "bettimc/oracle.hpp"
#include "bettimc/walk.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace bettimc;

Complex er_graph(int n, double p, std::uint64_t seed = 17) {
    RandomStream rng(seed);
    return Complex(random_clique_complex(n, p, rng));
}

void BM_clique_enumeration(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const Complex c = er_graph(n, 0.5);
        benchmark::DoNotOptimize(c.face_count(2));
    }
}
BENCHMARK(BM_clique_enumeration)->Arg(20)->Arg(40)->Arg(80);

void BM_laplacian_row(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Complex c = er_graph(n, 0.5);
    const auto& faces = c.enumerate_k_faces(2);
    const SpectralParams params{static_cast<double>(n), 1.0};
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(laplacian_row(c, faces[i++ % faces.size()], params));
    }
}
BENCHMARK(BM_laplacian_row)->Arg(20)->Arg(60)->Arg(200);

void BM_sample_walk(benchmark::State& state) {
    const int z = static_cast<int>(state.range(0));
    const Complex c = er_graph(30, 0.5);
    ComplexHandle h(c, 1);
    RowCache rows(h, SpectralParams{30.0, 1.0});
    RandomStream rng(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_walk(rows, z, rng).y_value);
    }
    state.SetItemsProcessed(state.iterations() * z);
}
BENCHMARK(BM_sample_walk)->Arg(1)->Arg(8)->Arg(32);

void BM_estimate_trace(benchmark::State& state) {
    const Complex c = er_graph(30, 0.5);
    ComplexHandle h(c, 1);
    const SpectralParams params{30.0, 1.0};
    const auto samples = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_trace_power(h, 6, params, samples, RandomStream(5)).mean);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_estimate_trace)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_build_expansion(benchmark::State& state) {
    const int r = static_cast<int>(state.range(0));
    const int d = approximation_degree(r, 0.01);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_expansion(r, d).b.data());
    }
}
BENCHMARK(BM_build_expansion)->Arg(20)->Arg(100)->Arg(400);

void BM_exact_spectrum(benchmark::State& state) {
    const Complex c = er_graph(static_cast<int>(state.range(0)), 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(exact_spectrum(c, 1).lambda_max);
    }
    state.counters["d_k"] = static_cast<double>(c.face_count(1));
}
BENCHMARK(BM_exact_spectrum)->Arg(12)->Arg(24)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_exact_betti(benchmark::State& state) {
    const Complex c = er_graph(static_cast<int>(state.range(0)), 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(exact_betti(c, 1));
    }
}
BENCHMARK(BM_exact_betti)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
