// Serial reference kernels against their OpenMP counterparts, plus the
// library routines that sit on top of them.

#include <benchmark/benchmark.h>

#include "dgsor/kernels.hpp"
#include "dgsor/linalg.hpp"
#include "dgsor/problems.hpp"
#include "dgsor/schemes.hpp"

namespace {

using namespace dgsor;

DenseMatrix random_matrix(std::size_t n, std::uint64_t seed) {
    problems::Rng rng(seed);
    DenseMatrix m(n, n);
    for (std::size_t k = 0; k < n * n; ++k) m.data()[k] = rng.uniform(-1.0, 1.0);
    return m;
}

template <class Kernel>
void matmul_bench(benchmark::State& state, Kernel kernel) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const DenseMatrix a = random_matrix(n, 1);
    const DenseMatrix b = random_matrix(n, 2);
    DenseMatrix c(n, n);
    for (auto _ : state) {
        kernel(a, b, c);
        benchmark::DoNotOptimize(c.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(2 * n * n * n));
}

template <class Kernel>
void matvec_bench(benchmark::State& state, Kernel kernel) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const DenseMatrix a = random_matrix(n, 1);
    const Vector x = problems::random_vector(n, 3);
    Vector y(n);
    for (auto _ : state) {
        kernel(a, x.span(), y.span());
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(2 * n * n));
}

void BM_MatmulSerial(benchmark::State& state) { matmul_bench(state, kernels::serial::matmul); }
void BM_MatmulParallel(benchmark::State& state) { matmul_bench(state, kernels::parallel::matmul); }
void BM_MatvecSerial(benchmark::State& state) { matvec_bench(state, kernels::serial::matvec); }
void BM_MatvecParallel(benchmark::State& state) { matvec_bench(state, kernels::parallel::matvec); }

void BM_SpectralRadiusSor(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    const SpdSystem system(problems::laplacian_2d(m), Vector(m * m, 1.0));
    const SchemeSpec spec{SchemeMethod::DgItohAbe, Preconditioner::jacobi_inverse(), 2.0};
    const DenseMatrix g = iteration_matrix(spec, system).g;
    for (auto _ : state) benchmark::DoNotOptimize(spectral_radius(g));
}

void BM_ExactFlow(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const SpdSystem system(problems::random_spd(n, 7), problems::random_vector(n, 8));
    const Vector x0(n, 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(exact_flow(system, Preconditioner::identity(), x0.span(), 50.0));
}

} // namespace

BENCHMARK(BM_MatmulSerial)->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(BM_MatmulParallel)->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(BM_MatvecSerial)->RangeMultiplier(4)->Range(64, 2048);
BENCHMARK(BM_MatvecParallel)->RangeMultiplier(4)->Range(64, 2048);
BENCHMARK(BM_SpectralRadiusSor)->Arg(8)->Arg(16);
BENCHMARK(BM_ExactFlow)->Arg(10)->Arg(100);

BENCHMARK_MAIN();
