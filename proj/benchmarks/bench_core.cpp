#include "scop/demo.hpp"
#include "scop/dynamics.hpp"
#include "scop/experiments.hpp"
#include "scop/generator.hpp"
#include "scop/morphism.hpp"
#include "scop/preorder.hpp"

#include <benchmark/benchmark.h>

using namespace scop;

namespace {

std::vector<Region> equal_blocks(const Grid& grid, std::size_t k) {
    std::vector<Region> blocks(k);
    for (std::size_t b = 0; b < k; ++b)
        for (std::size_t i = b * grid.n_cells / k; i < (b + 1) * grid.n_cells / k; ++i)
            blocks[b].insert(i);
    return blocks;
}

void BM_subset_product(benchmark::State& state) {
    const auto a = SubsetProb({{Rational(1, 10), Rational(3, 10)},
                               {Rational(2, 5), Rational(2, 5)},
                               {Rational(7, 10), Rational(9, 10)}});
    const auto b = SubsetProb({{Rational(1, 4), Rational(1, 2)}, {Rational(4, 5), Rational(1)}});
    for (auto _ : state) benchmark::DoNotOptimize(product(a, b));
}
BENCHMARK(BM_subset_product);

void BM_preorder_build(benchmark::State& state) {
    const auto sys =
        generate_system(7, {static_cast<std::size_t>(state.range(0)), 3, 8}, Profile::generic);
    for (auto _ : state) {
        benchmark::DoNotOptimize(PreorderView::states(sys));
        benchmark::DoNotOptimize(PreorderView::properties(sys));
    }
}
BENCHMARK(BM_preorder_build)->Arg(8)->Arg(16)->Arg(32);

void BM_cascade_verify(benchmark::State& state) {
    const Grid grid{0.0, 4.0, 256};
    const auto demo = build_quantum_scop(WaveFunction::gaussian(grid, 2.0, 0.5),
                                         equal_blocks(grid, static_cast<std::size_t>(state.range(0))));
    for (auto _ : state)
        benchmark::DoNotOptimize(is_cascade_experiment(demo.system, demo.experiment));
}
BENCHMARK(BM_cascade_verify)->Arg(2)->Arg(4)->Arg(5);

void BM_morphism_verify(benchmark::State& state) {
    const auto mor = generate_quotient_morphism(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(verify(mor));
}
BENCHMARK(BM_morphism_verify)->Arg(2)->Arg(3);

void BM_sample_trajectory(benchmark::State& state) {
    const auto sys = generate_system(3, {8, 4, 4}, Profile::generic);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            sample_trajectory(sys, {sys.contexts[0], sys.states[0]}, 1000, 42));
}
BENCHMARK(BM_sample_trajectory);

} // namespace

BENCHMARK_MAIN();
