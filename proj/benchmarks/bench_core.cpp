#include <benchmark/benchmark.h>

#include "jns/atoms.hpp"
#include "jns/generators.hpp"

using namespace jns;

namespace {

GridFunction make_grid(int n, int depth, int order) {
    const DomainSpec d(n, 1, depth);
    GridFunction f = gen_haar_sum(d, 7, 10);
    f.prepare_moments(order);
    return f;
}

void BM_moment_tables(benchmark::State& state) {
    const DomainSpec d(1, 1, int(state.range(0)));
    const GridFunction base = gen_random(d, 5);
    for (auto _ : state) {
        GridFunction f(d, std::vector<double>(base.values().begin(), base.values().end()));
        f.prepare_moments(3);
        benchmark::DoNotOptimize(f.moment_order());
    }
}
BENCHMARK(BM_moment_tables)->Arg(8)->Arg(10)->Arg(12);

void BM_jn_norm_1d(benchmark::State& state) {
    const GridFunction f = make_grid(1, int(state.range(0)), 1);
    const NormParams params =
        NormParams::make(2.0, 1.0, 1, 0.0, 1.0, Variant::localized, f.domain());
    for (auto _ : state) benchmark::DoNotOptimize(jn_norm_dyadic(f, params).value);
}
BENCHMARK(BM_jn_norm_1d)->Arg(6)->Arg(8)->Arg(10);

void BM_jn_norm_2d(benchmark::State& state) {
    const GridFunction f = make_grid(2, int(state.range(0)), 1);
    const NormParams params =
        NormParams::make(2.0, 1.0, 1, 0.0, 1.0, Variant::localized, f.domain());
    for (auto _ : state) benchmark::DoNotOptimize(jn_norm_dyadic(f, params).value);
}
BENCHMARK(BM_jn_norm_2d)->Arg(3)->Arg(4)->Arg(5);

void BM_packing_oracle(benchmark::State& state) {
    const GridFunction f = make_grid(1, int(state.range(0)), 0);
    const NormParams params =
        NormParams::make(2.0, 1.0, 0, 0.0, 1.0, Variant::localized, f.domain());
    for (auto _ : state) benchmark::DoNotOptimize(packing_oracle(f, params, int(state.range(0))));
}
BENCHMARK(BM_packing_oracle)->Arg(3)->Arg(4);

void BM_cz_decompose(benchmark::State& state) {
    const GridFunction f = make_grid(1, int(state.range(0)), 2);
    for (auto _ : state) {
        const CZDecomposition cz = cz_decompose(f, DyadicCube::root(), {2, 0.0, 0.0});
        benchmark::DoNotOptimize(cz.piece_count());
    }
}
BENCHMARK(BM_cz_decompose)->Arg(6)->Arg(8);

void BM_dual_optimizer(benchmark::State& state) {
    const GridFunction f = make_grid(1, int(state.range(0)), 1);
    const AtomParams params = AtomParams::make(2.0, 2.0, 1, 0.0, 1.0, f.domain());
    const NormResult jn = jn_norm_dyadic(f, params.dual_norm_params(f.domain()));
    for (auto _ : state)
        benchmark::DoNotOptimize(dual_optimizer(f, jn.packing, params).ratio);
}
BENCHMARK(BM_dual_optimizer)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
