#include <benchmark/benchmark.h>

#include "ordeval/ordeval.hpp"
#include "ordeval/significance.hpp"

namespace {

ordeval::OrdinalDataset survey(int n) {
    ordeval::SyntheticSpec spec;
    spec.n = n;
    for (int i = 0; i < 9; ++i) {
        ordeval::PlantedAttribute a;
        a.name = "q" + std::to_string(i + 1);
        a.type = static_cast<ordeval::PlantedType>(i % 4);
        a.pivot = 3;
        spec.attributes.push_back(a);
    }
    spec.noise_level = 0.1;
    return ordeval::generate_synthetic(spec, 7);
}

void bm_neighbor_table(benchmark::State& state) {
    auto ds = survey(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(ordeval::build_neighbor_table(ds, 30));
}
BENCHMARK(bm_neighbor_table)->Arg(100)->Arg(500);

void bm_profile(benchmark::State& state) {
    auto ds = survey(static_cast<int>(state.range(0)));
    auto table = ordeval::build_neighbor_table(ds, 30);
    for (auto _ : state)
        benchmark::DoNotOptimize(ordeval::tally_profiles(ds, table, ds.responses));
}
BENCHMARK(bm_profile)->Arg(100)->Arg(500);

void bm_significance(benchmark::State& state) {
    auto ds = survey(500);
    auto table = ordeval::build_neighbor_table(ds, 30);
    auto profiles = ordeval::tally_profiles(ds, table, ds.responses);
    ordeval::SignificanceParams params;
    params.resamples = static_cast<int>(state.range(0));
    params.seed = 11;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            ordeval::estimate_significance(ds, table, profiles, params));
}
BENCHMARK(bm_significance)->Arg(20)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
