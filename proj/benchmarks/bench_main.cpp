#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "rankstat/montecarlo.hpp"
#include "rankstat/normal.hpp"
#include "rankstat/power_analysis.hpp"
#include "rankstat/ranking_analysis.hpp"

namespace {

rankstat::RankingDataset synthetic_ranking(std::int64_t n) {
    std::vector<rankstat::InstitutionRecord> recs;
    recs.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        const std::int64_t pubs = 2000 + 37 * i;
        recs.push_back({"inst" + std::to_string(i), pubs, pubs * (5 + i % 15) / 100});
    }
    return rankstat::RankingDataset(std::move(recs));
}

void BM_NormalCdf(benchmark::State& state) {
    double z = -8.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rankstat::normal_cdf(z));
        z = z > 8.0 ? -8.0 : z + 0.001;
    }
}
BENCHMARK(BM_NormalCdf);

void BM_NormalQuantile(benchmark::State& state) {
    double p = 1e-6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rankstat::normal_quantile(p));
        p = p > 0.999 ? 1e-6 : p + 1e-4;
    }
}
BENCHMARK(BM_NormalQuantile);

void BM_RequiredN(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(rankstat::required_n(0.05, 0.05, 0.9));
    }
}
BENCHMARK(BM_RequiredN);

void BM_PairwiseMatrix(benchmark::State& state) {
    const auto ds = synthetic_ranking(state.range(0));
    for (auto _ : state) {
        auto m = rankstat::pairwise_matrix(ds);
        benchmark::DoNotOptimize(m.cells().data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PairwiseMatrix)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oNSquared);

void BM_TrivialNeighborhood(benchmark::State& state) {
    const auto ds = synthetic_ranking(state.range(0));
    const std::string ref = ds.at_rank(ds.size() / 2).id;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rankstat::trivial_neighborhood(ds, ref).count);
    }
}
BENCHMARK(BM_TrivialNeighborhood)->Range(64, 4096);

void BM_SimulateType1(benchmark::State& state) {
    const rankstat::SimulationConfig cfg{state.range(0), 7, 1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(rankstat::simulate_type1(1000, 0.1, 0.1, 0.05, cfg));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateType1)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
