#include "freelat/oracles.hpp"
#include "freelat/orbit_growth.hpp"
#include "freelat/perturb.hpp"
#include "freelat/synthesis.hpp"
#include "freelat/weights.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace freelat;

namespace {

// Dense closed graph on n vertices with both generators everywhere.
ConstraintGraph dense_graph(std::size_t n, std::size_t rank, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.4);
    std::vector<std::string> names;
    for (std::size_t v = 0; v < n; ++v) names.push_back("v" + std::to_string(v));
    std::vector<Edge> edges;
    for (VertexId v = 0; v < n; ++v)
        for (Letter s = 0; s < rank; ++s) {
            edges.push_back({v, static_cast<VertexId>((v + 1) % n), s});
            for (VertexId w = 0; w < n; ++w)
                if (coin(rng)) edges.push_back({v, w, s});
        }
    return ConstraintGraph(GeneratorSet(rank), names, edges).closed();
}

void BM_FindWeight(benchmark::State& state) {
    const auto g = dense_graph(static_cast<std::size_t>(state.range(0)), 2, 1);
    for (auto _ : state) benchmark::DoNotOptimize(find_weight(g, VertexId{0}));
}
BENCHMARK(BM_FindWeight)->Arg(4)->Arg(8)->Arg(12);

void BM_Synthesize(benchmark::State& state) {
    const auto g = dense_graph(static_cast<std::size_t>(state.range(0)), 2, 2);
    const Weight w = scale_to_integer(*find_weight(g, VertexId{0})).weight;
    for (auto _ : state) benchmark::DoNotOptimize(synthesize(g, w, 0));
}
BENCHMARK(BM_Synthesize)->Arg(4)->Arg(8)->Arg(12);

void BM_OrbitCount(benchmark::State& state) {
    const SchottkyGroup s = symmetric_rank2(0.5);
    const double radius = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(orbit_distances(s, s.basepoint(), radius));
}
BENCHMARK(BM_OrbitCount)->Arg(10)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond);

void BM_FinitePipeline(benchmark::State& state) {
    const PermutationGroup group(4);
    const PermutationQuotient q(group, 0);
    const GeneratorImages<PermutationGroup::Element> phi{group.from_cycles({{1, 2, 3, 4}}),
                                                         group.from_cycles({{1, 2}})};
    for (auto _ : state) benchmark::DoNotOptimize(run_uniform_pipeline(q, phi, GeneratorSet(2)));
}
BENCHMARK(BM_FinitePipeline)->Unit(benchmark::kMillisecond);

void BM_RealLinePipeline(benchmark::State& state) {
    const RealLineGroup group(2);
    const RealLineQuotient q(group, static_cast<std::size_t>(state.range(0)));
    const GeneratorImages<QuadraticNumber> phi{QuadraticNumber{0, 1}};
    for (auto _ : state) benchmark::DoNotOptimize(run_uniform_pipeline(q, phi, GeneratorSet(1)));
}
BENCHMARK(BM_RealLinePipeline)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
